"""
Hypothesis strategies for the structures the laws are stated over.
"""
from hypothesis import strategies as st

from localic.category import Arrow
from localic.category import FiniteCategory
from localic.category import SetFunctor
from localic.groups import FiniteGroup
from localic.groups import named_group
from localic.groups import subgroups
from localic.gsets import coset_space
from localic.locale import Cover
from localic.locale import Site
from localic.order import Preorder
from localic.wraith import Kind

SMALL_GROUPS = ["1", "Z2", "Z3", "Z4", "V4", "S3", "Z6"]


@st.composite
def preorders(draw, max_size: int = 4) -> Preorder:
    n = draw(st.integers(min_value=0, max_value=max_size))
    names = [f"g{i}" for i in range(n)]
    if n == 0:
        return Preorder.discrete(names)
    index = st.integers(min_value=0, max_value=n - 1)
    pairs = draw(st.lists(st.tuples(index, index), max_size=2 * n))
    return Preorder.generated(names, pairs)


@st.composite
def groups(draw) -> FiniteGroup:
    return named_group(draw(st.sampled_from(SMALL_GROUPS)))


@st.composite
def groups_with_subgroup(draw) -> tuple[FiniteGroup, frozenset[int]]:
    group = draw(groups())
    return group, draw(st.sampled_from(subgroups(group)))


kinds = st.sampled_from(list(Kind))
sizes = st.integers(min_value=0, max_value=3)


@st.composite
def sites(draw, max_size: int = 4, max_covers: int = 3) -> Site:
    """
    Covers whose family members are meets that include the target.
    """
    base = draw(preorders(max_size))
    masks = st.integers(min_value=0, max_value=(1 << len(base)) - 1)
    covers = []
    for _ in range(draw(st.integers(min_value=0, max_value=max_covers))):
        target = draw(masks)
        family = draw(st.lists(masks, max_size=3))
        covers.append(Cover(target, tuple(target | m for m in family)))
    return Site(base, tuple(covers), "random")


@st.composite
def posets(draw, max_size: int = 4) -> Preorder:
    n = draw(st.integers(min_value=1, max_value=max_size))
    names = [f"x{i}" for i in range(n)]
    below = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(below), unique=True)) if below else []
    return Preorder.generated(names, chosen)


def one_object(group: FiniteGroup) -> FiniteCategory:
    return FiniteCategory.build(
        ("*",),
        [Arrow(label, 0, 0) for label in group.labels],
        group.multiply,
        [group.identity],
        group.name,
    )


def poset_category(poset: Preorder) -> FiniteCategory:
    return FiniteCategory.from_preorder(poset.elements, sorted(poset.leq))


@st.composite
def poset_functors(draw, max_values: int = 3) -> SetFunctor:
    """
    Subsets of a fixed set that grow along the order, with the inclusions as maps.
    """
    poset = draw(posets())
    category = poset_category(poset)
    seeds = [draw(st.sets(st.integers(0, max_values - 1))) for _ in poset.elements]
    subsets = [
        sorted(set().union(*(seeds[w] for w in range(len(seeds)) if poset.le(w, x))))
        for x in range(len(seeds))
    ]
    maps = tuple(
        tuple(subsets[arrow.target].index(a) for a in subsets[arrow.source])
        for arrow in category.arrows
    )
    return SetFunctor(category, tuple(tuple(map(str, s)) for s in subsets), maps)


@st.composite
def group_functors(draw, max_generators: int = 12) -> SetFunctor:
    """
    A coset space, plus fixed points, of a group seen as a one-object category.
    """
    group = draw(groups())
    room = min(3, max_generators // group.order)
    subgroup = draw(
        st.sampled_from(
            [h for h in subgroups(group) if group.order // len(h) <= room]
        )
    )
    orbit = coset_space(group, subgroup)
    fixed = draw(st.integers(min_value=0, max_value=room - len(orbit)))
    values = orbit.points + tuple(f"*{i}" for i in range(fixed))
    maps = tuple(
        tuple(orbit.action[g]) + tuple(range(len(orbit), len(values)))
        for g in group.elements
    )
    return SetFunctor(one_object(group), (values,), maps)


def functors() -> st.SearchStrategy[SetFunctor]:
    return st.one_of(poset_functors(), group_functors())


def categories() -> st.SearchStrategy[FiniteCategory]:
    small = st.sampled_from(["1", "Z2", "Z3"]).map(named_group).map(one_object)
    return st.one_of(posets().map(poset_category), small)
