"""
Sites for atomic topoi: a finite category of strict epimorphisms with a set-valued
functor. `build_tbg_site` gives the classifying site of a finite group, and
`verify_atomic_site` checks the axioms on any such site.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from dataclasses import field
from functools import cached_property
from itertools import combinations
from itertools import product
from typing import Iterator
from typing import Optional
from typing import Sequence

from localic.category import Arrow
from localic.category import FiniteCategory
from localic.category import SetFunctor
from localic.category import full_subcategory
from localic.exceptions import InvalidAction
from localic.exceptions import InvalidCategory
from localic.groups import FiniteGroup
from localic.groups import Subgroup
from localic.groups import check_order
from localic.groups import class_representatives
from localic.gsets import GSet
from localic.gsets import coset_space
from localic.gsets import hom_gsets
from localic.order import Preorder
from localic.settings import DEFAULT_SETTINGS
from localic.settings import EngineSettings
from localic.verdicts import Report
from localic.verdicts import Verdict
from localic.verdicts import first_failure
from localic.verdicts import holds_if

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SiteCategory:
    """
    A finite category with a functor to finite sets. When the site is made of G-sets,
    `gsets` lists them in object order.
    """

    functor: SetFunctor
    group: Optional[FiniteGroup] = None
    gsets: tuple[GSet, ...] = ()
    name: str = field(default="", compare=False)

    @property
    def category(self) -> FiniteCategory:
        return self.functor.category

    @property
    def objects(self) -> tuple[str, ...]:
        return self.category.objects

    def size(self, obj: int) -> int:
        return self.functor.size(obj)

    def object_named(self, name: str) -> int:
        return self.category.object_index(name)

    @cached_property
    def _arrow_lookup(self) -> dict[tuple[int, int, tuple[int, ...]], int]:
        return {
            (a.source, a.target, self.functor.maps[f]): f
            for f, a in enumerate(self.category.arrows)
        }

    def find_arrow(self, source: int, target: int, mapping: Sequence[int]) -> Optional[int]:
        """
        The arrow with the given ends acting on values by `mapping`, if there is one.
        """
        return self._arrow_lookup.get((source, target, tuple(mapping)))

    def lifts(self, source: int, x: int, target: int, y: int) -> list[int]:
        """
        Arrows `source → target` carrying x to y.
        """
        return [
            f
            for f in self.category.hom(source, target)
            if self.functor.maps[f][x] == y
        ]

    def restrict(self, objects: Sequence[int], name: str = "") -> SiteCategory:
        """
        The full subsite on some objects.
        """
        objects = sorted(set(objects))
        sub, inclusion = full_subcategory(self.category, objects)
        gsets = tuple(self.gsets[x] for x in objects) if self.gsets else ()
        return SiteCategory(
            self.functor.after(inclusion), self.group, gsets, name or self.name
        )

    def object_of(self, gset: GSet) -> Optional[int]:
        """
        The object isomorphic to a given G-set.
        """
        return next(
            (i for i, x in enumerate(self.gsets) if x.is_isomorphic(gset)), None
        )

    @classmethod
    def from_gsets(cls, gsets: Sequence[GSet], name: str = "") -> SiteCategory:
        """
        The full subcategory of G-sets on the given objects, with every equivariant map
        as an arrow and the underlying set as the functor.
        """
        gsets = tuple(gsets)
        groups = {x.group for x in gsets}
        if len(groups) > 1:
            raise InvalidAction("G-sets over different groups.")
        names = [x.name or f"X{i}" for i, x in enumerate(gsets)]
        if len(set(names)) != len(names):
            names = [f"{n}#{i}" for i, n in enumerate(names)]
        arrows: list[Arrow] = []
        mappings: list[tuple[int, ...]] = []
        index: dict[tuple[int, int, tuple[int, ...]], int] = {}
        for i, j in product(range(len(gsets)), repeat=2):
            target = gsets[j]
            for morphism in hom_gsets(gsets[i], target):
                images = ",".join(target.points[y] for y in morphism.mapping)
                index[i, j, morphism.mapping] = len(arrows)
                arrows.append(Arrow(f"{names[i]}→{names[j]}[{images}]", i, j))
                mappings.append(morphism.mapping)

        def compose(g: int, f: int) -> int:
            mapping = tuple(mappings[g][y] for y in mappings[f])
            return index[arrows[f].source, arrows[g].target, mapping]

        identities = [index[i, i, tuple(range(len(x)))] for i, x in enumerate(gsets)]
        category = FiniteCategory.build(names, arrows, compose, identities, name)
        values = tuple(x.points for x in gsets)
        functor = SetFunctor(category, values, tuple(mappings), check=False)
        group = next(iter(groups)) if groups else None
        logger.debug(
            "Site %r: %d objects, %d arrows.", name, len(gsets), len(arrows)
        )
        return cls(functor, group, gsets, name)


def object_name(group: FiniteGroup, subgroup: Subgroup) -> str:
    if len(subgroup) == len(group):
        return "1"
    if len(subgroup) == 1:
        return "G/e"
    return f"G/{group.describe(subgroup)}"


def build_tbg_site(
    group: FiniteGroup, settings: EngineSettings = DEFAULT_SETTINGS
) -> SiteCategory:
    """
    Non-empty transitive G-sets, one coset space per conjugacy class of subgroups,
    smallest first.

    >>> from localic.groups import symmetric
    >>> site = build_tbg_site(symmetric(3))
    >>> [site.size(x) for x in range(len(site.objects))]
    [1, 2, 3, 6]
    """
    check_order(group, settings.max_group_order)
    reps = sorted(
        class_representatives(group, settings.max_group_order),
        key=lambda h: (-len(h), sorted(h)),
    )
    gsets = [coset_space(group, h, object_name(group, h)) for h in reps]
    return SiteCategory.from_gsets(gsets, f"tB({group.name})")


def truncate(site: SiteCategory, max_size: int) -> SiteCategory:
    """
    Keep the objects with at most `max_size` points.
    """
    kept = [x for x in range(len(site.objects)) if site.size(x) <= max_size]
    return site.restrict(kept, f"{site.name}≤{max_size}")


"""
The diagram of the functor
"""


@dataclass(frozen=True)
class Diagram:
    """
    The category of elements of the functor: objects are pairs (x, X) with x in FX, and
    an arrow (x, X) → (y, Y) is an arrow f: X → Y with F(f)(x) = y. `order` is its
    collapse to a preorder.
    """

    site: SiteCategory
    elements: tuple[tuple[int, int], ...]
    order: Preorder

    def name(self, i: int) -> str:
        return self.order.elements[i]

    def arrows(self, i: int, j: int) -> list[int]:
        (a, x), (b, y) = self.elements[i], self.elements[j]
        return self.site.lifts(a, x, b, y)

    @cached_property
    def thin(self) -> Verdict:
        """
        At most one arrow between any two elements.
        """
        n = len(self.elements)
        return first_failure(
            holds_if(
                len(self.arrows(i, j)) <= 1,
                f"{len(self.arrows(i, j))} arrows {self.name(i)} → {self.name(j)}",
                [self.name(i), self.name(j)],
            )
            for i in range(n)
            for j in range(n)
        )

    def _lower_bound(self, i: int, j: int) -> bool:
        order = self.order
        return bool(order.down[i] & order.down[j])

    def _equalized(self, i: int, j: int, u: int, v: int) -> bool:
        category = self.site.category
        return any(
            category.composition[u][w] == category.composition[v][w]
            for k in range(len(self.elements))
            for w in self.arrows(k, i)
        )

    @cached_property
    def cofiltered(self) -> Verdict:
        """
        Non-empty, every two elements have a common element mapping to both, and every
        parallel pair is equalized by some arrow.
        """
        if not self.elements:
            return holds_if(False, "the diagram is empty")
        n = len(self.elements)

        def checks() -> Iterator[Verdict]:
            for i, j in combinations(range(n), 2):
                yield holds_if(
                    self._lower_bound(i, j),
                    f"nothing maps to both {self.name(i)} and {self.name(j)}",
                    [self.name(i), self.name(j)],
                )
            for i, j in product(range(n), repeat=2):
                for u, v in combinations(self.arrows(i, j), 2):
                    yield holds_if(
                        self._equalized(i, j, u, v),
                        f"no arrow equalizes the parallel pair {self.name(i)} → "
                        f"{self.name(j)}",
                        [self.name(i), self.name(j)],
                    )

        return first_failure(checks())

    @cached_property
    def initial(self) -> Optional[int]:
        """
        An element with exactly one arrow to every element, if there is one.
        """
        n = len(self.elements)
        return next(
            (i for i in range(n) if all(len(self.arrows(i, j)) == 1 for j in range(n))),
            None,
        )


def diagram_of(site: SiteCategory) -> Diagram:
    """
    >>> from localic.groups import cyclic
    >>> d = diagram_of(build_tbg_site(cyclic(1)))
    >>> d.order.elements, d.initial
    (('(0H,1)',), 0)
    """
    elements = site.functor.elements
    index = {e: i for i, e in enumerate(elements)}
    names = [
        f"({site.functor.values[obj][x]},{site.objects[obj]})" for obj, x in elements
    ]
    pairs = [
        (index[arrow.source, x], index[arrow.target, site.functor.maps[f][x]])
        for f, arrow in enumerate(site.category.arrows)
        for x in range(site.size(arrow.source))
    ]
    return Diagram(site, elements, Preorder.generated(names, pairs))


"""
Axioms
"""


def _is_epi(category: FiniteCategory, f: int) -> bool:
    target = category.arrows[f].target
    for obj in range(len(category.objects)):
        results: dict[int, int] = {}
        for g in category.hom(target, obj):
            h = category.composition[g][f]
            if h in results:
                return False
            results[h] = g
    return True


def _is_surjective(mapping: Sequence[int], size: int) -> bool:
    return len(set(mapping)) == size


def verify_atomic_site(site: SiteCategory) -> Report:
    """
    The four axioms, plus thinness of the diagram and the faithfulness of the functor.

    >>> from localic.groups import cyclic
    >>> bool(verify_atomic_site(build_tbg_site(cyclic(4))))
    True
    """
    category = site.category
    functor = site.functor
    report = Report(f"atomic site {site.name}")
    report.note(
        "strict epimorphisms are taken to be the epimorphisms that are surjective on "
        "values, which is what they are among G-sets"
    )

    def strict_epi(f: int) -> Verdict:
        arrow = category.arrows[f]
        epi = _is_epi(category, f)
        onto = _is_surjective(functor.maps[f], site.size(arrow.target))
        return holds_if(
            epi and onto,
            f"{arrow.name} is not {'an epimorphism' if not epi else 'surjective'}",
            [arrow.name],
        )

    report.add(
        "i", "arrows are strict epimorphisms",
        first_failure(strict_epi(f) for f in range(len(category.arrows))),
    )
    report.add(
        "ii", "values are non-empty",
        first_failure(
            holds_if(site.size(x) > 0, f"F{site.objects[x]} is empty", [site.objects[x]])
            for x in range(len(site.objects))
        ),
    )
    report.add(
        "iii", "strict epimorphisms go to surjections",
        first_failure(
            holds_if(
                _is_surjective(functor.maps[f], site.size(arrow.target)),
                f"F({arrow.name}) is not surjective",
                [arrow.name],
            )
            for f, arrow in enumerate(category.arrows)
        ),
    )
    diagram = diagram_of(site)
    report.add("iv", "the diagram is cofiltered", diagram.cofiltered)
    report.add("diagram is thin", diagram.thin)
    report.add(
        "functor is faithful",
        first_failure(
            holds_if(
                len({functor.maps[f] for f in category.hom(a, b)})
                == len(category.hom(a, b)),
                f"two arrows {site.objects[a]} → {site.objects[b]} act alike",
                [site.objects[a], site.objects[b]],
            )
            for a, b in product(range(len(site.objects)), repeat=2)
        ),
    )
    report.add(
        "functor reflects isomorphisms",
        first_failure(
            holds_if(
                category.is_iso(f)
                or not _is_surjective(functor.maps[f], site.size(arrow.target))
                or site.size(arrow.source) != site.size(arrow.target),
                f"F({arrow.name}) is a bijection but {arrow.name} is not invertible",
                [arrow.name],
            )
            for f, arrow in enumerate(category.arrows)
        ),
    )
    report.data["objects"] = list(site.objects)
    report.data["arrows"] = len(category.arrows)
    report.data["diagram elements"] = len(diagram.elements)
    report.data["initial element"] = (
        None if diagram.initial is None else diagram.name(diagram.initial)
    )
    return report


def require_non_empty(site: SiteCategory) -> None:
    for x in range(len(site.objects)):
        if site.size(x) == 0:
            raise InvalidCategory(f"F{site.objects[x]} is empty.", ("values", str(x)))
