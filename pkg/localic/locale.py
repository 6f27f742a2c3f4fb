"""
Finitely presented locales.

A `Site` is a preorder of generators together with covers. Each cover says that its
target (a finite meet of generators) is below the join of its family. The frame the
site presents is computed by one of two engines:

* `FullEngine` materializes the free inf-lattice on the generators and represents frame
  elements as saturated downsets, one bit per lattice element.
* `LazyEngine` never materializes the lattice. It decides `element ≤ join(family)` by
  exploring the cover pullbacks reachable from the element, and by searching for a
  point that separates the two sides. Both searches are exact when they finish; when
  the budget runs out the answer is `Undecided`.

Frame elements handed around between modules are usually written as a DNF: a tuple of
terms, each term a bitmask of generators standing for their meet. The empty tuple is
the bottom, and `(0,)` is the top.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from dataclasses import field
from functools import cached_property
from functools import lru_cache
from itertools import chain
from typing import Iterable
from typing import Optional
from typing import Sequence
from typing import Union

from localic.exceptions import CapacityError
from localic.exceptions import InvalidMorphism
from localic.exceptions import InvalidSite
from localic.exceptions import SiteMismatchError
from localic.order import FreeInfLattice
from localic.order import Preorder
from localic.order import free_inf_lattice
from localic.order import free_leq
from localic.settings import DEFAULT_BUDGET
from localic.settings import DEFAULT_MAX_GENERATORS
from localic.settings import DEFAULT_SETTINGS
from localic.settings import EngineSettings
from localic.types import DNF
from localic.types import Mask
from localic.types import Term
from localic.utils import bits
from localic.utils import is_subset
from localic.utils import popcount
from localic.verdicts import Fails
from localic.verdicts import Holds
from localic.verdicts import Undecided
from localic.verdicts import Verdict
from localic.verdicts import first_failure
from localic.verdicts import holds_if

logger = logging.getLogger(__name__)

TOP: DNF = (0,)
BOTTOM: DNF = ()


@dataclass(frozen=True)
class Cover:
    """
    `target ≤ ⋁ family`, each side a meet of generators given as a bitmask.
    An empty family forces the target to zero.
    """

    target: Term
    family: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Site:
    base: Preorder
    covers: tuple[Cover, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        universe = (1 << len(self.base)) - 1
        for i, cover in enumerate(self.covers):
            if not is_subset(cover.target, universe):
                raise InvalidSite(
                    "Cover target uses unknown generators.", ("covers", str(i), "target")
                )
            for j, member in enumerate(cover.family):
                location = ("covers", str(i), "family", str(j))
                if not is_subset(member, universe):
                    raise InvalidSite("Family member uses unknown generators.", location)
                if not free_leq(member, cover.target, self.base):
                    raise InvalidSite(
                        f"{self.describe(member)} is not below the cover target "
                        f"{self.describe(cover.target)}.",
                        location,
                    )

    @classmethod
    def from_names(
        cls,
        base: Preorder,
        covers: Iterable[tuple[Iterable[str], Iterable[Iterable[str]]]],
        name: str = "",
    ) -> Site:
        """
        >>> site = Site.from_names(Preorder.discrete(["g"]), [(["g"], [])])
        >>> site.covers
        (Cover(target=1, family=()),)
        """
        return cls(
            base,
            tuple(
                Cover(base.mask(target), tuple(base.mask(m) for m in family))
                for target, family in covers
            ),
            name,
        )

    @property
    def generator_count(self) -> int:
        return len(self.base)

    def describe(self, term: Term) -> str:
        return "[" + ",".join(f"⟨{n}⟩" for n in self.base.names(term)) + "]"

    def describe_dnf(self, dnf: DNF) -> str:
        if not dnf:
            return "0"
        return " ∨ ".join(self.describe(t) for t in dnf)

    def describe_cover(self, index: int) -> str:
        cover = self.covers[index]
        family = ", ".join(self.describe(m) for m in cover.family) or "∅"
        return f"{self.describe(cover.target)} ≤ ⋁{{{family}}}"

    def as_dict(self) -> dict:
        return {
            "base": self.base.as_dict(),
            "covers": [
                {
                    "target": self.base.names(c.target),
                    "family": [self.base.names(m) for m in c.family],
                }
                for c in self.covers
            ],
        }


def terminal_site() -> Site:
    """
    No generators and no covers: the two-element frame.
    """
    return Site(Preorder((), frozenset()), (), "2")


def discrete_site(labels: Sequence[str]) -> Site:
    """
    The discrete locale on a finite set: its frame is the powerset.

    >>> len(enumerate_points(discrete_site(["a", "b", "c"])))
    3
    >>> enumerate_points(discrete_site([]))
    []
    """
    base = Preorder.discrete(labels)
    n = len(labels)
    covers = [Cover(0, tuple(1 << i for i in range(n)))]
    covers += [
        Cover(1 << i | 1 << j, ()) for i in range(n) for j in range(i + 1, n)
    ]
    return Site(base, tuple(covers), "discrete")


def tensor(a: Site, b: Site) -> Site:
    """
    Generators of `a` come first, then those of `b`.

    >>> one = Site(Preorder.discrete(["x"]))
    >>> len(full_engine(tensor(one, Site(Preorder.discrete(["y"])))).lattice)
    4
    """
    shift = len(a.base)
    covers = a.covers + tuple(
        Cover(c.target << shift, tuple(m << shift for m in c.family)) for c in b.covers
    )
    return Site(a.base.disjoint_union(b.base), covers, f"{a.name}⊗{b.name}")


"""
Full engine
"""


class FullEngine:
    """
    Saturated downsets of the free inf-lattice.

    Saturation pulls each cover (t, F) back along every c ≤ t: if every c ∧ f is in the
    set, so is c. Covers with an empty family hold unconditionally, so everything below
    their targets is collected once in `forced`.
    """

    def __init__(self, site: Site, max_generators: int = DEFAULT_MAX_GENERATORS):
        self.site = site
        self.lattice: FreeInfLattice = free_inf_lattice(site.base, max_generators)
        self.label = "full"

    @cached_property
    def forced(self) -> Mask:
        lattice = self.lattice
        forced = 0
        for cover in self.site.covers:
            if not cover.family:
                forced |= lattice.down(lattice.classify(cover.target))
        return forced

    @cached_property
    def instances(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        lattice = self.lattice
        found = set()
        for cover in self.site.covers:
            if not cover.family:
                continue
            t = lattice.classify(cover.target)
            family = [lattice.classify(m) for m in cover.family]
            for c in bits(lattice.down(t) & ~self.forced):
                meets = tuple(sorted({lattice.meet(c, f) for f in family}))
                if c not in meets:
                    found.add((c, meets))
        logger.debug(
            "Site %r: %d lattice elements, %d cover instances.",
            self.site.name,
            len(lattice),
            len(found),
        )
        return tuple(sorted(found))

    @cached_property
    def everything(self) -> Mask:
        return (1 << len(self.lattice)) - 1

    def close(self, members: Mask) -> Mask:
        down = self.lattice.down
        members |= self.forced
        changed = True
        while changed:
            changed = False
            for c, meets in self.instances:
                if members >> c & 1:
                    continue
                if all(members >> m & 1 for m in meets):
                    members |= down(c)
                    changed = True
        return members

    def saturate(self, seed: Iterable[int]) -> FrameElement:
        members = 0
        for c in seed:
            members |= self.lattice.down(c)
        return FrameElement(self.site, self.close(members), self)

    @cached_property
    def zero(self) -> FrameElement:
        return self.saturate(())

    @cached_property
    def top(self) -> FrameElement:
        return FrameElement(self.site, self.everything, self)

    def element(self, dnf: DNF) -> FrameElement:
        return self.saturate(self.lattice.classify(term) for term in dnf)

    def decide_leq(self, lhs: DNF, rhs: DNF) -> Verdict:
        return holds_if(
            self.element(lhs) <= self.element(rhs),
            f"{self.site.describe_dnf(lhs)} is not below {self.site.describe_dnf(rhs)}",
        )

    def points(self) -> list[LocalePoint]:
        found = [
            LocalePoint(self.site, up)
            for up in self.lattice.ups
            if _is_point(up, self.cover_ups)
        ]
        return sorted(found, key=LocalePoint.sort_key)

    @cached_property
    def cover_ups(self) -> tuple[tuple[Mask, tuple[Mask, ...]], ...]:
        return _cover_ups(self.site)


@lru_cache(maxsize=256)
def full_engine(site: Site, max_generators: int = DEFAULT_MAX_GENERATORS) -> FullEngine:
    return FullEngine(site, max_generators)


@dataclass(frozen=True)
class FrameElement:
    """
    A saturated downset of the free inf-lattice, one bit per lattice element.

    >>> site = discrete_site(["1", "2"])
    >>> a, b = principal(site, 0b01), principal(site, 0b10)
    >>> (a & b).is_zero, (a | b).is_top
    (True, True)
    """

    site: Site
    members: Mask
    engine: FullEngine = field(compare=False, repr=False, hash=False)

    def _check(self, other: FrameElement) -> None:
        if self.site != other.site:
            raise SiteMismatchError("Frame elements belong to different sites.")

    def __and__(self, other: FrameElement) -> FrameElement:
        self._check(other)
        return FrameElement(self.site, self.members & other.members, self.engine)

    def __or__(self, other: FrameElement) -> FrameElement:
        self._check(other)
        return FrameElement(
            self.site, self.engine.close(self.members | other.members), self.engine
        )

    def __le__(self, other: FrameElement) -> bool:
        self._check(other)
        return is_subset(self.members, other.members)

    @property
    def is_zero(self) -> bool:
        return self.members == self.engine.zero.members

    @property
    def is_top(self) -> bool:
        return self.members == self.engine.everything

    def maximal(self) -> list[int]:
        lattice = self.engine.lattice
        base = lattice.base
        found = []
        for c in bits(self.members):
            up = lattice.ups[c]
            # the elements just above c drop one minimal class from its up-set
            above = (
                lattice.index_of_up[up & ~(base.up[g] & base.down[g])]
                for g in bits(lattice.representatives[c])
            )
            if not any(self.members >> d & 1 for d in above):
                found.append(c)
        return found

    def terms(self) -> DNF:
        """
        A DNF for this element: its maximal lattice elements, modulo the zero.
        """
        if self.is_zero:
            return BOTTOM
        zero = self.engine.zero.members
        reps = self.engine.lattice.representatives
        return tuple(reps[c] for c in self.maximal() if not zero >> c & 1)

    def names(self) -> list[list[str]]:
        return [self.site.base.names(t) for t in self.terms()]


def saturate(
    site: Site,
    seed: Iterable[int],
    max_generators: int = DEFAULT_MAX_GENERATORS,
) -> FrameElement:
    """
    The least saturated downset containing the seed lattice elements.

    >>> g = Site.from_names(Preorder.discrete(["g"]), [(["g"], [])])
    >>> saturate(g, [full_engine(g).lattice.eta(0)]) == saturate(g, [])
    True
    """
    return full_engine(site, max_generators).saturate(seed)


def principal(
    site: Site, term: Term, max_generators: int = DEFAULT_MAX_GENERATORS
) -> FrameElement:
    """
    The frame element a meet of generators stands for.
    """
    engine = full_engine(site, max_generators)
    return engine.saturate([engine.lattice.classify(term)])


def element_of(
    site: Site, dnf: DNF, max_generators: int = DEFAULT_MAX_GENERATORS
) -> FrameElement:
    return full_engine(site, max_generators).element(dnf)


def frame_join(a: FrameElement, b: FrameElement) -> FrameElement:
    return a | b


def frame_meet(a: FrameElement, b: FrameElement) -> FrameElement:
    return a & b


def frame_leq(a: FrameElement, b: FrameElement) -> bool:
    return a <= b


def is_zero(a: FrameElement) -> bool:
    return a.is_zero


"""
Lazy engine
"""


class BudgetExhausted(Exception):
    pass


@dataclass
class Budget:
    remaining: int

    def spend(self) -> None:
        self.remaining -= 1
        if self.remaining < 0:
            raise BudgetExhausted


def _cover_ups(site: Site) -> tuple[tuple[Mask, tuple[Mask, ...]], ...]:
    up = site.base.up_closure
    return tuple((up(c.target), tuple(up(m) for m in c.family)) for c in site.covers)


def _violated(
    up_set: Mask, cover_ups: Sequence[tuple[Mask, tuple[Mask, ...]]]
) -> Optional[tuple[Mask, ...]]:
    for target, family in cover_ups:
        if is_subset(target, up_set) and not any(
            is_subset(m, up_set) for m in family
        ):
            return family
    return None


def _is_point(up_set: Mask, cover_ups) -> bool:
    return _violated(up_set, cover_ups) is None


class LazyEngine:
    def __init__(self, site: Site, budget: int = DEFAULT_BUDGET):
        self.site = site
        self.budget = budget
        self.label = f"lazy(budget={budget})"
        self.cover_ups = _cover_ups(site)

    def up(self, term: Term) -> Mask:
        return self.site.base.up_closure(term)

    def extend_to_point(
        self, start: Mask, forbidden: Sequence[Mask], budget: Budget
    ) -> Optional[Mask]:
        """
        A point containing the up-set `start` that contains none of `forbidden`, or None
        when there is no such point. Raises BudgetExhausted.
        """
        stack = [start]
        seen = set()
        while stack:
            current = stack.pop()
            if current in seen:
                continue
            seen.add(current)
            budget.spend()
            if any(is_subset(f, current) for f in forbidden):
                continue
            family = _violated(current, self.cover_ups)
            if family is None:
                return current
            stack.extend(current | m for m in reversed(family))
        return None

    def derivable(self, start: Mask, targets: Sequence[Mask], budget: Budget) -> bool:
        """
        Whether `start ≤ ⋁ targets`, as the least fixpoint over the reachable pullbacks.
        """
        nodes: dict[Mask, Union[bool, list[tuple[Mask, ...]]]] = {}
        queue = deque([start])
        while queue:
            current = queue.popleft()
            if current in nodes:
                continue
            budget.spend()
            if any(is_subset(t, current) for t in targets):
                nodes[current] = True
                continue
            groups = []
            for target, family in self.cover_ups:
                if is_subset(target, current) and not any(
                    is_subset(m, current) for m in family
                ):
                    children = tuple(current | m for m in family)
                    groups.append(children)
                    queue.extend(children)
            nodes[current] = groups
        derived = {u for u, groups in nodes.items() if groups is True}
        changed = True
        while changed and start not in derived:
            changed = False
            for u, groups in nodes.items():
                if u in derived or groups is True:
                    continue
                if any(all(c in derived for c in children) for children in groups):
                    derived.add(u)
                    changed = True
        return start in derived

    def entails(self, term: Term, family: DNF) -> Verdict:
        start = self.up(term)
        targets = [self.up(f) for f in family]
        if any(is_subset(t, start) for t in targets):
            return Holds
        message = (
            f"{self.site.describe(term)} is not below "
            f"{self.site.describe_dnf(tuple(family))}"
        )
        try:
            point = self.extend_to_point(start, targets, Budget(self.budget // 2))
        except BudgetExhausted:
            logger.debug("Point search ran out of budget; trying derivations.")
        else:
            if point is None:
                return Holds
            return Fails(message, witness=self.site.base.names(point))
        try:
            found = self.derivable(start, targets, Budget(self.budget - self.budget // 2))
        except BudgetExhausted:
            logger.info("Entailment undecided within %d expansions.", self.budget)
            return Undecided(f"budget of {self.budget} expansions exhausted")
        return holds_if(found, message)

    def decide_leq(self, lhs: DNF, rhs: DNF) -> Verdict:
        return first_failure(self.entails(term, rhs) for term in lhs)

    def points(self) -> list[LocalePoint]:
        base = self.site.base
        n = len(base)
        budget = Budget(self.budget)
        found: list[Mask] = []

        def feasible(included: Mask, excluded: Mask) -> bool:
            forbidden = [1 << h for h in bits(excluded)]
            return self.extend_to_point(included, forbidden, budget) is not None

        def descend(g: int, included: Mask, excluded: Mask) -> None:
            while g < n and (included >> g & 1 or excluded >> g & 1):
                g += 1
            if g == n:
                found.append(included)
                return
            with_g = included | base.up[g]
            if not with_g & excluded and feasible(with_g, excluded):
                descend(g + 1, with_g, excluded)
            without_g = excluded | base.down[g]
            if not without_g & included and feasible(included, without_g):
                descend(g + 1, included, without_g)

        if feasible(0, 0):
            descend(0, 0, 0)
        return sorted((LocalePoint(self.site, u) for u in found), key=LocalePoint.sort_key)


@lru_cache(maxsize=256)
def lazy_engine(site: Site, budget: int = DEFAULT_BUDGET) -> LazyEngine:
    return LazyEngine(site, budget)


def engine_for(
    site: Site, settings: EngineSettings = DEFAULT_SETTINGS
) -> Union[FullEngine, LazyEngine]:
    if settings.uses_full_engine(site.generator_count):
        return full_engine(site, settings.max_generators)
    logger.info(
        "Site %r has %d generators; using the lazy engine.",
        site.name,
        site.generator_count,
    )
    return lazy_engine(site, settings.budget)


def entails(
    site: Site, element: Term, family: Sequence[Term], budget: int = DEFAULT_BUDGET
) -> Verdict:
    """
    Whether a meet of generators is below the join of a family of meets, decided
    without materializing the lattice.

    >>> from localic.wraith import Kind, wraith_site
    >>> functions = wraith_site(Kind.FUNCTIONS, ["z"], ["x", "y"]).site
    >>> entails(functions, 0, [0b01, 0b10])
    Holds
    >>> bijections = wraith_site(Kind.BIJECTIONS, ["1", "2"], ["1", "2"]).site
    >>> entails(bijections, 0b0011, [])
    Holds
    >>> entails(bijections, 0b0001, []).status
    'fail'
    """
    return lazy_engine(site, budget).entails(element, tuple(family))


def decide_leq(
    site: Site, lhs: DNF, rhs: DNF, settings: EngineSettings = DEFAULT_SETTINGS
) -> Verdict:
    return engine_for(site, settings).decide_leq(lhs, rhs)


def decide_equal(
    site: Site, lhs: DNF, rhs: DNF, settings: EngineSettings = DEFAULT_SETTINGS
) -> Verdict:
    engine = engine_for(site, settings)
    if isinstance(engine, FullEngine):
        return holds_if(
            engine.element(lhs) == engine.element(rhs),
            f"{site.describe_dnf(lhs)} differs from {site.describe_dnf(rhs)}",
        )
    return engine.decide_leq(lhs, rhs) & engine.decide_leq(rhs, lhs)


def decide_zero(
    site: Site, term: Term, settings: EngineSettings = DEFAULT_SETTINGS
) -> Verdict:
    """
    Holds when the meet `term` is the bottom of the frame.
    """
    return decide_leq(site, (term,), BOTTOM, settings)


"""
Points
"""


@dataclass(frozen=True)
class LocalePoint:
    """
    A point, given by the up-set of generators it accepts.
    """

    site: Site
    generators: Mask

    def sort_key(self) -> tuple[int, int]:
        return popcount(self.generators), self.generators

    def accepts_term(self, term: Term) -> bool:
        return is_subset(term, self.generators)

    def accepts_dnf(self, dnf: DNF) -> bool:
        return any(self.accepts_term(t) for t in dnf)

    def accepts(self, element: FrameElement) -> bool:
        lattice = element.engine.lattice
        return any(
            is_subset(lattice.ups[c], self.generators) for c in bits(element.members)
        )

    @property
    def filter(self) -> list[int]:
        """
        Accepted lattice elements, by index.
        """
        lattice = full_engine(self.site).lattice
        return [i for i, up in enumerate(lattice.ups) if is_subset(up, self.generators)]

    def names(self) -> list[str]:
        return self.site.base.names(self.generators)


def enumerate_points(
    site: Site, settings: EngineSettings = DEFAULT_SETTINGS
) -> list[LocalePoint]:
    """
    >>> sierpinski = Site(Preorder.discrete(["g"]))
    >>> [p.names() for p in enumerate_points(sierpinski)]
    [[], ['g']]
    >>> forced = Site.from_names(Preorder.discrete(["g"]), [([], [["g"]])])
    >>> [p.names() for p in enumerate_points(forced)]
    [['g']]
    """
    engine = engine_for(site, settings)
    if isinstance(engine, LazyEngine):
        try:
            return engine.points()
        except BudgetExhausted:
            raise CapacityError(
                f"Point enumeration on {site.generator_count} generators exceeded the "
                f"budget of {settings.budget} expansions."
            )
    return engine.points()


"""
Frame morphisms
"""


def _simplify_dnf(terms: Iterable[Term]) -> DNF:
    unique = sorted(set(terms), key=lambda t: (popcount(t), t))
    kept: list[Term] = []
    for t in unique:
        if not any(is_subset(k, t) for k in kept):
            kept.append(t)
    return tuple(kept)


def meet_dnfs(a: DNF, b: DNF) -> DNF:
    return _simplify_dnf(x | y for x in a for y in b)


def join_dnfs(*dnfs: DNF) -> DNF:
    return _simplify_dnf(t for dnf in dnfs for t in dnf)


def shift_dnf(dnf: DNF, shift: int) -> DNF:
    return tuple(t << shift for t in dnf)


AssignmentValue = Union[DNF, FrameElement, Sequence[Term]]


def _as_dnf(value: AssignmentValue) -> DNF:
    if isinstance(value, FrameElement):
        return value.terms()
    return _simplify_dnf(value)


@dataclass(frozen=True)
class FrameMorphism:
    """
    A frame map from the frame of `source` to the frame of `target`, given by the
    image of each generator as a DNF over the target's generators.
    """

    source: Site
    target: Site
    assignment: tuple[DNF, ...]

    def image_term(self, term: Term) -> DNF:
        image = TOP
        for g in bits(term):
            image = meet_dnfs(image, self.assignment[g])
        return image

    def image_dnf(self, dnf: DNF) -> DNF:
        return join_dnfs(*(self.image_term(t) for t in dnf))

    def image(self, lattice_index: int) -> FrameElement:
        term = full_engine(self.source).lattice.representatives[lattice_index]
        return element_of(self.target, self.image_term(term))

    def apply(self, element: FrameElement) -> FrameElement:
        if element.site != self.source:
            raise SiteMismatchError("Element is not on the morphism's source.")
        reps = element.engine.lattice.representatives
        return element_of(
            self.target, join_dnfs(*(self.image_term(reps[c]) for c in element.maximal()))
        )

    def then(self, after: FrameMorphism) -> FrameMorphism:
        """
        Apply `self` first, then `after`.
        """
        if after.source != self.target:
            raise SiteMismatchError("Morphisms don't compose.")
        return FrameMorphism(
            self.source,
            after.target,
            tuple(after.image_dnf(dnf) for dnf in self.assignment),
        )


def check_frame_morphism(
    source: Site,
    target: Site,
    assignment: Sequence[AssignmentValue],
    settings: EngineSettings = DEFAULT_SETTINGS,
) -> Verdict:
    """
    Monotone on the generators, and every cover goes to a covering family.
    """
    if len(assignment) != source.generator_count:
        return Fails(
            f"Assignment has {len(assignment)} values for "
            f"{source.generator_count} generators."
        )
    morphism = FrameMorphism(source, target, tuple(_as_dnf(v) for v in assignment))
    names = source.base.elements

    def order_checks():
        for i, j in sorted(source.base.leq):
            if i == j:
                continue
            verdict = decide_leq(
                target, morphism.assignment[i], morphism.assignment[j], settings
            )
            if verdict.status != "pass":
                yield _relabel(verdict, f"order pair {names[i]} ≤ {names[j]} broken")
            else:
                yield verdict

    def cover_checks():
        for k, cover in enumerate(source.covers):
            lhs = morphism.image_term(cover.target)
            rhs = join_dnfs(*(morphism.image_term(m) for m in cover.family))
            verdict = decide_leq(target, lhs, rhs, settings)
            if verdict.status != "pass":
                yield _relabel(verdict, f"cover {source.describe_cover(k)} broken")
            else:
                yield verdict

    return first_failure(chain(order_checks(), cover_checks()))


def _relabel(verdict: Verdict, message: str) -> Verdict:
    if isinstance(verdict, Fails):
        return Fails(f"{message}: {verdict.message}", verdict.witness)
    if isinstance(verdict, Undecided):
        return Undecided(f"{message}: {verdict.reason}")
    return verdict


def frame_morphism(
    source: Site,
    target: Site,
    assignment: Sequence[AssignmentValue],
    settings: EngineSettings = DEFAULT_SETTINGS,
) -> FrameMorphism:
    """
    Validate generator data as a morphism of sites.

    >>> g = Site.from_names(Preorder.discrete(["g"]), [(["g"], [])])
    >>> frame_morphism(g, terminal_site(), [TOP])
    Traceback (most recent call last):
    ...
    localic.exceptions.InvalidMorphism: cover [⟨g⟩] ≤ ⋁{∅} broken: [] is not below 0
    """
    verdict = check_frame_morphism(source, target, assignment, settings)
    if verdict.status == "fail":
        raise InvalidMorphism(str(verdict), verdict)
    return FrameMorphism(source, target, tuple(_as_dnf(v) for v in assignment))


def identity_morphism(site: Site) -> FrameMorphism:
    return FrameMorphism(site, site, tuple((1 << g,) for g in range(len(site.base))))


def unit_morphism(target: Site) -> FrameMorphism:
    """
    The unique frame map out of the two-element frame.
    """
    return FrameMorphism(terminal_site(), target, ())


def tensor_morphisms(f: FrameMorphism, g: FrameMorphism) -> FrameMorphism:
    shift = len(f.target.base)
    return FrameMorphism(
        tensor(f.source, g.source),
        tensor(f.target, g.target),
        f.assignment + tuple(shift_dnf(dnf, shift) for dnf in g.assignment),
    )


def copair(f: FrameMorphism, g: FrameMorphism) -> FrameMorphism:
    """
    The frame map out of a tensor that is `f` on the left factor and `g` on the right.
    """
    if f.target != g.target:
        raise SiteMismatchError("Copairing needs a common target.")
    return FrameMorphism(tensor(f.source, g.source), f.target, f.assignment + g.assignment)
