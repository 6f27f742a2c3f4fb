"""
The locales of relations, functions and bijections between finite sets.

Generators are the pairs ⟨x|y⟩, numbered `x * |Y| + y`. On top of the free site the
covers are

* u: ⟨z|x⟩ ∧ ⟨z|y⟩ ≤ 0 for x ≠ y, and e: 1 ≤ ⋁_y ⟨z|y⟩, for functions;
* additionally i: ⟨x|z⟩ ∧ ⟨y|z⟩ ≤ 0 for x ≠ y, and s: 1 ≤ ⋁_x ⟨x|z⟩, for bijections.

The u and i covers are taken once per unordered pair.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from dataclasses import field
from enum import Enum
from functools import lru_cache
from typing import Optional
from typing import Sequence

from localic.exceptions import InvalidAction
from localic.groups import FiniteGroup
from localic.groups import Subgroup
from localic.gsets import GSet
from localic.locale import BOTTOM
from localic.locale import TOP
from localic.locale import Cover
from localic.locale import FrameMorphism
from localic.locale import LocalePoint
from localic.locale import Site
from localic.locale import check_frame_morphism
from localic.locale import copair
from localic.locale import decide_equal
from localic.locale import discrete_site
from localic.locale import enumerate_points
from localic.locale import frame_morphism
from localic.locale import identity_morphism
from localic.locale import join_dnfs
from localic.locale import tensor
from localic.locale import tensor_morphisms
from localic.locale import terminal_site
from localic.locale import unit_morphism
from localic.order import Preorder
from localic.settings import DEFAULT_SETTINGS
from localic.settings import EngineSettings
from localic.types import DNF
from localic.types import Mask
from localic.verdicts import Report
from localic.verdicts import first_failure
from localic.verdicts import holds_if

logger = logging.getLogger(__name__)


class Kind(str, Enum):
    RELATIONS = "relations"
    FUNCTIONS = "functions"
    BIJECTIONS = "bijections"

    @classmethod
    def parse(cls, text: str) -> Kind:
        """
        >>> Kind.parse("bij")
        <Kind.BIJECTIONS: 'bijections'>
        """
        aliases = {
            "rel": cls.RELATIONS,
            "func": cls.FUNCTIONS,
            "transformations": cls.FUNCTIONS,
            "bij": cls.BIJECTIONS,
        }
        try:
            return aliases.get(text) or cls(text)
        except ValueError:
            raise ValueError(f"Unknown kind {text!r}.") from None


@dataclass(frozen=True)
class WraithSite:
    kind: Kind
    domain: tuple[str, ...]
    codomain: tuple[str, ...]
    site: Site = field(repr=False)

    def generator(self, x: int, y: int) -> int:
        return x * len(self.codomain) + y

    def term(self, *pairs: tuple[int, int]) -> Mask:
        mask = 0
        for x, y in pairs:
            mask |= 1 << self.generator(x, y)
        return mask

    def pair(self, generator: int) -> tuple[int, int]:
        return divmod(generator, len(self.codomain))

    def relation(self, point: LocalePoint) -> set[tuple[str, str]]:
        """
        The pairs a point accepts.
        """
        return {
            (self.domain[x], self.codomain[y])
            for x, y in (self.pair(g) for g in range(len(self.site.base)))
            if point.accepts_term(1 << self.generator(x, y))
        }


def _labels(values: Sequence) -> tuple[str, ...]:
    return tuple(str(v) for v in values)


def wraith_site(kind: Kind, domain: Sequence, codomain: Sequence) -> WraithSite:
    """
    >>> ws = wraith_site(Kind.FUNCTIONS, ["z"], ["x", "y"])
    >>> [ws.site.describe_cover(i) for i in range(len(ws.site.covers))]
    ['[⟨z|x⟩,⟨z|y⟩] ≤ ⋁{∅}', '[] ≤ ⋁{[⟨z|x⟩], [⟨z|y⟩]}']
    """
    return _wraith_site(Kind(kind), _labels(domain), _labels(codomain))


@lru_cache(maxsize=128)
def _wraith_site(
    kind: Kind, domain: tuple[str, ...], codomain: tuple[str, ...]
) -> WraithSite:
    names = [f"{x}|{y}" for x in domain for y in codomain]
    n, m = len(domain), len(codomain)

    def gen(x: int, y: int) -> Mask:
        return 1 << (x * m + y)

    covers = []
    if kind in (Kind.FUNCTIONS, Kind.BIJECTIONS):
        for x in range(n):
            covers += [
                Cover(gen(x, y) | gen(x, w), ())
                for y in range(m)
                for w in range(y + 1, m)
            ]
            covers.append(Cover(0, tuple(gen(x, y) for y in range(m))))
    if kind == Kind.BIJECTIONS:
        for y in range(m):
            covers += [
                Cover(gen(x, y) | gen(v, y), ())
                for x in range(n)
                for v in range(x + 1, n)
            ]
            covers.append(Cover(0, tuple(gen(x, y) for x in range(n))))
    site = Site(Preorder.discrete(names), tuple(covers), f"{kind.value}({n},{m})")
    return WraithSite(kind, domain, codomain, site)


def automorphism_site(carrier: Sequence) -> WraithSite:
    return wraith_site(Kind.BIJECTIONS, carrier, carrier)


def wraith_points(
    kind: Kind,
    domain: Sequence,
    codomain: Sequence,
    settings: EngineSettings = DEFAULT_SETTINGS,
) -> list[set[tuple[str, str]]]:
    """
    The points, each as the relation it accepts.

    >>> len(wraith_points(Kind.BIJECTIONS, "abc", "abc"))
    6
    """
    ws = wraith_site(kind, domain, codomain)
    return [ws.relation(p) for p in enumerate_points(ws.site, settings)]


"""
Structure maps
"""


def comultiplication(
    kind: Kind, domain: Sequence, codomain: Sequence, middle: Sequence
) -> FrameMorphism:
    """
    m*⟨x|y⟩ = ⋁_z ⟨x|z⟩ ⊗ ⟨z|y⟩, from (X, Y) to (X, Z) ⊗ (Z, Y).
    """
    source = wraith_site(kind, domain, codomain)
    left = wraith_site(kind, domain, middle)
    right = wraith_site(kind, middle, codomain)
    shift = len(left.site.base)
    assignment = []
    for x in range(len(source.domain)):
        for y in range(len(source.codomain)):
            assignment.append(
                tuple(
                    1 << left.generator(x, z) | 1 << (shift + right.generator(z, y))
                    for z in range(len(left.codomain))
                )
            )
    return FrameMorphism(source.site, tensor(left.site, right.site), tuple(assignment))


def counit(kind: Kind, carrier: Sequence) -> FrameMorphism:
    """
    e*⟨x|y⟩ is 1 exactly when x = y.
    """
    ws = wraith_site(kind, carrier, carrier)
    assignment = tuple(
        TOP if x == y else BOTTOM for x, y in map(ws.pair, range(len(ws.site.base)))
    )
    return FrameMorphism(ws.site, terminal_site(), assignment)


def inverse(domain: Sequence, codomain: Sequence) -> FrameMorphism:
    """
    ι*⟨x|y⟩ = ⟨y|x⟩, from bijections X → Y to bijections Y → X.
    """
    source = wraith_site(Kind.BIJECTIONS, domain, codomain)
    target = wraith_site(Kind.BIJECTIONS, codomain, domain)
    assignment = tuple(
        (1 << target.generator(y, x),)
        for x, y in map(source.pair, range(len(source.site.base)))
    )
    return FrameMorphism(source.site, target.site, assignment)


def structure_map(
    which: str,
    domain: Sequence,
    codomain: Sequence = (),
    middle: Sequence = (),
    kind: Kind = Kind.BIJECTIONS,
    settings: EngineSettings = DEFAULT_SETTINGS,
) -> FrameMorphism:
    """
    One of the structure maps "m", "e" or "iota", validated as a morphism of sites.

    >>> e = structure_map("e", ["a", "b"], kind=Kind.FUNCTIONS)
    >>> e.assignment
    ((0,), (), (), (0,))
    """
    kind = Kind(kind)
    if which == "m":
        morphism = comultiplication(kind, domain, codomain, middle)
    elif which == "e":
        morphism = counit(kind, domain)
    elif which == "iota":
        if kind != Kind.BIJECTIONS:
            raise ValueError("Only bijections have an inverse map.")
        morphism = inverse(domain, codomain)
    else:
        raise ValueError(f"Unknown structure map {which!r}.")
    return frame_morphism(morphism.source, morphism.target, morphism.assignment, settings)


def _corrupted(morphism: FrameMorphism) -> FrameMorphism:
    if not morphism.assignment:
        raise ValueError("No generators to corrupt.")
    first, *rest = morphism.assignment
    return FrameMorphism(morphism.source, morphism.target, (first[1:], *rest))


def _compare(
    report: Report,
    law: Sequence[str],
    site: Site,
    names: Sequence[str],
    lhs: Sequence[DNF],
    rhs: Sequence[DNF],
    settings: EngineSettings,
) -> None:
    for name, a, b in zip(names, lhs, rhs):
        report.add(*law, name, decide_equal(site, a, b, settings))


def verify_groupoid_laws(
    kind: Kind,
    domain: Sequence,
    codomain: Sequence,
    middle: Sequence,
    settings: EngineSettings = DEFAULT_SETTINGS,
    corrupt: bool = False,
) -> Report:
    """
    Coassociativity, the counit laws and, for bijections, the inverse laws, each checked
    generator by generator as equalities of frame elements.

    `corrupt` drops one term from the first generator under the comultiplication that
    is applied first on the left of coassociativity and in both counit laws. The right
    side keeps the true map, so every law that sees the corrupted map must fail.
    """
    kind = Kind(kind)
    ws = wraith_site(kind, domain, codomain)
    names = ws.site.base.elements

    def outer(over: Sequence) -> FrameMorphism:
        m = comultiplication(kind, domain, codomain, over)
        return _corrupted(m) if corrupt else m

    m = comultiplication(kind, domain, codomain, middle)
    left = outer(middle).then(
        tensor_morphisms(
            comultiplication(kind, domain, middle, middle),
            identity_morphism(wraith_site(kind, middle, codomain).site),
        )
    )
    right = m.then(
        tensor_morphisms(
            identity_morphism(wraith_site(kind, domain, middle).site),
            comultiplication(kind, middle, codomain, middle),
        )
    )
    triple = left.target
    report = Report(
        f"groupoid laws for {kind.value} "
        f"(|X|={len(domain)}, |Y|={len(codomain)}, |Z|={len(middle)})",
        settings.engine_label(triple.generator_count),
    )
    report.note("(m*⊗id)∘m* and (id⊗m*)∘m* land in (X,Z) ⊗ (Z,Z) ⊗ (Z,Y)")
    _compare(
        report, ["coassociativity"], triple, names, left.assignment, right.assignment, settings
    )

    identity = identity_morphism(ws.site).assignment
    counit_left = outer(domain).then(
        tensor_morphisms(counit(kind, domain), identity_morphism(ws.site))
    )
    counit_right = outer(codomain).then(
        tensor_morphisms(identity_morphism(ws.site), counit(kind, codomain))
    )
    _compare(
        report, ["counit", "left"], ws.site, names, counit_left.assignment, identity, settings
    )
    _compare(
        report, ["counit", "right"], ws.site, names, counit_right.assignment, identity, settings
    )

    if kind == Kind.BIJECTIONS:
        square = automorphism_site(domain)
        m_square = comultiplication(kind, domain, domain, domain)
        same = counit(kind, domain).then(unit_morphism(square.site)).assignment
        inverse_left = m_square.then(
            copair(inverse(domain, domain), identity_morphism(square.site))
        )
        inverse_right = m_square.then(
            copair(identity_morphism(square.site), inverse(domain, domain))
        )
        square_names = square.site.base.elements
        _compare(
            report, ["inverse", "left"], square.site, square_names,
            inverse_left.assignment, same, settings,
        )
        _compare(
            report, ["inverse", "right"], square.site, square_names,
            inverse_right.assignment, same, settings,
        )
        twice = inverse(domain, codomain).then(inverse(codomain, domain))
        _compare(
            report, ["involution"], ws.site, names, twice.assignment, identity, settings
        )
    return report


def check_cover_equations(
    ws: WraithSite, settings: EngineSettings = DEFAULT_SETTINGS
) -> Report:
    """
    The covers hold as identities of frame elements: the u and i meets are zero, and
    the e and s joins are the top.
    """
    site = ws.site
    report = Report(
        f"cover equations for {ws.kind.value}", settings.engine_label(site.generator_count)
    )
    for i, cover in enumerate(site.covers):
        report.add(
            "cover",
            site.describe_cover(i),
            decide_equal(site, (cover.target,), join_dnfs(cover.family), settings),
        )
    return report


"""
Group actions
"""


@dataclass(frozen=True)
class ActionPresentation:
    """
    A finite group acting on a finite set, given by μ*⟨x|y⟩ = {g : g·x = y}.
    """

    group: FiniteGroup
    carrier: tuple[str, ...]
    mu_star: tuple[tuple[Subgroup, ...], ...]
    report: Optional[Report] = field(default=None, compare=False, repr=False)

    def mu(self, x: int, y: int) -> Subgroup:
        return self.mu_star[x][y]


def _comultiply_subset(group: FiniteGroup, subset: Subgroup) -> frozenset[tuple[int, int]]:
    # the first factor acts first
    return frozenset(
        (h, k) for h in group.elements for k in group.elements if group.table[k][h] in subset
    )


def check_action_equations(act: ActionPresentation) -> Report:
    group = act.group
    n = len(act.carrier)
    report = Report("action equations")
    pairs = [(x, y) for x in range(n) for y in range(n)]
    report.add(
        "comultiplication",
        first_failure(
            holds_if(
                _comultiply_subset(group, act.mu(x, y))
                == frozenset(
                    (h, k)
                    for z in range(n)
                    for h in act.mu(x, z)
                    for k in act.mu(z, y)
                ),
                f"m*μ* ≠ (μ*⊗μ*)m* at ⟨{act.carrier[x]}|{act.carrier[y]}⟩",
                [act.carrier[x], act.carrier[y]],
            )
            for x, y in pairs
        ),
    )
    report.add(
        "inverse",
        first_failure(
            holds_if(
                act.mu(y, x) == frozenset(group.inverse(g) for g in act.mu(x, y)),
                f"μ*ι* ≠ ι*μ* at ⟨{act.carrier[x]}|{act.carrier[y]}⟩",
                [act.carrier[x], act.carrier[y]],
            )
            for x, y in pairs
        ),
    )
    report.add(
        "counit",
        first_failure(
            holds_if(
                (group.identity in act.mu(x, y)) == (x == y),
                f"e*μ* ≠ e* at ⟨{act.carrier[x]}|{act.carrier[y]}⟩",
                [act.carrier[x], act.carrier[y]],
            )
            for x, y in pairs
        ),
    )
    return report


def action_morphism(act: ActionPresentation) -> FrameMorphism:
    """
    μ* as a map from the automorphisms of the carrier to the discrete locale on G.
    """
    source = automorphism_site(act.carrier)
    target = discrete_site(act.group.labels)
    n = len(act.carrier)
    assignment = tuple(
        tuple(1 << g for g in sorted(act.mu(x, y))) for x in range(n) for y in range(n)
    )
    return FrameMorphism(source.site, target, assignment)


def action_from_gset(
    gset: GSet, settings: EngineSettings = DEFAULT_SETTINGS
) -> ActionPresentation:
    """
    >>> from localic.groups import cyclic
    >>> from localic.gsets import regular
    >>> act = action_from_gset(regular(cyclic(2)))
    >>> sorted(act.mu(0, 1)), sorted(act.mu(0, 0)), bool(act.report)
    ([1], [0], True)
    """
    n = len(gset)
    mu_star = tuple(tuple(gset.transporter(x, y) for y in range(n)) for x in range(n))
    act = ActionPresentation(gset.group, gset.points, mu_star)
    report = check_action_equations(act)
    if settings.uses_full_engine(n * n):
        morphism = action_morphism(act)
        report.add(
            "frame map",
            check_frame_morphism(
                morphism.source, morphism.target, morphism.assignment, settings
            ),
        )
        report.engine = settings.engine_label(n * n)
    else:
        report.note(f"μ* not checked as a frame map: {n * n} generators")
    return ActionPresentation(act.group, act.carrier, act.mu_star, report)


def l_fix(act: ActionPresentation, x: int) -> Subgroup:
    """
    The stabilizer μ*⟨x|x⟩.
    """
    fixer = act.mu(x, x)
    if not act.group.is_subgroup(fixer):
        raise InvalidAction(f"μ*⟨{act.carrier[x]}|{act.carrier[x]}⟩ is not a subgroup.")
    return fixer


def is_transitive(act: ActionPresentation) -> bool:
    n = len(act.carrier)
    return n > 0 and all(act.mu(x, y) for x in range(n) for y in range(n))
