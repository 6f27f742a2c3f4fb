"""
Locales of natural relations, transformations and bijections between set-valued
functors on a finite category.

The generators are triples (X, ⟨x0|x1⟩) with x0 in FX and x1 in GX, ordered by

    (X, ⟨x0|x1⟩) ≤ (Y, ⟨y0|y1⟩)  iff  some f: X → Y has F(f)(x0) = y0 and G(f)(x1) = y1,

and each object contributes the covers of the matching Wraith locale on FX and GX.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator
from typing import Optional
from typing import Sequence

from localic.atomic import SiteCategory
from localic.atomic import verify_atomic_site
from localic.category import CategoryFunctor
from localic.category import FiniteCategory
from localic.category import SetFunctor
from localic.category import natural_isomorphisms
from localic.category import natural_transformations
from localic.category import naturality
from localic.category import representable
from localic.exceptions import CapacityError
from localic.exceptions import InvalidFunctor
from localic.galois import c_a_subcategory
from localic.galois import require_galois
from localic.gsets import GSet
from localic.gsets import GSetMorphism
from localic.gsets import hom_gsets
from localic.locale import BOTTOM
from localic.locale import Cover
from localic.locale import FrameMorphism
from localic.locale import LocalePoint
from localic.locale import Site
from localic.locale import check_frame_morphism
from localic.locale import copair
from localic.locale import decide_equal
from localic.locale import decide_leq
from localic.locale import decide_zero
from localic.locale import discrete_site
from localic.locale import enumerate_points
from localic.locale import frame_morphism
from localic.locale import identity_morphism
from localic.locale import tensor
from localic.locale import tensor_morphisms
from localic.locale import terminal_site
from localic.locale import unit_morphism
from localic.order import Preorder
from localic.order import free_inf_lattice
from localic.settings import DEFAULT_SETTINGS
from localic.settings import EngineSettings
from localic.types import DNF
from localic.types import Mask
from localic.verdicts import FAIL
from localic.verdicts import UNDECIDED
from localic.verdicts import Fails
from localic.verdicts import Report
from localic.verdicts import Undecided
from localic.verdicts import Verdict
from localic.verdicts import first_failure
from localic.verdicts import holds_if
from localic.wraith import Kind
from localic.wraith import automorphism_site
from localic.wraith import wraith_site

logger = logging.getLogger(__name__)

Components = Sequence[Sequence[int]]


@dataclass(frozen=True)
class NatLocale:
    kind: Kind
    source: SetFunctor
    target: SetFunctor
    site: Site
    offsets: tuple[int, ...]

    @property
    def category(self) -> FiniteCategory:
        return self.source.category

    def generator(self, obj: int, x0: int, x1: int) -> int:
        return self.offsets[obj] + x0 * self.target.size(obj) + x1

    def term(self, obj: int, x0: int, x1: int) -> Mask:
        return 1 << self.generator(obj, x0, x1)

    @cached_property
    def triples(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(
            (obj, x0, x1)
            for obj in range(len(self.category.objects))
            for x0 in range(self.source.size(obj))
            for x1 in range(self.target.size(obj))
        )

    def name(self, generator: int) -> str:
        return self.site.base.elements[generator]

    def point_to_relation(self, point: LocalePoint) -> dict[str, set[tuple[str, str]]]:
        """
        The natural relation a point accepts, object by object.
        """
        found: dict[str, set[tuple[str, str]]] = {
            name: set() for name in self.category.objects
        }
        for g, (obj, x0, x1) in enumerate(self.triples):
            if point.accepts_term(1 << g):
                found[self.category.objects[obj]].add(
                    (self.source.values[obj][x0], self.target.values[obj][x1])
                )
        return found

    def transformation_point(self, components: Components) -> LocalePoint:
        """
        The point accepting (X, ⟨x0|x1⟩) exactly when the component at X sends x0 to x1.
        """
        accepted = 0
        for g, (obj, x0, x1) in enumerate(self.triples):
            if components[obj][x0] == x1:
                accepted |= 1 << g
        return LocalePoint(self.site, accepted)

    def points(self, settings: EngineSettings = DEFAULT_SETTINGS) -> list[LocalePoint]:
        return enumerate_points(self.site, settings)


def nat_locale(kind: Kind, source: SetFunctor, target: SetFunctor) -> NatLocale:
    """
    >>> c = FiniteCategory.from_preorder(["a"], [(0, 0)])
    >>> f = SetFunctor(c, (("0", "1"),), ((0, 1),))
    >>> len(nat_locale(Kind.BIJECTIONS, f, f).points())
    2
    """
    kind = Kind(kind)
    if source.category != target.category:
        raise InvalidFunctor("The functors live on different categories.")
    category = source.category
    names: list[str] = []
    covers: list[Cover] = []
    offsets = []
    for obj, label in enumerate(category.objects):
        offset = len(names)
        offsets.append(offset)
        ws = wraith_site(kind, source.values[obj], target.values[obj])
        names += [f"{label}:{n}" for n in ws.site.base.elements]
        covers += [
            Cover(c.target << offset, tuple(m << offset for m in c.family))
            for c in ws.site.covers
        ]
    pairs = []
    for f, arrow in enumerate(category.arrows):
        s, t = arrow.source, arrow.target
        for x0, x1 in product(range(source.size(s)), range(target.size(s))):
            low = offsets[s] + x0 * target.size(s) + x1
            high = (
                offsets[t]
                + source.maps[f][x0] * target.size(t)
                + target.maps[f][x1]
            )
            pairs.append((low, high))
    base = Preorder.generated(names, pairs)
    site = Site(base, tuple(covers), f"{kind.value}-nat")
    logger.debug("%s: %d generators, %d covers.", site.name, len(names), len(covers))
    return NatLocale(kind, source, target, site, tuple(offsets))


def point_counts(
    locale: NatLocale, settings: EngineSettings = DEFAULT_SETTINGS
) -> tuple[int, Optional[int]]:
    """
    Points of the locale, next to the count of natural transformations or
    isomorphisms found directly.
    """
    points = len(locale.points(settings))
    if locale.kind == Kind.FUNCTIONS:
        return points, len(natural_transformations(locale.source, locale.target))
    if locale.kind == Kind.BIJECTIONS:
        return points, len(natural_isomorphisms(locale.source, locale.target))
    return points, None


"""
Yoneda
"""


def _morphism_verdict(
    source: Site, target: Site, assignment: Sequence[DNF], settings: EngineSettings
) -> Verdict:
    try:
        return check_frame_morphism(source, target, assignment, settings)
    except CapacityError as e:
        return Undecided(str(e))


def _round_trip(
    first: FrameMorphism, second: FrameMorphism, settings: EngineSettings
) -> Verdict:
    """
    `first` then `second` is the identity, generator by generator.
    """
    composite = first.then(second)
    site = first.source
    return first_failure(
        _named(
            decide_equal(site, dnf, ((1 << g),), settings),
            f"differs from the identity at {site.base.elements[g]}",
        )
        for g, dnf in enumerate(composite.assignment)
    )


def _named(verdict: Verdict, message: str) -> Verdict:
    if verdict.status == FAIL:
        return Fails(message, getattr(verdict, "witness", None))
    return verdict


def _add_inverse_pair(
    report: Report,
    locale: Site,
    other: Site,
    phi_assignment: Sequence[DNF],
    lam_assignment: Sequence[DNF],
    settings: EngineSettings,
) -> None:
    report.add(
        "φ is a frame map",
        _morphism_verdict(locale, other, phi_assignment, settings),
    )
    report.add(
        "λ is a frame map",
        _morphism_verdict(other, locale, lam_assignment, settings),
    )
    phi = FrameMorphism(locale, other, tuple(phi_assignment))
    lam = FrameMorphism(other, locale, tuple(lam_assignment))
    report.add("λ∘φ = id", _round_trip(phi, lam, settings))
    report.add("φ∘λ = id", _round_trip(lam, phi, settings))


def yoneda_verify(
    functor: SetFunctor, obj: int, settings: EngineSettings = DEFAULT_SETTINGS
) -> Report:
    """
    lFunc([A, −], F) is the discrete locale on FA.

    φ sends (X, ⟨x|y⟩) to {a ∈ FA : F(x)(a) = y} and λ sends {a} to (A, ⟨id_A|a⟩).
    """
    category = functor.category
    hom_functor = representable(category, obj)
    locale = nat_locale(Kind.FUNCTIONS, hom_functor, functor)
    label = category.objects[obj]
    report = Report(
        f"Yoneda for [{label},−]",
        settings.engine_label(locale.site.generator_count),
    )
    fibre = discrete_site(functor.values[obj])
    phi_assignment = []
    for target, u, y in locale.triples:
        arrow = category.hom(obj, target)[u]
        phi_assignment.append(
            tuple(1 << a for a in range(functor.size(obj)) if functor.maps[arrow][a] == y)
        )
    identity_index = category.hom(obj, obj).index(category.identities[obj])
    lam_assignment = [
        ((locale.term(obj, identity_index, a)),) for a in range(functor.size(obj))
    ]
    _add_inverse_pair(
        report, locale.site, fibre, phi_assignment, lam_assignment, settings
    )
    try:
        points = len(locale.points(settings))
        report.add(
            "points",
            holds_if(
                points == functor.size(obj),
                f"{points} points but F{label} has {functor.size(obj)} elements",
            ),
        )
    except CapacityError as e:
        report.note(f"points not enumerated: {e}")
    report.data["generators"] = locale.site.generator_count
    return report


def yoneda_automorphisms(
    category: FiniteCategory,
    obj: int,
    other: Optional[int] = None,
    settings: EngineSettings = DEFAULT_SETTINGS,
) -> Report:
    """
    lBij([A, −], [B, −]) is the discrete locale on the isomorphisms B → A; with B = A
    this is Aut(A)^op. Every non-invertible a: B → A forces (A, ⟨id_A|a⟩) to zero.
    """
    other = obj if other is None else other
    from_a = representable(category, obj)
    from_b = representable(category, other)
    locale = nat_locale(Kind.BIJECTIONS, from_a, from_b)
    a_name, b_name = category.objects[obj], category.objects[other]
    report = Report(
        f"Yoneda for lBij([{a_name},−], [{b_name},−])",
        settings.engine_label(locale.site.generator_count),
    )
    arrows_ba = category.hom(other, obj)
    isos = [a for a in arrows_ba if category.is_iso(a)]
    report.data["isomorphisms"] = [category.arrows[a].name for a in isos]
    discrete = discrete_site([category.arrows[a].name for a in isos])
    identity_index = category.hom(obj, obj).index(category.identities[obj])

    report.add(
        "non-isomorphisms are zero",
        first_failure(
            _named(
                decide_zero(
                    locale.site,
                    locale.term(obj, identity_index, arrows_ba.index(a)),
                    settings,
                ),
                f"(A, ⟨id|{category.arrows[a].name}⟩) is not zero",
            )
            for a in arrows_ba
            if a not in isos
        ),
    )
    phi_assignment = []
    for target, u, v in locale.triples:
        arrow_u = category.hom(obj, target)[u]
        arrow_v = category.hom(other, target)[v]
        phi_assignment.append(
            tuple(
                1 << i
                for i, a in enumerate(isos)
                if category.composition[arrow_u][a] == arrow_v
            )
        )
    lam_assignment = [
        (locale.term(obj, identity_index, arrows_ba.index(a)),) for a in isos
    ]
    _add_inverse_pair(
        report, locale.site, discrete, phi_assignment, lam_assignment, settings
    )
    try:
        points = locale.points(settings)
    except CapacityError as e:
        report.note(f"points not enumerated: {e}")
        return report
    report.add(
        "points",
        holds_if(
            len(points) == len(isos),
            f"{len(points)} points but {len(isos)} isomorphisms {b_name} → {a_name}",
        ),
    )
    if other == obj:
        report.note("points compose in the opposite order to Aut(A)")

        def precompose(a: int) -> list[list[int]]:
            return [
                [
                    category.hom(obj, x).index(category.composition[u][a])
                    for u in category.hom(obj, x)
                ]
                for x in range(len(category.objects))
            ]

        expected = {locale.transformation_point(precompose(a)).generators for a in isos}
        report.add(
            "points are precompositions",
            holds_if(
                {p.generators for p in points} == expected,
                "the points are not the precompositions with automorphisms",
            ),
        )

        def composites() -> Iterator[Verdict]:
            for a, b in product(isos, repeat=2):
                first, second = precompose(a), precompose(b)
                composed = [
                    [second[x][first[x][u]] for u in range(len(first[x]))]
                    for x in range(len(first))
                ]
                yield holds_if(
                    composed == precompose(category.composition[a][b]),
                    f"σ_{category.arrows[b].name} ∘ σ_{category.arrows[a].name} is not "
                    f"σ of {category.arrows[a].name} ∘ {category.arrows[b].name}",
                )

        report.add("opposite composition", first_failure(composites()))
    return report


"""
The localic automorphism group of a functor
"""


@dataclass(frozen=True)
class AutomorphismLocale:
    """
    lAut(F) with its structure maps m*, e* and ι*, each given on generators through
    the Wraith structure maps of the values.
    """

    locale: NatLocale
    multiplication: FrameMorphism
    unit: FrameMorphism
    inverse: FrameMorphism

    @property
    def site(self) -> Site:
        return self.locale.site

    def verify_laws(self, settings: EngineSettings = DEFAULT_SETTINGS) -> Report:
        site = self.site
        names = site.base.elements
        report = Report(
            f"lAut of a functor on {len(self.locale.category.objects)} objects",
            settings.engine_label(site.generator_count),
        )
        for label, morphism in (
            ("m*", self.multiplication),
            ("e*", self.unit),
            ("ι*", self.inverse),
        ):
            report.add(
                "frame map",
                label,
                _morphism_verdict(
                    morphism.source, morphism.target, morphism.assignment, settings
                ),
            )
        m = self.multiplication
        identity = identity_morphism(site)
        left = m.then(tensor_morphisms(m, identity))
        right = m.then(tensor_morphisms(identity, m))
        triple = left.target
        for name, a, b in zip(names, left.assignment, right.assignment):
            report.add("coassociativity", name, decide_equal(triple, a, b, settings))
        counit_left = m.then(tensor_morphisms(self.unit, identity))
        counit_right = m.then(tensor_morphisms(identity, self.unit))
        same = self.unit.then(unit_morphism(site))
        inverse_left = m.then(copair(self.inverse, identity))
        inverse_right = m.then(copair(identity, self.inverse))
        for g, name in enumerate(names):
            here = ((1 << g),)
            report.add(
                "counit", "left", name,
                decide_equal(site, counit_left.assignment[g], here, settings),
            )
            report.add(
                "counit", "right", name,
                decide_equal(site, counit_right.assignment[g], here, settings),
            )
            report.add(
                "inverse", "left", name,
                decide_equal(
                    site, inverse_left.assignment[g], same.assignment[g], settings
                ),
            )
            report.add(
                "inverse", "right", name,
                decide_equal(
                    site, inverse_right.assignment[g], same.assignment[g], settings
                ),
            )
        return report


def laut_f(functor: SetFunctor) -> AutomorphismLocale:
    locale = nat_locale(Kind.BIJECTIONS, functor, functor)
    site = locale.site
    shift = site.generator_count
    multiplication = []
    unit = []
    inverse = []
    for obj, x, y in locale.triples:
        multiplication.append(
            tuple(
                locale.term(obj, x, z) | locale.term(obj, z, y) << shift
                for z in range(functor.size(obj))
            )
        )
        unit.append((0,) if x == y else BOTTOM)
        inverse.append((locale.term(obj, y, x),))
    return AutomorphismLocale(
        locale,
        FrameMorphism(site, tensor(site, site), tuple(multiplication)),
        FrameMorphism(site, terminal_site(), tuple(unit)),
        FrameMorphism(site, site, tuple(inverse)),
    )


def mu_action(group: AutomorphismLocale, obj: int) -> FrameMorphism:
    """
    μ*⟨x0|x1⟩ = (X, ⟨x0|x1⟩), from lAut(FX) into lAut(F).
    """
    locale = group.locale
    carrier = automorphism_site(locale.source.values[obj])
    assignment = tuple(
        (locale.term(obj, x0, x1),)
        for x0 in range(locale.source.size(obj))
        for x1 in range(locale.source.size(obj))
    )
    return FrameMorphism(carrier.site, locale.site, assignment)


def check_action_morphisms(
    group: AutomorphismLocale,
    functor: Optional[SetFunctor] = None,
    settings: EngineSettings = DEFAULT_SETTINGS,
) -> Report:
    """
    Every arrow f: X → Y is a morphism of actions: μ*⟨x|y⟩ ≤ μ*⟨F(f)x|F(f)y⟩.

    `functor` may replace the arrow maps the locale was built from, with the same
    values, to test data against the locale.
    """
    locale = group.locale
    functor = functor or locale.source
    category = locale.category
    report = Report(
        "arrows are morphisms of actions",
        settings.engine_label(locale.site.generator_count),
    )
    for obj in range(len(category.objects)):
        action = mu_action(group, obj)
        report.add(
            "μ* is a frame map",
            category.objects[obj],
            _morphism_verdict(action.source, action.target, action.assignment, settings),
        )
    for f, arrow in enumerate(category.arrows):
        s, t = arrow.source, arrow.target
        size = functor.size(s)
        maps = functor.maps[f]
        report.add(
            "morphism of actions",
            arrow.name,
            first_failure(
                _named(
                    decide_leq(
                        locale.site,
                        (locale.term(s, x, y),),
                        (locale.term(t, maps[x], maps[y]),),
                        settings,
                    ),
                    f"{arrow.name} is not a morphism of actions at "
                    f"⟨{functor.values[s][x]}|{functor.values[s][y]}⟩",
                )
                for x in range(size)
                for y in range(size)
            ),
        )
    return report


"""
Transitivity and lifting
"""


def _atomic_precondition(site: SiteCategory, report: Report) -> bool:
    atomic = verify_atomic_site(site)
    if atomic:
        return True
    report.add(
        "precondition",
        Fails(
            "the site is not atomic: "
            + "; ".join(f"{k}: {v}" for k, v in atomic.failures().items())
        ),
    )
    return False


def verify_transitivity(
    site: SiteCategory, settings: EngineSettings = DEFAULT_SETTINGS
) -> Report:
    """
    Every generator (X, ⟨x0|x1⟩) of lAut(F) is non-zero: lAut(F) acts transitively on
    each FX.
    """
    report = Report(f"transitivity on {site.name}")
    if not _atomic_precondition(site, report):
        return report
    locale = nat_locale(Kind.BIJECTIONS, site.functor, site.functor)
    report.engine = settings.engine_label(locale.site.generator_count)
    verdicts = {}
    for g, (obj, x0, x1) in enumerate(locale.triples):
        verdict = decide_zero(locale.site, 1 << g, settings).negate(
            f"{locale.name(g)} is zero"
        )
        verdicts[g] = verdict
        report.add("non-zero", locale.name(g), verdict)
    report.data["generators"] = locale.site.generator_count
    report.data["undecided"] = [
        locale.name(g) for g, v in verdicts.items() if v.status == UNDECIDED
    ]
    if site.gsets:
        report.add(
            "agrees with the group action",
            first_failure(
                holds_if(
                    bool(v) == bool(site.gsets[obj].transporter(x0, x1)),
                    f"{locale.name(g)} disagrees with the group action",
                    [locale.name(g)],
                )
                for g, v in verdicts.items()
                if v.status != UNDECIDED
                for obj, x0, x1 in [locale.triples[g]]
            ),
        )
    return report


def verify_lifting(
    site: SiteCategory, settings: EngineSettings = DEFAULT_SETTINGS
) -> Report:
    """
    (X, ⟨x0|x1⟩) ≤ (Y, ⟨y0|y1⟩) in the frame exactly when an arrow f: X → Y carries x0
    to y0 and x1 to y1; and lFix(x) ≤ lFix(y) exactly when a unique arrow carries x to y.
    """
    report = Report(f"lifting on {site.name}")
    if not _atomic_precondition(site, report):
        return report
    locale = nat_locale(Kind.BIJECTIONS, site.functor, site.functor)
    report.engine = settings.engine_label(locale.site.generator_count)
    maps = site.functor.maps
    category = site.category
    undecided = []

    def rule(g: int) -> Iterator[Verdict]:
        s, x0, x1 = locale.triples[g]
        for h, (t, y0, y1) in enumerate(locale.triples):
            below = decide_leq(locale.site, (1 << g,), (1 << h,), settings)
            if below.status == UNDECIDED:
                undecided.append(f"{locale.name(g)} ≤ {locale.name(h)}")
                yield below
                continue
            lifted = any(
                maps[f][x0] == y0 and maps[f][x1] == y1 for f in category.hom(s, t)
            )
            yield holds_if(
                bool(below) == lifted,
                f"{locale.name(g)} ≤ {locale.name(h)} is {bool(below)} but an arrow "
                f"{'exists' if lifted else 'does not exist'}",
                [locale.name(g), locale.name(h)],
            )

    for g in range(len(locale.triples)):
        report.add("rule", locale.name(g), first_failure(rule(g)))

    def uniqueness(obj: int, x: int) -> Iterator[Verdict]:
        fix = locale.term(obj, x, x)
        for t, y in site.functor.elements:
            below = decide_leq(locale.site, (fix,), (locale.term(t, y, y),), settings)
            if below.status == UNDECIDED:
                yield below
                continue
            count = len(site.lifts(obj, x, t, y))
            yield holds_if(
                bool(below) == (count == 1),
                f"lFix({site.functor.values[obj][x]}) ≤ lFix({site.functor.values[t][y]}) "
                f"is {bool(below)} with {count} arrows",
            )

    for obj, x in site.functor.elements:
        report.add(
            "unique lifting",
            f"({site.functor.values[obj][x]},{site.objects[obj]})",
            first_failure(uniqueness(obj, x)),
        )
    report.data["generators"] = locale.site.generator_count
    report.data["undecided"] = undecided
    return report


"""
Transition morphisms
"""


def aut_transition(
    functor: CategoryFunctor,
    source: SetFunctor,
    target: SetFunctor,
    theta: Optional[Components] = None,
    settings: EngineSettings = DEFAULT_SETTINGS,
) -> FrameMorphism:
    """
    The frame map lAut(F) → lAut(G) of a functor T with an isomorphism θ: F ⇒ GT,
    sending (X, ⟨x0|x1⟩) to (TX, ⟨θX(x0)|θX(x1)⟩). θ defaults to the identity when
    F = GT.
    """
    pulled = target.after(functor)
    if theta is None:
        if pulled.values != source.values:
            raise InvalidFunctor("F ≠ GT, so θ must be given.")
        theta = [list(range(source.size(x))) for x in range(len(source.values))]
    if len(theta) != len(source.values):
        raise InvalidFunctor("Need one component of θ per object.", ("theta",))
    for x, component in enumerate(theta):
        if len(component) != source.size(x) or sorted(component) != list(
            range(pulled.size(x))
        ):
            raise InvalidFunctor(
                f"θ at {source.category.objects[x]} is not a bijection.", ("theta", str(x))
            )
    verdict = naturality(source, pulled, theta)
    if not verdict:
        raise InvalidFunctor(f"θ is {verdict}.", ("theta",))
    from_locale = nat_locale(Kind.BIJECTIONS, source, source)
    to_locale = nat_locale(Kind.BIJECTIONS, target, target)
    assignment = [
        (to_locale.term(functor.object_map[obj], theta[obj][x0], theta[obj][x1]),)
        for obj, x0, x1 in from_locale.triples
    ]
    return frame_morphism(from_locale.site, to_locale.site, assignment, settings)


def verify_transition_triangle(
    first: CategoryFunctor,
    second: CategoryFunctor,
    functor: SetFunctor,
    settings: EngineSettings = DEFAULT_SETTINGS,
) -> Report:
    """
    For R: A → B, T: B → C and G on C, the transition of T ∘ R is the transition
    of R followed by that of T. Compared on `settings.samples` generators of
    lAut(GTR) drawn with `settings.seed`.
    """
    middle = functor.after(second)
    bottom = middle.after(first)
    composite = aut_transition(first, bottom, middle, settings=settings).then(
        aut_transition(second, middle, functor, settings=settings)
    )
    direct = aut_transition(first.then(second), bottom, functor, settings=settings)
    locale = nat_locale(Kind.BIJECTIONS, bottom, bottom)
    report = Report(
        f"transition triangle over {first.source.name or 'A'}",
        settings.engine_label(direct.target.generator_count),
    )
    generators = range(len(locale.triples))
    picked = random.Random(settings.seed).sample(
        generators, min(settings.samples, len(generators))
    )
    for g in sorted(picked):
        report.add(
            "composite",
            locale.name(g),
            decide_equal(
                direct.target, composite.assignment[g], direct.assignment[g], settings
            ),
        )
    report.data["generators"] = len(generators)
    report.data["sampled"] = len(picked)
    return report


def same_morphism(
    a: FrameMorphism, b: FrameMorphism, settings: EngineSettings = DEFAULT_SETTINGS
) -> Verdict:
    if a.source != b.source or a.target != b.target:
        return Fails("the morphisms have different ends")
    return first_failure(
        decide_equal(a.target, x, y, settings) for x, y in zip(a.assignment, b.assignment)
    )


def pull_point(morphism: FrameMorphism, point: LocalePoint) -> LocalePoint:
    """
    The point of the source locale obtained by composing with the frame map.
    """
    accepted = 0
    for g, dnf in enumerate(morphism.assignment):
        if point.accepts_dnf(dnf):
            accepted |= 1 << g
    return LocalePoint(morphism.source, accepted)


def inclusion(small: SiteCategory, big: SiteCategory) -> CategoryFunctor:
    """
    The inclusion of a full subsite, matching objects and arrows by name.
    """
    arrows = {a.name: f for f, a in enumerate(big.category.arrows)}
    return CategoryFunctor(
        small.category,
        big.category,
        tuple(big.object_named(n) for n in small.objects),
        tuple(arrows[a.name] for a in small.category.arrows),
    )


def _fibre_automorphism(
    site: SiteCategory, galois: GSet, base: int, image: int
) -> list[list[int]]:
    """
    The automorphism of the fibre functor on C_A sending the point `base` of A to
    `image`: at X it sends u(base) to u(image) for every u: A → X.
    """
    components = []
    for gset in site.gsets:
        component = [0] * len(gset)
        for u in hom_gsets(galois, gset):
            component[u(base)] = u(image)
        components.append(component)
    return components


def verify_galois_transition(
    arrow: GSetMorphism, settings: EngineSettings = DEFAULT_SETTINGS
) -> Report:
    """
    For an arrow f: B → A of Galois objects, φ = (a*)^{-1} ∘ F(f) ∘ b* is a surjective
    homomorphism Aut(B) → Aut(A), and it is the map on points of the transition
    lAut(F on C_B) → lAut(F on C_A) induced by C_A ⊆ C_B.
    """
    big, small = arrow.source, arrow.target
    big_cert = require_galois(big)
    small_cert = require_galois(small)
    report = Report(
        f"transition for {big.name} → {small.name}", settings.engine_label(0)
    )
    base = arrow(0)
    by_image = {tau[base]: i for i, tau in enumerate(small_cert.automorphisms)}
    phi = [by_image[arrow(sigma[0])] for sigma in big_cert.automorphisms]
    big_group, small_group = big_cert.aut_group, small_cert.aut_group
    report.add(
        "φ is a homomorphism",
        first_failure(
            holds_if(
                phi[big_group.multiply(s, t)] == small_group.multiply(phi[s], phi[t]),
                f"φ fails on ({big_group.labels[s]}, {big_group.labels[t]})",
            )
            for s, t in product(big_group.elements, repeat=2)
        ),
    )
    report.add(
        "φ is surjective",
        holds_if(len(set(phi)) == len(small_group), "φ misses an automorphism"),
    )
    c_big = c_a_subcategory(big, settings)
    c_small = c_a_subcategory(small, settings)
    functor = inclusion(c_small, c_big)
    morphism = aut_transition(functor, c_small.functor, c_big.functor, settings=settings)
    report.engine = settings.engine_label(morphism.target.generator_count)
    big_locale = nat_locale(Kind.BIJECTIONS, c_big.functor, c_big.functor)
    small_locale = nat_locale(Kind.BIJECTIONS, c_small.functor, c_small.functor)
    images = set()

    def points() -> Iterator[Verdict]:
        for i, sigma in enumerate(big_cert.automorphisms):
            point = big_locale.transformation_point(
                _fibre_automorphism(c_big, big, 0, sigma[0])
            )
            pulled = pull_point(morphism, point)
            images.add(pulled.generators)
            tau = small_cert.automorphisms[phi[i]]
            expected = small_locale.transformation_point(
                _fibre_automorphism(c_small, small, base, tau[base])
            )
            yield holds_if(
                pulled.generators == expected.generators,
                f"the transition disagrees with φ at {big_group.labels[i]}",
                [big_group.labels[i]],
            )

    report.add("points follow φ", first_failure(points()))
    report.add(
        "surjective on points",
        holds_if(len(images) == len(small_cert.automorphisms), "some point is missed"),
    )
    report.data["φ"] = {
        big_group.labels[i]: small_group.labels[phi[i]] for i in big_group.elements
    }
    return report


"""
Filtered colimits of inf-lattices
"""


def colimit_inflattices(
    stages: Sequence[SiteCategory], settings: EngineSettings = DEFAULT_SETTINGS
) -> Report:
    """
    For a chain of full subsites C_1 ⊆ C_2 ⊆ … ⊆ C_n, the generators of lAut over the
    union come from the stages, each stage's free inf-lattice embeds in the union's,
    and the covers of the union are the images of the stage covers.
    """
    report = Report("colimit of inf-lattices")
    if not stages:
        return report
    locales = [nat_locale(Kind.BIJECTIONS, s.functor, s.functor) for s in stages]
    union = locales[-1]
    union_index = {n: g for g, n in enumerate(union.site.base.elements)}
    union_covers = {
        (c.target, c.family) for c in union.site.covers
    }
    images = set()
    for number, (stage, locale) in enumerate(zip(stages, locales), start=1):
        names = locale.site.base.elements
        missing = [n for n in names if n not in union_index]
        if missing:
            report.add(
                f"stage {number}",
                "generators",
                Fails(f"{missing[0]} is not in the union"),
            )
            continue
        embed = [union_index[n] for n in names]

        def move(mask: Mask) -> Mask:
            moved = 0
            for g, target in enumerate(embed):
                if mask >> g & 1:
                    moved |= 1 << target
            return moved

        report.add(
            f"stage {number}",
            "order embedding",
            first_failure(
                holds_if(
                    locale.site.base.le(g, h) == union.site.base.le(embed[g], embed[h]),
                    f"{names[g]} ≤ {names[h]} changes in the union",
                )
                for g in range(len(names))
                for h in range(len(names))
            ),
        )
        try:
            lattice = free_inf_lattice(locale.site.base, settings.max_generators)
            big = free_inf_lattice(union.site.base, settings.max_generators)
        except CapacityError as e:
            report.note(f"stage {number} lattices not compared: {e}")
        else:
            classes = [big.classify(move(rep)) for rep in lattice.representatives]
            report.add(
                f"stage {number}",
                "lattice embedding",
                holds_if(
                    len(set(classes)) == len(classes)
                    and all(
                        lattice.leq(i, j) == big.leq(classes[i], classes[j])
                        for i in range(len(classes))
                        for j in range(len(classes))
                    ),
                    "the stage lattice does not embed in the union's",
                ),
            )
        moved_covers = {
            (move(c.target), tuple(move(m) for m in c.family))
            for c in locale.site.covers
        }
        images |= moved_covers
        report.add(
            f"stage {number}",
            "covers",
            holds_if(
                moved_covers <= union_covers,
                "a stage cover is not a cover of the union",
            ),
        )
    report.add(
        "union covers come from the stages",
        holds_if(union_covers <= images, "a cover of the union comes from no stage"),
    )
    report.data["generators"] = [loc.site.generator_count for loc in locales]
    return report
