"""
Galois objects among G-sets: the torsor test, the Galois closure as an orbit of the
cotensor, objects split by a cover, and the discrete form of the fundamental theorem.

Automorphisms of an object compose as functions. They act on hom-sets [A, X] by
precomposition, which is a right action, so the group acting on the left is Aut(A)^op.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from dataclasses import field
from functools import cached_property
from itertools import product
from typing import Iterator
from typing import Optional
from typing import Sequence

from localic.atomic import SiteCategory
from localic.atomic import build_tbg_site
from localic.atomic import diagram_of
from localic.category import CategoryFunctor
from localic.exceptions import InvalidAction
from localic.exceptions import NotGalois
from localic.groups import FiniteGroup
from localic.groups import GroupHom
from localic.groups import from_function
from localic.groups import quotient
from localic.gsets import GSet
from localic.gsets import GSetMorphism
from localic.gsets import coset_space
from localic.gsets import hom_gsets
from localic.gsets import restrict_along
from localic.gsets import trivial
from localic.settings import DEFAULT_SETTINGS
from localic.settings import EngineSettings
from localic.verdicts import Fails
from localic.verdicts import Report
from localic.verdicts import Verdict
from localic.verdicts import first_failure
from localic.verdicts import holds_if

logger = logging.getLogger(__name__)

ACTION_CONVENTION = (
    "Aut(A) acts on [A,X] by precomposition; the group acting on the left is Aut(A)^op"
)


def automorphisms(gset: GSet) -> list[tuple[int, ...]]:
    return [f.mapping for f in hom_gsets(gset, gset) if f.is_bijective]


"""
Galois objects
"""


@dataclass(frozen=True)
class GaloisCertificate:
    """
    The evidence for or against an object being Galois.

    `torsor` is the verdict on A × Aut(A) → A × A, (a, σ) ↦ (a, σ(a)) being a bijection,
    and `base_points` the verdict on a*: Aut(A) → A, σ ↦ σ(a) being a bijection for
    every choice of a. The two must agree.
    """

    gset: GSet
    automorphisms: tuple[tuple[int, ...], ...]
    connected: Verdict
    torsor: Verdict
    base_points: Verdict

    def __bool__(self) -> bool:
        return bool(self.connected) and bool(self.torsor)

    @property
    def consistent(self) -> bool:
        return bool(self.torsor) == bool(self.base_points)

    def torsor_table(self) -> list[list[int]]:
        """
        Rows (a, σ) ↦ (a, σ(a)), as index pairs.
        """
        return [
            [a, sigma[a]]
            for a in range(len(self.gset))
            for sigma in self.automorphisms
        ]

    def describe(self) -> str:
        size = len(self.automorphisms)
        if self:
            return f"Galois, |Aut|={size}"
        reason = self.connected if not self.connected else self.torsor
        return f"not Galois, |Aut|={size}: {reason}"

    @cached_property
    def aut_group(self) -> FiniteGroup:
        """
        Aut(A) under composition, `multiply(s, t)` being s ∘ t. Elements are labelled by
        where they send the first point when that tells them apart.
        """
        autos = list(self.automorphisms)
        points = self.gset.points
        labels = [points[sigma[0]] for sigma in autos] if autos else []
        if len(set(labels)) != len(labels):
            labels = [f"σ{i}" for i in range(len(autos))]
        return from_function(
            autos,
            lambda s, t: tuple(s[x] for x in t),
            labels,
            f"Aut({self.gset.name})",
        )


def is_galois(gset: GSet) -> GaloisCertificate:
    """
    >>> from localic.groups import symmetric
    >>> s3 = symmetric(3)
    >>> is_galois(coset_space(s3, s3.generate([s3.element("(1 2)")]))).describe()
    'not Galois, |Aut|=1: |A × Aut(A)| = 3 but |A × A| = 9'
    >>> is_galois(coset_space(s3, s3.generate([s3.element("(1 2 3)")]))).describe()
    'Galois, |Aut|=2'
    """
    autos = tuple(automorphisms(gset))
    n = len(gset)
    connected = holds_if(
        gset.is_transitive, f"{gset.name or 'the object'} is not connected"
    )
    images = {(a, sigma[a]) for a in range(n) for sigma in autos}
    if len(autos) * n != n * n:
        torsor = Fails(f"|A × Aut(A)| = {len(autos) * n} but |A × A| = {n * n}")
    else:
        torsor = holds_if(
            len(images) == n * n, "(a, σ) ↦ (a, σ(a)) is not injective"
        )
    base_points = first_failure(
        holds_if(
            len({sigma[a] for sigma in autos}) == n == len(autos),
            f"a* is not a bijection at a={gset.points[a]}",
            [gset.points[a]],
        )
        for a in range(n)
    )
    if n == 0:
        base_points = Fails("the object is empty")
    return GaloisCertificate(gset, autos, connected, torsor, base_points)


def require_galois(gset: GSet) -> GaloisCertificate:
    certificate = is_galois(gset)
    if not certificate:
        raise NotGalois(f"{gset.name or 'The object'} is {certificate.describe()}.")
    return certificate


"""
Galois closure
"""


@dataclass(frozen=True)
class ClosureResult:
    """
    A Galois object `closure` with base point `base_point` and, for each point x of the
    source, a projection sending the base point to x.
    """

    source: GSet
    closure: GSet
    base_point: int
    projections: tuple[GSetMorphism, ...]
    certificate: GaloisCertificate = field(compare=False, repr=False)

    def verify(self) -> Report:
        report = Report(f"Galois closure of {self.source.name}")
        report.add(
            "closure is Galois",
            holds_if(bool(self.certificate), self.certificate.describe()),
        )
        report.add(
            "projections hit their points",
            first_failure(
                holds_if(
                    p(self.base_point) == x,
                    f"π_{self.source.points[x]} misses {self.source.points[x]}",
                    [self.source.points[x]],
                )
                for x, p in enumerate(self.projections)
            ),
        )
        report.data["size"] = len(self.closure)
        report.data["automorphisms"] = len(self.certificate.automorphisms)
        return report


def galois_closure(gset: GSet) -> ClosureResult:
    """
    The orbit of the tuple (x)_x inside the cotensor ∏_x X, without building the
    whole power.

    >>> from localic.groups import symmetric
    >>> s3 = symmetric(3)
    >>> x = coset_space(s3, s3.generate([s3.element("(1 2)")]))
    >>> len(galois_closure(x).closure)
    6
    """
    if not gset.is_transitive:
        raise InvalidAction(f"{gset.name or 'The object'} is not connected.")
    group = gset.group
    n = len(gset)
    start = tuple(range(n))
    orbit = {tuple(gset.action[g][x] for x in start) for g in group.elements}
    tuples = [start] + sorted(orbit - {start})
    index = {t: i for i, t in enumerate(tuples)}
    action = tuple(
        tuple(index[tuple(gset.action[g][x] for x in t)] for t in tuples)
        for g in group.elements
    )
    points = tuple("(" + ",".join(gset.points[x] for x in t) + ")" for t in tuples)
    closure = GSet(group, points, action, f"cl({gset.name})")
    projections = tuple(
        GSetMorphism(closure, gset, tuple(t[x] for t in tuples)) for x in range(n)
    )
    logger.debug("Galois closure of %r has %d points.", gset.name, len(closure))
    return ClosureResult(gset, closure, 0, projections, is_galois(closure))


"""
Split objects
"""


def _require_cover(cover: GSet) -> None:
    if len(cover) == 0:
        raise ValueError("The empty G-set is not a cover.")


def splitting(cover: GSet, gset: GSet) -> Verdict:
    """
    Each orbit stabilizer of the cover acts trivially on the object.
    """
    _require_cover(cover)
    return first_failure(
        holds_if(
            gset.acts_trivially(cover.stabilizer(orbit[0])),
            f"the stabilizer of {cover.points[orbit[0]]} moves points of "
            f"{gset.name or 'the object'}",
            [cover.points[orbit[0]]],
        )
        for orbit in cover.orbits
    )


def split_by(cover: GSet, gset: GSet) -> bool:
    """
    >>> from localic.groups import symmetric
    >>> s3 = symmetric(3)
    >>> u = coset_space(s3, s3.generate([s3.element("(1 2 3)")]))
    >>> split_by(u, u), split_by(u, coset_space(s3, s3.generate([1])))
    (True, False)
    """
    return bool(splitting(cover, gset))


def _isomorphic_over(
    source: GSet, target: GSet, base: Sequence[int], target_base: Sequence[int]
) -> bool:
    reps = [orbit[0] for orbit in source.orbits]
    options = [
        [
            y
            for y in range(len(target))
            if target_base[y] == base[x] and source.stabilizer(x) <= target.stabilizer(y)
        ]
        for x in reps
    ]
    for images in product(*options):
        mapping = [0] * len(source)
        for x, y in zip(reps, images):
            for g in source.group.elements:
                mapping[source.action[g][x]] = target.action[g][y]
        if len(set(mapping)) == len(target):
            return True
    return False


def split_by_definition(cover: GSet, gset: GSet) -> bool:
    """
    Search, orbit by orbit of the cover, for an isomorphism S × U_i ≅ X × U_i over U_i
    with S a constant object.
    """
    _require_cover(cover)
    constant = trivial(gset.group, gset.points)
    for orbit in cover.orbits:
        component = cover.restrict_to(orbit)
        over_x = gset.product(component)
        over_s = constant.product(component)
        base = [i % len(component) for i in range(len(over_x))]
        if len(over_x) != len(over_s) or not _isomorphic_over(over_x, over_s, base, base):
            return False
    return True


def splitting_object(cover: GSet) -> GSet:
    """
    The Galois object representing the fibre functor on the objects split by `cover`:
    G/N with N the normal closure of the cover's stabilizers.
    """
    _require_cover(cover)
    group = cover.group
    stabilizers = set().union(*(cover.stabilizer(orbit[0]) for orbit in cover.orbits))
    normal = group.normal_closure(stabilizers)
    return coset_space(group, normal)


def galois_join(a: GSet, b: GSet) -> GSet:
    """
    A Galois object splitting everything `a` or `b` splits.
    """
    return splitting_object(a.product(b))


def split_objects(cover: GSet, site: SiteCategory) -> list[int]:
    return [x for x, gset in enumerate(site.gsets) if split_by(cover, gset)]


def split_category(
    cover: GSet, settings: EngineSettings = DEFAULT_SETTINGS
) -> SiteCategory:
    """
    >>> from localic.groups import cyclic
    >>> from localic.gsets import regular
    >>> len(split_category(regular(cyclic(4))).objects)
    3
    """
    site = build_tbg_site(cover.group, settings)
    return site.restrict(split_objects(cover, site), f"Split({cover.name})")


def _equivalence_from_quotient(
    quotient_site: SiteCategory, split: SiteCategory, hom: GroupHom
) -> Optional[CategoryFunctor]:
    object_map = []
    isos = []
    for y in quotient_site.gsets:
        pulled = restrict_along(hom, y)
        x = split.object_of(pulled)
        if x is None:
            return None
        object_map.append(x)
        isos.append(pulled.isomorphism(split.gsets[x]).mapping)
    arrow_map = []
    for f, arrow in enumerate(quotient_site.category.arrows):
        mapping = quotient_site.functor.maps[f]
        s, t = arrow.source, arrow.target
        inverse = {v: k for k, v in enumerate(isos[s])}
        image = tuple(
            isos[t][mapping[inverse[p]]] for p in range(len(split.gsets[object_map[s]]))
        )
        found = split.find_arrow(object_map[s], object_map[t], image)
        if found is None:
            return None
        arrow_map.append(found)
    return CategoryFunctor(
        quotient_site.category, split.category, tuple(object_map), tuple(arrow_map)
    )


def verify_split_eq(
    cover: GSet, settings: EngineSettings = DEFAULT_SETTINGS
) -> Report:
    """
    Split(U) = Split(A) for the Galois object A representing the fibre functor on
    Split(U), and Split(A) is equivalent to the classifying site of G/N, N the kernel
    of A.
    """
    group = cover.group
    site = build_tbg_site(group, settings)
    report = Report(f"Split({cover.name or 'U'}) for {group.name}")
    split_u = split_objects(cover, site)
    report.data["split objects"] = [site.objects[x] for x in split_u]
    report.add(
        "agrees with the definition",
        first_failure(
            holds_if(
                (x in split_u) == split_by_definition(cover, gset),
                f"the two descriptions of splitting disagree on {site.objects[x]}",
                [site.objects[x]],
            )
            for x, gset in enumerate(site.gsets)
        ),
    )
    restricted = site.restrict(split_u)
    diagram = diagram_of(restricted)
    if diagram.initial is None:
        report.add(
            "representable",
            Fails("the fibre functor on Split(U) has no initial element"),
        )
        return report
    obj, _ = diagram.elements[diagram.initial]
    galois = restricted.gsets[obj]
    report.data["galois object"] = restricted.objects[obj]
    certificate = is_galois(galois)
    report.add(
        "representing object is Galois",
        holds_if(bool(certificate), certificate.describe()),
    )
    report.add(
        "matches the normal closure",
        holds_if(
            galois.is_isomorphic(splitting_object(cover)),
            "the representing object is not G/N for N the normal closure of the stabilizers",
        ),
    )
    split_a = split_objects(galois, site)
    report.add(
        "Split(U) = Split(A)",
        holds_if(
            split_a == split_u,
            f"Split(A) has {[site.objects[x] for x in split_a]}",
            [site.objects[x] for x in split_a],
        ),
    )
    projection = quotient(group, galois.kernel)
    quotient_site = build_tbg_site(projection.target, settings)
    report.data["quotient"] = projection.target.name
    split_site = site.restrict(split_a)
    functor = _equivalence_from_quotient(quotient_site, split_site, projection)
    if functor is None:
        report.add("equivalence", Fails("restriction along G → G/N leaves Split(A)"))
        return report
    report.add("equivalence", "faithful", functor.faithful())
    report.add("equivalence", "full", functor.full())
    report.add("equivalence", "essentially surjective", functor.essentially_surjective())
    return report


"""
Subsites of a Galois object
"""


def _connects(galois: GSet, gset: GSet) -> bool:
    return bool(hom_gsets(galois, gset))


def _base_point_bijective(galois: GSet, gset: GSet, base_point: int = 0) -> bool:
    images = [f(base_point) for f in hom_gsets(galois, gset)]
    return len(images) == len(set(images)) == len(gset)


def c_a_subcategory(
    galois: GSet, settings: EngineSettings = DEFAULT_SETTINGS
) -> SiteCategory:
    """
    The objects X for which a*: [A, X] → X, u ↦ u(a), is a bijection.

    >>> from localic.groups import symmetric
    >>> s3 = symmetric(3)
    >>> a = coset_space(s3, s3.generate([s3.element("(1 2 3)")]))
    >>> c_a_subcategory(a).objects
    ('1', 'G/{(), (1 2 3), (1 3 2)}')
    """
    require_galois(galois)
    site = build_tbg_site(galois.group, settings)
    kept = [x for x, gset in enumerate(site.gsets) if _base_point_bijective(galois, gset)]
    return site.restrict(kept, f"C_{galois.name}")


def c_a_report(
    galois: GSet,
    below: Optional[GSetMorphism] = None,
    settings: EngineSettings = DEFAULT_SETTINGS,
) -> Report:
    """
    The two descriptions of C_A agree, and for an arrow B → A of Galois objects
    C_A sits inside C_B.
    """
    require_galois(galois)
    site = build_tbg_site(galois.group, settings)
    report = Report(f"C_{galois.name}")
    report.add(
        "a* bijective iff [A,X] non-empty",
        first_failure(
            holds_if(
                _base_point_bijective(galois, x) == _connects(galois, x),
                f"the descriptions disagree on {site.objects[i]}",
                [site.objects[i]],
            )
            for i, x in enumerate(site.gsets)
        ),
    )
    mine = {i for i, x in enumerate(site.gsets) if _connects(galois, x)}
    report.data["objects"] = [site.objects[i] for i in sorted(mine)]
    if below is not None:
        if below.target != galois:
            raise InvalidAction("The arrow must land in the Galois object.")
        require_galois(below.source)
        theirs = {i for i, x in enumerate(site.gsets) if _connects(below.source, x)}
        report.add(
            "inclusion",
            holds_if(mine <= theirs, f"C_{galois.name} is not inside C_{below.source.name}"),
        )
    return report


"""
The fundamental theorem, discrete case
"""


@dataclass(frozen=True)
class Representation:
    """
    A representing object A with base point a, and G = Aut(A)^op acting on hom-sets.
    """

    site: SiteCategory
    obj: int
    point: int
    automorphisms: tuple[int, ...]
    group: FiniteGroup

    def hom_gset(self, target: int) -> GSet:
        """
        [A, X] with σ·u = u ∘ σ.
        """
        category = self.site.category
        homs = category.hom(self.obj, target)
        position = {u: i for i, u in enumerate(homs)}
        action = tuple(
            tuple(position[category.composition[u][sigma]] for u in homs)
            for sigma in self.automorphisms
        )
        return GSet(
            self.group,
            tuple(category.arrows[u].name for u in homs),
            action,
            f"[{self.site.objects[self.obj]},{self.site.objects[target]}]",
        )


def representation(site: SiteCategory) -> Optional[Representation]:
    diagram = diagram_of(site)
    if diagram.initial is None:
        return None
    obj, point = diagram.elements[diagram.initial]
    category = site.category
    autos = tuple(f for f in category.hom(obj, obj) if category.is_iso(f))
    position = {f: i for i, f in enumerate(autos)}
    group = from_function(
        autos,
        lambda s, t: category.composition[t][s],
        [category.arrows[f].name for f in autos],
        f"Aut({site.objects[obj]})^op",
    )
    return Representation(site, obj, point, autos, group)


def _quotient_checks(rep: Representation, target: int) -> Iterator[Verdict]:
    site = rep.site
    category = site.category
    maps = site.functor.maps
    size_a = site.size(rep.obj)
    for u in category.hom(rep.obj, target):
        name = category.arrows[u].name
        fixing = [s for s in rep.automorphisms if category.composition[u][s] == u]
        orbits = {(p, maps[s][p]) for p in range(size_a) for s in fixing}
        fibres = {
            (p, q)
            for p in range(size_a)
            for q in range(size_a)
            if maps[u][p] == maps[u][q]
        }
        yield holds_if(orbits == fibres, f"the fibres of {name} are not orbits", [name])
        for other in range(len(site.objects)):
            for v in category.hom(rep.obj, other):
                if any(category.composition[v][s] != v for s in fixing):
                    continue
                factorizations = [
                    w for w in category.hom(target, other)
                    if category.composition[w][u] == v
                ]
                yield holds_if(
                    len(factorizations) == 1,
                    f"{category.arrows[v].name} factors {len(factorizations)} times "
                    f"through {name}",
                    [category.arrows[v].name, name],
                )


def verify_fundamental_discrete(
    site: SiteCategory, settings: EngineSettings = DEFAULT_SETTINGS
) -> Report:
    """
    For a site whose functor is representable by (A, a): the hom-sets [A, X] are
    transitive Aut(A)^op-sets, each arrow out of A is the quotient of A by its
    stabilizer, the lifted functor into the classifying site of Aut(A)^op is an
    equivalence, and every arrow into A is invertible.
    """
    report = Report(f"fundamental theorem on {site.name}")
    report.note(ACTION_CONVENTION)
    rep = representation(site)
    if rep is None:
        report.add(
            "representable",
            Fails("not representable: the diagram has no initial element"),
        )
        return report
    category = site.category
    report.data["representing object"] = site.objects[rep.obj]
    report.data["group order"] = len(rep.group)
    homs = [rep.hom_gset(x) for x in range(len(site.objects))]
    report.add(
        "hom-sets are transitive",
        first_failure(
            holds_if(h.is_transitive, f"{h.name} is not transitive", [h.name])
            for h in homs
        ),
    )
    report.add(
        "arrows out of A are quotients",
        first_failure(
            v for x in range(len(site.objects)) for v in _quotient_checks(rep, x)
        ),
    )
    report.add(
        "arrows into A are isomorphisms",
        first_failure(
            holds_if(
                category.is_iso(f),
                f"{category.arrows[f].name} is not invertible",
                [category.arrows[f].name],
            )
            for x in range(len(site.objects))
            for f in category.hom(x, rep.obj)
        ),
    )
    target = build_tbg_site(rep.group, settings)
    report.data["classifying site"] = list(target.objects)
    object_map = []
    isos = []
    for h in homs:
        x = target.object_of(h)
        if x is None:
            report.add("equivalence", Fails(f"{h.name} is not transitive"))
            return report
        object_map.append(x)
        isos.append(h.isomorphism(target.gsets[x]).mapping)
    arrow_map = []
    for f, arrow in enumerate(category.arrows):
        s, t = arrow.source, arrow.target
        source_homs = category.hom(rep.obj, s)
        target_homs = category.hom(rep.obj, t)
        position = {u: i for i, u in enumerate(target_homs)}
        inverse = {v: k for k, v in enumerate(isos[s])}
        image = tuple(
            isos[t][position[category.composition[f][source_homs[inverse[p]]]]]
            for p in range(len(isos[s]))
        )
        arrow_map.append(target.find_arrow(object_map[s], object_map[t], image))
    if None in arrow_map:
        report.add("equivalence", Fails("an arrow does not lift to an equivariant map"))
        return report
    functor = CategoryFunctor(
        category, target.category, tuple(object_map), tuple(arrow_map)
    )
    report.add("equivalence", "faithful", functor.faithful())
    report.add("equivalence", "full", functor.full())
    report.add("equivalence", "essentially surjective", functor.essentially_surjective())
    report.add(
        "hom counts",
        first_failure(
            holds_if(
                len(category.hom(a, b))
                == len(target.category.hom(object_map[a], object_map[b])),
                f"hom({site.objects[a]}, {site.objects[b]}) has the wrong size",
                [site.objects[a], site.objects[b]],
            )
            for a, b in product(range(len(site.objects)), repeat=2)
        ),
    )
    return report


"""
Cofinality
"""


def minimal_galois_cover(gset: GSet) -> GSet:
    return galois_closure(gset).closure


def galois_cofinality(
    group: FiniteGroup, settings: EngineSettings = DEFAULT_SETTINGS
) -> Report:
    """
    Every (X, x) receives an arrow from some Galois (A, a), the Galois objects cover
    the whole site through their split subcategories, and any two of them are split by
    a third.
    """
    site = build_tbg_site(group, settings)
    report = Report(f"Galois cofinality for {group.name}")
    galois = [x for x, gset in enumerate(site.gsets) if is_galois(gset)]
    report.data["galois objects"] = [site.objects[x] for x in galois]
    closures = {}
    for x, gset in enumerate(site.gsets):
        result = galois_closure(gset)
        closures[site.objects[x]] = site.objects[site.object_of(result.closure)]
        report.add("closure", site.objects[x], result.verify().verdict())
    report.data["minimal galois covers"] = closures
    covered = set().union(*(split_objects(site.gsets[a], site) for a in galois))
    report.add(
        "split subcategories cover the site",
        holds_if(
            covered == set(range(len(site.objects))),
            "some object is split by no Galois object",
            [site.objects[x] for x in range(len(site.objects)) if x not in covered],
        ),
    )

    def joins() -> Iterator[Verdict]:
        for a, b in product(galois, repeat=2):
            joined = galois_join(site.gsets[a], site.gsets[b])
            yield holds_if(
                bool(is_galois(joined))
                and set(split_objects(site.gsets[a], site))
                | set(split_objects(site.gsets[b], site))
                <= set(split_objects(joined, site)),
                f"no Galois object splits both {site.objects[a]} and {site.objects[b]}",
                [site.objects[a], site.objects[b]],
            )

    report.add("filtered", first_failure(joins()))
    return report
