"""
Finite G-sets and their equivariant maps.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from dataclasses import field
from functools import cached_property
from itertools import product
from typing import Iterable
from typing import Iterator
from typing import Optional
from typing import Sequence

from localic.exceptions import InvalidAction
from localic.groups import FiniteGroup
from localic.groups import GroupHom
from localic.groups import Subgroup
from localic.verdicts import Verdict
from localic.verdicts import first_failure
from localic.verdicts import holds_if

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GSet:
    """
    `action[g][x]` is `g·x`.

    >>> from localic.groups import symmetric
    >>> x = coset_space(symmetric(3), symmetric(3).generate([1]))
    >>> len(x), x.is_transitive
    (3, True)
    """

    group: FiniteGroup
    points: tuple[str, ...]
    action: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        g = self.group
        n = len(self.points)
        if len(set(self.points)) != n:
            raise InvalidAction("Point names must be distinct.", ("points",))
        if len(self.action) != len(g):
            raise InvalidAction(
                f"Need one row per element of {g.name}, got {len(self.action)}.",
                ("action",),
            )
        for i, row in enumerate(self.action):
            if sorted(row) != list(range(n)):
                raise InvalidAction(
                    f"{g.labels[i]} does not permute the points.", ("action", str(i))
                )
        if any(self.action[g.identity][x] != x for x in range(n)):
            raise InvalidAction("The identity must act trivially.", ("action",))
        for a, b in product(g.elements, repeat=2):
            ab = self.action[g.table[a][b]]
            for x in range(n):
                if ab[x] != self.action[a][self.action[b][x]]:
                    raise InvalidAction(
                        f"(g·h)·x ≠ g·(h·x) at g={g.labels[a]}, h={g.labels[b]}, "
                        f"x={self.points[x]}.",
                        ("action",),
                    )

    def __len__(self) -> int:
        return len(self.points)

    def act(self, g: int, x: int) -> int:
        return self.action[g][x]

    def transporter(self, x: int, y: int) -> Subgroup:
        """
        `{g : g·x = y}`, the value of the action's frame map on `⟨x|y⟩`.
        """
        return frozenset(g for g in self.group.elements if self.action[g][x] == y)

    def stabilizer(self, x: int) -> Subgroup:
        return self.transporter(x, x)

    def orbit(self, x: int) -> list[int]:
        return sorted({row[x] for row in self.action})

    @cached_property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        """
        >>> from localic.groups import cyclic
        >>> trivial(cyclic(2), ["a", "b"]).orbits
        ((0,), (1,))
        """
        seen: set[int] = set()
        found = []
        for x in range(len(self)):
            if x not in seen:
                orbit = tuple(self.orbit(x))
                seen.update(orbit)
                found.append(orbit)
        return tuple(found)

    @property
    def is_transitive(self) -> bool:
        """
        Non-empty with a single orbit.
        """
        return len(self.orbits) == 1

    def fixed_points(self, subgroup: Iterable[int]) -> list[int]:
        subgroup = list(subgroup)
        return [
            x for x in range(len(self)) if all(self.action[h][x] == x for h in subgroup)
        ]

    def acts_trivially(self, subgroup: Iterable[int]) -> bool:
        return len(self.fixed_points(subgroup)) == len(self)

    @cached_property
    def kernel(self) -> Subgroup:
        return frozenset(
            g for g in self.group.elements if all(
                self.action[g][x] == x for x in range(len(self))
            )
        )

    def component(self, x: int) -> GSet:
        return self.restrict_to(self.orbit(x))

    def restrict_to(self, points: Sequence[int]) -> GSet:
        """
        The sub-G-set on a union of orbits.
        """
        index = {x: i for i, x in enumerate(points)}
        try:
            action = tuple(tuple(index[row[x]] for x in points) for row in self.action)
        except KeyError:
            raise InvalidAction("Not a union of orbits.", ("points",))
        return GSet(self.group, tuple(self.points[x] for x in points), action, self.name)

    def product(self, other: GSet) -> GSet:
        """
        The diagonal action on pairs, first coordinate varying slowest.
        """
        if other.group != self.group:
            raise InvalidAction("G-sets over different groups.")
        pairs = [(x, y) for x in range(len(self)) for y in range(len(other))]
        index = {p: i for i, p in enumerate(pairs)}
        action = tuple(
            tuple(index[a[x], b[y]] for x, y in pairs)
            for a, b in zip(self.action, other.action)
        )
        points = tuple(f"({self.points[x]},{other.points[y]})" for x, y in pairs)
        return GSet(self.group, points, action, f"{self.name}×{other.name}")

    def isomorphism(self, other: GSet) -> Optional[GSetMorphism]:
        if other.group != self.group or len(other) != len(self):
            return None
        return next((f for f in hom_gsets(self, other) if f.is_bijective), None)

    def is_isomorphic(self, other: GSet) -> bool:
        return self.isomorphism(other) is not None


"""
Construction
"""


def coset_space(group: FiniteGroup, subgroup: Subgroup, name: str = "") -> GSet:
    """
    The left cosets of `subgroup`, the coset of the identity first.
    """
    if not group.is_subgroup(subgroup):
        raise InvalidAction(f"{group.describe(subgroup)} is not a subgroup.")
    cosets = sorted(group.left_cosets(subgroup), key=lambda c: group.identity not in c)
    which = {g: i for i, c in enumerate(cosets) for g in c}
    reps = [group.identity if group.identity in c else min(c) for c in cosets]
    action = tuple(
        tuple(which[group.table[g][r]] for r in reps) for g in group.elements
    )
    points = tuple(f"{group.labels[r]}H" for r in reps)
    return GSet(group, points, action, name or f"G/{group.describe(subgroup)}")


def regular(group: FiniteGroup) -> GSet:
    action = tuple(tuple(row) for row in group.table)
    return GSet(group, group.labels, action, "G/e")


def trivial(group: FiniteGroup, points: Sequence[str] = ("*",)) -> GSet:
    row = tuple(range(len(points)))
    return GSet(group, tuple(points), tuple(row for _ in group.elements), "1")


def natural(group: FiniteGroup) -> GSet:
    """
    A permutation group acting on its points 1..n.
    """
    if not group.permutations:
        raise InvalidAction(f"{group.name} is not a permutation group.")
    degree = len(group.permutations[0])
    return GSet(
        group,
        tuple(str(i + 1) for i in range(degree)),
        tuple(tuple(p) for p in group.permutations),
        "natural",
    )


def restrict_along(hom: GroupHom, gset: GSet) -> GSet:
    """
    Pull an action back along a homomorphism: `g·x = hom(g)·x`.
    """
    if gset.group != hom.target:
        raise InvalidAction("The G-set is not over the target of the homomorphism.")
    action = tuple(gset.action[hom(g)] for g in hom.source.elements)
    return GSet(hom.source, gset.points, action, gset.name)


"""
Morphisms
"""


def equivariance(source: GSet, target: GSet, mapping: Sequence[int]) -> Verdict:
    """
    `g·f(x) = f(g·x)` for every g and x.
    """
    g = source.group
    return first_failure(
        holds_if(
            target.action[a][mapping[x]] == mapping[source.action[a][x]],
            f"not equivariant at g={g.labels[a]}, x={source.points[x]}",
            [g.labels[a], source.points[x]],
        )
        for a in g.elements
        for x in range(len(source))
    )


def transporter_condition(source: GSet, target: GSet, mapping: Sequence[int]) -> Verdict:
    """
    The same condition read off the action's frame maps: every transporter of a pair
    lies inside the transporter of its image.
    """
    return first_failure(
        holds_if(
            source.transporter(x, y) <= target.transporter(mapping[x], mapping[y]),
            f"transporter of ({source.points[x]}, {source.points[y]}) not preserved",
            [source.points[x], source.points[y]],
        )
        for x in range(len(source))
        for y in range(len(source))
    )


@dataclass(frozen=True)
class GSetMorphism:
    source: GSet
    target: GSet
    mapping: tuple[int, ...]
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.source.group != self.target.group:
            raise InvalidAction("G-sets over different groups.")
        if len(self.mapping) != len(self.source) or any(
            not 0 <= y < len(self.target) for y in self.mapping
        ):
            raise InvalidAction("The map does not go between the carriers.", ("map",))
        if self.check:
            verdict = equivariance(self.source, self.target, self.mapping)
            if not verdict:
                raise InvalidAction(str(verdict), ("map",))

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    @property
    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == len(self.target)

    @property
    def is_injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    def then(self, after: GSetMorphism) -> GSetMorphism:
        return GSetMorphism(
            self.source, after.target, tuple(after.mapping[y] for y in self.mapping), False
        )


def identity_morphism(gset: GSet) -> GSetMorphism:
    return GSetMorphism(gset, gset, tuple(range(len(gset))), False)


def _hom_choices(source: GSet, target: GSet) -> Iterator[tuple[int, ...]]:
    reps = [orbit[0] for orbit in source.orbits]
    options = [
        [y for y in range(len(target)) if source.stabilizer(x) <= target.stabilizer(y)]
        for x in reps
    ]
    for images in product(*options):
        mapping = [0] * len(source)
        for x, y in zip(reps, images):
            for g in source.group.elements:
                mapping[source.action[g][x]] = target.action[g][y]
        yield tuple(mapping)


def hom_gsets(source: GSet, target: GSet) -> list[GSetMorphism]:
    """
    Every equivariant map, in lexicographic order of the point images.

    >>> from localic.groups import cyclic
    >>> len(hom_gsets(regular(cyclic(3)), regular(cyclic(3))))
    3
    """
    if source.group != target.group:
        raise InvalidAction("G-sets over different groups.")
    found = [GSetMorphism(source, target, m, False) for m in _hom_choices(source, target)]
    return sorted(found, key=lambda f: f.mapping)


def fixed_point_count(gset: GSet, subgroup: Subgroup) -> int:
    return len(gset.fixed_points(subgroup))


def check_gset_morphism(morphism: GSetMorphism) -> Verdict:
    """
    Both characterizations of equivariance, which must agree.
    """
    direct = equivariance(morphism.source, morphism.target, morphism.mapping)
    by_transporters = transporter_condition(
        morphism.source, morphism.target, morphism.mapping
    )
    if bool(direct) != bool(by_transporters):
        return holds_if(False, "the two characterizations of equivariance disagree")
    return direct
