"""
Finite groups as Cayley tables, with the subgroup machinery the Galois layer needs.

Elements are indices into the table and `table[g][h]` is the product `g·h`. Groups built
from permutations keep their permutations so elements can be named in cycle notation.
Permutations compose as functions: `(g·h)(i) = g(h(i))`.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from dataclasses import field
from functools import cached_property
from itertools import product
from typing import Callable
from typing import Iterable
from typing import Optional
from typing import Sequence

from sympy.combinatorics import AlternatingGroup
from sympy.combinatorics import DihedralGroup
from sympy.combinatorics import Permutation
from sympy.combinatorics import PermutationGroup
from sympy.combinatorics import SymmetricGroup

from localic.exceptions import CapacityError
from localic.exceptions import InvalidGroup
from localic.exceptions import NotSurjective
from localic.settings import DEFAULT_MAX_GROUP_ORDER

logger = logging.getLogger(__name__)

Subgroup = frozenset[int]

_CYCLE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True)
class FiniteGroup:
    """
    >>> g = cyclic(4)
    >>> g.labels
    ('0', '1', '2', '3')
    >>> g.multiply(3, 2), g.inverse(1)
    (1, 3)
    """

    name: str
    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    permutations: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = len(self.table)
        if n == 0:
            raise InvalidGroup("A group needs at least one element.", ("cayley",))
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise InvalidGroup("Need one distinct label per element.", ("labels",))
        for i, row in enumerate(self.table):
            if len(row) != n:
                raise InvalidGroup("The table must be square.", ("cayley", str(i)))
            if any(not 0 <= v < n for v in row):
                raise InvalidGroup("Entry out of range.", ("cayley", str(i)))
        e = self.identity
        t = self.table
        for g in range(n):
            if t[e][g] != g or t[g][e] != g:
                raise InvalidGroup(f"{self.labels[e]} is not an identity.", ("cayley",))
            if e not in t[g]:
                raise InvalidGroup(f"{self.labels[g]} has no inverse.", ("cayley",))
        for a, b, c in product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise InvalidGroup(
                    "Not associative at "
                    f"({self.labels[a]}, {self.labels[b]}, {self.labels[c]}).",
                    ("cayley",),
                )

    def __len__(self) -> int:
        return len(self.table)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    @cached_property
    def identity(self) -> int:
        for e in self.elements:
            if all(self.table[e][g] == g for g in self.elements):
                return e
        raise InvalidGroup("No identity element.", ("cayley",))

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(row.index(e) for row in self.table)

    @cached_property
    def label_index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def multiply(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inverse(self, g: int) -> int:
        return self.inverses[g]

    def conjugate(self, h: int, by: int) -> int:
        """
        `by · h · by⁻¹`
        """
        return self.table[self.table[by][h]][self.inverses[by]]

    def element(self, text: str) -> int:
        """
        An element by label, or by cycle notation for permutation groups.

        >>> s3 = symmetric(3)
        >>> s3.labels[s3.element("(2 1)")]
        '(1 2)'
        """
        text = text.strip()
        if text in self.label_index:
            return self.label_index[text]
        if self.permutations and text.startswith("("):
            array = parse_cycles(text, len(self.permutations[0]))
            try:
                return self.permutations.index(array)
            except ValueError:
                pass
        raise InvalidGroup(f"{text!r} is not an element of {self.name}.")

    def generate(self, generators: Iterable[int]) -> Subgroup:
        """
        The subgroup generated by some elements.

        >>> sorted(cyclic(6).generate([4]))
        [0, 2, 4]
        """
        found = {self.identity}
        frontier = list(found)
        gens = list(generators)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in found:
                        found.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(found)

    @property
    def whole(self) -> Subgroup:
        return frozenset(self.elements)

    @property
    def trivial(self) -> Subgroup:
        return frozenset([self.identity])

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        subset = frozenset(subset)
        if self.identity not in subset:
            return False
        return all(self.table[a][self.inverses[b]] in subset for a in subset for b in subset)

    def conjugate_subgroup(self, subgroup: Subgroup, by: int) -> Subgroup:
        return frozenset(self.conjugate(h, by) for h in subgroup)

    def is_normal(self, subgroup: Subgroup) -> bool:
        return all(self.conjugate_subgroup(subgroup, g) == subgroup for g in self.elements)

    def normalizer(self, subgroup: Subgroup) -> Subgroup:
        return frozenset(
            g for g in self.elements if self.conjugate_subgroup(subgroup, g) == subgroup
        )

    def core(self, subgroup: Subgroup) -> Subgroup:
        """
        The largest normal subgroup inside `subgroup`.
        """
        result = frozenset(subgroup)
        for g in self.elements:
            result &= self.conjugate_subgroup(subgroup, g)
        return result

    def normal_closure(self, subgroup: Subgroup) -> Subgroup:
        return self.generate(
            {self.conjugate(h, g) for h in subgroup for g in self.elements}
        )

    def left_cosets(self, subgroup: Subgroup) -> list[Subgroup]:
        """
        Ordered by their least element.
        """
        seen: set[int] = set()
        cosets = []
        for g in self.elements:
            if g in seen:
                continue
            coset = frozenset(self.table[g][h] for h in subgroup)
            seen |= coset
            cosets.append(coset)
        return sorted(cosets, key=min)

    def describe(self, subgroup: Iterable[int]) -> str:
        return "{" + ", ".join(self.labels[g] for g in sorted(subgroup)) + "}"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "cayley": [list(row) for row in self.table],
            "labels": list(self.labels),
        }


"""
Construction
"""


def _cycle_label(array: Sequence[int]) -> str:
    cycles = Permutation(list(array)).cyclic_form
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles)


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """
    Cycle notation on the points 1..degree, composed right to left.

    >>> parse_cycles("(1 2 3)", 3)
    (1, 2, 0)
    >>> parse_cycles("()", 2)
    (0, 1)
    """
    array = list(range(degree))
    cycles = _CYCLE.findall(text)
    if not cycles and text.strip():
        raise InvalidGroup(f"{text!r} is not in cycle notation.")
    for body in reversed(cycles):
        points = [int(p) - 1 for p in re.split(r"[\s,]+", body.strip()) if p]
        if any(not 0 <= p < degree for p in points) or len(set(points)) != len(points):
            raise InvalidGroup(f"Bad cycle ({body}) for degree {degree}.")
        step = list(range(degree))
        for a, b in zip(points, points[1:] + points[:1]):
            step[a] = b
        array = [step[i] for i in array]
    return tuple(array)


def from_permutation_group(group: PermutationGroup, name: str) -> FiniteGroup:
    arrays = sorted(tuple(p.array_form) for p in group.elements)
    degree = group.degree
    arrays = [a + tuple(range(len(a), degree)) for a in arrays]
    index = {a: i for i, a in enumerate(arrays)}
    table = tuple(
        tuple(index[tuple(g[i] for i in h)] for h in arrays) for g in arrays
    )
    return FiniteGroup(name, table, tuple(_cycle_label(a) for a in arrays), tuple(arrays))


def from_permutations(
    generators: Iterable[str], degree: int, name: str = ""
) -> FiniteGroup:
    """
    The permutation group generated by some permutations in cycle notation.

    >>> len(from_permutations(["(1 2)", "(1 2 3)"], 3))
    6
    """
    generators = list(generators)
    arrays = [parse_cycles(g, degree) for g in generators]
    perms = [Permutation(list(a)) for a in arrays] or [Permutation(list(range(degree)))]
    name = name or "⟨" + ", ".join(generators) + "⟩"
    return from_permutation_group(PermutationGroup(perms), name)


def from_table(
    table: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None, name: str = ""
) -> FiniteGroup:
    labels = tuple(labels) if labels else tuple(str(i) for i in range(len(table)))
    return FiniteGroup(name or "G", tuple(tuple(row) for row in table), labels)


def from_function(
    elements: Sequence, multiply: Callable, labels: Sequence[str], name: str
) -> FiniteGroup:
    index = {e: i for i, e in enumerate(elements)}
    table = tuple(tuple(index[multiply(a, b)] for b in elements) for a in elements)
    return FiniteGroup(name, table, tuple(labels))


def cyclic(n: int) -> FiniteGroup:
    return from_function(
        range(n), lambda a, b: (a + b) % n, [str(i) for i in range(n)], f"Z{n}"
    )


def symmetric(n: int) -> FiniteGroup:
    return from_permutation_group(SymmetricGroup(n), f"S{n}")


def alternating(n: int) -> FiniteGroup:
    return from_permutation_group(AlternatingGroup(n), f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """
    The symmetries of an n-gon, of order 2n.
    """
    return from_permutation_group(DihedralGroup(n), f"D{n}")


_UNITS = {
    ("1", "1"): (1, "1"),
    ("i", "i"): (-1, "1"),
    ("j", "j"): (-1, "1"),
    ("k", "k"): (-1, "1"),
    ("i", "j"): (1, "k"),
    ("j", "k"): (1, "i"),
    ("k", "i"): (1, "j"),
    ("j", "i"): (-1, "k"),
    ("k", "j"): (-1, "i"),
    ("i", "k"): (-1, "j"),
}


def _quaternion_product(a: tuple[int, str], b: tuple[int, str]) -> tuple[int, str]:
    if a[1] == "1":
        sign, unit = 1, b[1]
    elif b[1] == "1":
        sign, unit = 1, a[1]
    else:
        sign, unit = _UNITS[a[1], b[1]]
    return a[0] * b[0] * sign, unit


def quaternion() -> FiniteGroup:
    elements = [(s, u) for u in "1ijk" for s in (1, -1)]
    labels = [("" if s == 1 else "-") + u for s, u in elements]
    return from_function(elements, _quaternion_product, labels, "Q8")


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    pairs = [(x, y) for x in a.elements for y in b.elements]
    labels = [f"({a.labels[x]},{b.labels[y]})" for x, y in pairs]
    group = from_function(
        pairs,
        lambda p, q: (a.table[p[0]][q[0]], b.table[p[1]][q[1]]),
        labels,
        f"{a.name}x{b.name}",
    )
    return group


_NAMED = re.compile(r"(?P<family>Z|C|S|A|D)/?(?P<n>\d+)")


def named_group(name: str) -> FiniteGroup:
    """
    Built-in groups: Zn (or Cn), Sn, An, Dn (order 2n), V4, Q8, 1, and products such as
    Z2xZ2.

    >>> [len(named_group(n)) for n in ["Z4", "S3", "D4", "V4", "Q8", "1", "Z2xZ3"]]
    [4, 6, 8, 4, 8, 1, 6]
    """
    text = name.strip()
    if "x" in text:
        parts = [named_group(p) for p in text.split("x")]
        result = parts[0]
        for part in parts[1:]:
            result = direct_product(result, part)
        return result
    if text in ("1", "trivial"):
        return cyclic(1)
    if text == "V4":
        group = direct_product(cyclic(2), cyclic(2))
        return FiniteGroup("V4", group.table, group.labels)
    if text == "Q8":
        return quaternion()
    match = _NAMED.fullmatch(text)
    if match is None:
        raise InvalidGroup(f"Unknown group {name!r}.", ("name",))
    family, n = match["family"], int(match["n"])
    if n < 1:
        raise InvalidGroup(f"Unknown group {name!r}.", ("name",))
    if family in "ZC":
        return cyclic(n)
    if family == "S":
        return symmetric(n)
    if family == "A":
        return alternating(n)
    return dihedral(n)


def check_order(group: FiniteGroup, max_order: int = DEFAULT_MAX_GROUP_ORDER) -> None:
    if len(group) > max_order:
        raise CapacityError(
            f"{group.name} has order {len(group)}, above the bound of {max_order}."
        )


"""
Subgroups
"""


def subgroups(
    group: FiniteGroup, max_order: int = DEFAULT_MAX_GROUP_ORDER
) -> list[Subgroup]:
    """
    Every subgroup, ordered by size and then by elements.

    >>> [sorted(h) for h in subgroups(cyclic(4))]
    [[0], [0, 2], [0, 1, 2, 3]]
    """
    check_order(group, max_order)
    found = {group.trivial}
    frontier = [group.trivial]
    while frontier:
        nxt = []
        for h in frontier:
            for g in group.elements:
                if g in h:
                    continue
                bigger = group.generate(h | {g})
                if bigger not in found:
                    found.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    logger.debug("%s has %d subgroups.", group.name, len(found))
    return sorted(found, key=lambda h: (len(h), sorted(h)))


def conjugacy_classes(
    group: FiniteGroup, max_order: int = DEFAULT_MAX_GROUP_ORDER
) -> list[list[Subgroup]]:
    """
    Conjugacy classes of subgroups. Each class is led by its lexicographically least
    member.

    >>> [len(c) for c in conjugacy_classes(symmetric(3))]
    [1, 3, 1, 1]
    """
    classes = []
    seen: set[Subgroup] = set()
    for h in subgroups(group, max_order):
        if h in seen:
            continue
        members = {group.conjugate_subgroup(h, g) for g in group.elements}
        seen |= members
        classes.append(sorted(members, key=sorted))
    return classes


def class_representatives(
    group: FiniteGroup, max_order: int = DEFAULT_MAX_GROUP_ORDER
) -> list[Subgroup]:
    return [c[0] for c in conjugacy_classes(group, max_order)]


def is_subconjugate(group: FiniteGroup, small: Subgroup, big: Subgroup) -> bool:
    """
    Whether some conjugate of `small` lies in `big`.
    """
    return any(group.conjugate_subgroup(small, g) <= big for g in group.elements)


"""
Homomorphisms
"""


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != len(self.source):
            raise InvalidGroup(
                f"Need {len(self.source)} images, got {len(self.images)}.", ("map",)
            )
        s, t = self.source.table, self.target.table
        for a, b in product(self.source.elements, repeat=2):
            if self.images[s[a][b]] != t[self.images[a]][self.images[b]]:
                raise InvalidGroup(
                    "Not a homomorphism at "
                    f"({self.source.labels[a]}, {self.source.labels[b]}).",
                    ("map",),
                )

    def __call__(self, g: int) -> int:
        return self.images[g]

    @cached_property
    def kernel(self) -> Subgroup:
        return frozenset(
            g for g in self.source.elements if self.images[g] == self.target.identity
        )

    @cached_property
    def image(self) -> Subgroup:
        return frozenset(self.images)

    @property
    def is_surjective(self) -> bool:
        return len(self.image) == len(self.target)

    def require_surjective(self) -> None:
        missing = sorted(set(self.target.elements) - self.image)
        if missing:
            raise NotSurjective(
                f"{self.target.labels[missing[0]]} is not in the image of "
                f"{self.source.name} → {self.target.name}.",
                ("map",),
            )

    def then(self, after: GroupHom) -> GroupHom:
        return GroupHom(
            self.source, after.target, tuple(after.images[i] for i in self.images)
        )

    def preimage(self, subgroup: Iterable[int]) -> Subgroup:
        subgroup = frozenset(subgroup)
        return frozenset(g for g in self.source.elements if self.images[g] in subgroup)

    def push(self, subgroup: Iterable[int]) -> Subgroup:
        return frozenset(self.images[g] for g in subgroup)


def identity_hom(group: FiniteGroup) -> GroupHom:
    return GroupHom(group, group, tuple(group.elements))


def quotient(group: FiniteGroup, normal: Subgroup) -> GroupHom:
    """
    The projection onto `group / normal`. Cosets are labelled by their least element.

    >>> p = quotient(cyclic(4), frozenset([0, 2]))
    >>> p.target.labels, p.images
    (('[0]', '[1]'), (0, 1, 0, 1))
    """
    if not group.is_subgroup(normal) or not group.is_normal(normal):
        raise InvalidGroup(f"{group.describe(normal)} is not a normal subgroup.")
    cosets = group.left_cosets(normal)
    which = {g: i for i, c in enumerate(cosets) for g in c}
    reps = [min(c) for c in cosets]
    table = tuple(
        tuple(which[group.table[a][b]] for b in reps) for a in reps
    )
    labels = tuple(f"[{group.labels[r]}]" for r in reps)
    target = FiniteGroup(f"{group.name}/{group.describe(normal)}", table, labels)
    return GroupHom(group, target, tuple(which[g] for g in group.elements))


def hom_from_generators(
    source: FiniteGroup, target: FiniteGroup, images: dict[int, int]
) -> GroupHom:
    """
    Extend an assignment on generators to a homomorphism, or fail.
    """
    assigned = {source.identity: target.identity}
    frontier = [source.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, image in images.items():
                y = source.table[x][g]
                value = target.table[assigned[x]][image]
                if y not in assigned:
                    assigned[y] = value
                    nxt.append(y)
                elif assigned[y] != value:
                    raise InvalidGroup("The generator images don't define a homomorphism.")
        frontier = nxt
    if len(assigned) != len(source):
        raise InvalidGroup("The given elements don't generate the source.")
    return GroupHom(source, target, tuple(assigned[g] for g in source.elements))
