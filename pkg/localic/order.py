"""
Finite preorders and the free inf-lattice on them.

Subsets of a preorder are bitmasks over its element indices. A finite subset A stands
for the formal meet of its elements, and the order on subsets is

    A ≤ B  iff  every b in B has some a in A with a ≤ b,

so two subsets are identified exactly when they generate the same up-set. Lattice
elements are therefore enumerated through the up-sets of the base, and each one is
named by its canonical subset: one element (the lowest index) from each minimal class.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from dataclasses import field
from functools import cached_property
from typing import Iterable
from typing import Sequence

from localic.exceptions import CapacityError
from localic.exceptions import InvalidPreorder
from localic.settings import DEFAULT_MAX_GENERATORS
from localic.types import Mask
from localic.utils import bits
from localic.utils import is_subset
from localic.utils import mask_of
from localic.utils import popcount

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Preorder:
    """
    A reflexive and transitive relation on named elements. Antisymmetry is not required.

    >>> p = Preorder.generated(["a", "b", "c"], [(0, 1), (1, 2)])
    >>> p.le(0, 2), p.le(2, 0)
    (True, False)
    >>> p.closure_added
    4
    """

    elements: tuple[str, ...]
    leq: frozenset[tuple[int, int]]
    closure_added: int = field(default=0, compare=False)

    def __post_init__(self):
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise InvalidPreorder("Element names must be distinct.", ("elements",))
        for i, j in self.leq:
            if not (0 <= i < n and 0 <= j < n):
                raise InvalidPreorder(f"Pair {[i, j]} is out of range.", ("leq",))
        for i in range(n):
            if (i, i) not in self.leq:
                raise InvalidPreorder(
                    f"Not reflexive at {self.elements[i]}.", ("leq",)
                )
        up = self.up
        for i in range(n):
            for j in bits(up[i]):
                if not is_subset(up[j], up[i]):
                    k = next(bits(up[j] & ~up[i]))
                    raise InvalidPreorder(
                        f"Not transitive: {self.elements[i]} ≤ {self.elements[j]} ≤ "
                        f"{self.elements[k]}.",
                        ("leq",),
                    )

    @classmethod
    def generated(
        cls, elements: Iterable[str], pairs: Iterable[Sequence[int]]
    ) -> Preorder:
        """
        The reflexive and transitive closure of the given pairs.
        """
        elements = tuple(elements)
        n = len(elements)
        given = {(int(i), int(j)) for i, j in pairs}
        for i, j in given:
            if not (0 <= i < n and 0 <= j < n):
                raise InvalidPreorder(f"Pair {[i, j]} is out of range.", ("leq",))
        up = [1 << i for i in range(n)]
        for i, j in given:
            up[i] |= 1 << j
        changed = True
        while changed:
            changed = False
            for i in range(n):
                closed = up[i]
                for j in bits(up[i]):
                    closed |= up[j]
                if closed != up[i]:
                    up[i] = closed
                    changed = True
        leq = frozenset((i, j) for i in range(n) for j in bits(up[i]))
        added = len(leq) - len(given)
        if added:
            logger.info("Closed the preorder on %d elements: %d pairs added.", n, added)
        return cls(elements, leq, added)

    @classmethod
    def discrete(cls, elements: Iterable[str]) -> Preorder:
        elements = tuple(elements)
        return cls(elements, frozenset((i, i) for i in range(len(elements))))

    @classmethod
    def chain(cls, elements: Iterable[str]) -> Preorder:
        """
        First element lowest.
        """
        elements = tuple(elements)
        n = len(elements)
        return cls(elements, frozenset((i, j) for i in range(n) for j in range(i, n)))

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def up(self) -> tuple[Mask, ...]:
        masks = [0] * len(self.elements)
        for i, j in self.leq:
            masks[i] |= 1 << j
        return tuple(masks)

    @cached_property
    def down(self) -> tuple[Mask, ...]:
        masks = [0] * len(self.elements)
        for i, j in self.leq:
            masks[j] |= 1 << i
        return tuple(masks)

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.elements)}

    def le(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def up_closure(self, subset: Mask) -> Mask:
        closure = 0
        for i in bits(subset):
            closure |= self.up[i]
        return closure

    def mask(self, names: Iterable[str]) -> Mask:
        try:
            return mask_of(self.index[name] for name in names)
        except KeyError as e:
            raise InvalidPreorder(f"Unknown element {e.args[0]!r}.") from e

    def names(self, subset: Mask) -> list[str]:
        return [self.elements[i] for i in bits(subset)]

    def disjoint_union(self, other: Preorder) -> Preorder:
        """
        `other` is placed after `self`. Clashing names get a prefix.
        """
        shift = len(self.elements)
        names = list(self.elements) + list(other.elements)
        if len(set(names)) != len(names):
            names = [f"L.{e}" for e in self.elements] + [
                f"R.{e}" for e in other.elements
            ]
        leq = self.leq | {(i + shift, j + shift) for i, j in other.leq}
        return Preorder(tuple(names), frozenset(leq))

    def as_dict(self) -> dict:
        return {
            "elements": list(self.elements),
            "leq": sorted([i, j] for i, j in self.leq),
        }


def free_leq(a: Mask, b: Mask, preorder: Preorder) -> bool:
    """
    The order of the free inf-lattice: every element of `b` is above some element of `a`.

    >>> p = Preorder.discrete(["a", "b"])
    >>> free_leq(0b11, 0b01, p), free_leq(0b01, 0b11, p), free_leq(0b01, 0, p)
    (True, False, True)
    """
    return is_subset(b, preorder.up_closure(a))


@dataclass(frozen=True)
class FreeInfLattice:
    """
    Elements are indexed from 0 (the top, the empty meet) in order of
    (size of canonical subset, canonical subset).
    """

    base: Preorder
    representatives: tuple[Mask, ...]
    ups: tuple[Mask, ...]
    _down_cache: dict[int, int] = field(
        default_factory=dict, compare=False, repr=False, hash=False
    )

    top = 0

    def __len__(self) -> int:
        return len(self.representatives)

    @cached_property
    def index_of_up(self) -> dict[Mask, int]:
        return {u: i for i, u in enumerate(self.ups)}

    def classify(self, subset: Mask) -> int:
        """
        The lattice element a finite subset of the base stands for.
        """
        return self.index_of_up[self.base.up_closure(subset)]

    def eta(self, generator: int) -> int:
        return self.classify(1 << generator)

    def leq(self, i: int, j: int) -> bool:
        return is_subset(self.ups[j], self.ups[i])

    def meet(self, i: int, j: int) -> int:
        return self.index_of_up[self.ups[i] | self.ups[j]]

    def names(self, i: int) -> list[str]:
        return self.base.names(self.representatives[i])

    def down(self, i: int) -> Mask:
        """
        Everything below element `i`, as a bitmask over lattice indices.
        """
        try:
            return self._down_cache[i]
        except KeyError:
            pass
        up = self.ups[i]
        below = 1 << i
        for g, g_up in enumerate(self.base.up):
            bigger = up | g_up
            if bigger != up:
                below |= self.down(self.index_of_up[bigger])
        self._down_cache[i] = below
        return below


def canonical_subset(up_set: Mask, preorder: Preorder) -> Mask:
    """
    The smallest subset generating `up_set`: the lowest index of each minimal class.

    >>> p = Preorder.chain(["a", "b"])
    >>> canonical_subset(0b11, p)
    1
    """
    rep = 0
    for g in bits(up_set):
        same_class = preorder.up[g] & preorder.down[g]
        strictly_below = preorder.down[g] & ~same_class
        if strictly_below & up_set:
            continue
        if g == next(bits(same_class)):
            rep |= 1 << g
    return rep


def up_sets(preorder: Preorder) -> list[Mask]:
    seen = {0}
    queue = deque([0])
    while queue:
        current = queue.popleft()
        for g_up in preorder.up:
            bigger = current | g_up
            if bigger not in seen:
                seen.add(bigger)
                queue.append(bigger)
    return list(seen)


def free_inf_lattice(
    preorder: Preorder, max_generators: int = DEFAULT_MAX_GENERATORS
) -> FreeInfLattice:
    """
    >>> len(free_inf_lattice(Preorder.discrete(["a", "b"])))
    4
    >>> lattice = free_inf_lattice(Preorder.chain(["a", "b"]))
    >>> [lattice.names(i) for i in range(len(lattice))]
    [[], ['a'], ['b']]
    >>> lattice.classify(0b11) == lattice.eta(0)
    True
    """
    if len(preorder) > max_generators:
        raise CapacityError(
            f"The free inf-lattice on {len(preorder)} generators exceeds the bound of "
            f"{max_generators} generators."
        )
    pairs = sorted(
        ((canonical_subset(u, preorder), u) for u in up_sets(preorder)),
        key=lambda pair: (popcount(pair[0]), pair[0]),
    )
    logger.debug(
        "Free inf-lattice on %d generators has %d elements.", len(preorder), len(pairs)
    )
    return FreeInfLattice(
        preorder, tuple(rep for rep, _ in pairs), tuple(u for _, u in pairs)
    )
