"""
Finite categories, set-valued functors and functors between finite categories.

Arrows are indices. `composition[g][f]` is `g ∘ f` (f first), or -1 when the two don't
compose.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from dataclasses import field
from functools import cached_property
from itertools import permutations
from itertools import product
from typing import Callable
from typing import Iterator
from typing import Optional
from typing import Sequence

from localic.exceptions import InvalidCategory
from localic.exceptions import InvalidFunctor
from localic.verdicts import Verdict
from localic.verdicts import first_failure
from localic.verdicts import holds_if

logger = logging.getLogger(__name__)

NO_COMPOSITE = -1


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class FiniteCategory:
    objects: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    composition: tuple[tuple[int, ...], ...]
    identities: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n, m = len(self.objects), len(self.arrows)
        if len(set(self.objects)) != n:
            raise InvalidCategory("Object names must be distinct.", ("objects",))
        if len({a.name for a in self.arrows}) != m:
            raise InvalidCategory("Arrow names must be distinct.", ("arrows",))
        for i, a in enumerate(self.arrows):
            if not (0 <= a.source < n and 0 <= a.target < n):
                raise InvalidCategory(f"{a.name} has an unknown end.", ("arrows", str(i)))
        if len(self.identities) != n:
            raise InvalidCategory("Need one identity per object.", ("identities",))
        for x, e in enumerate(self.identities):
            if not 0 <= e < m:
                raise InvalidCategory(f"No arrow {e}.", ("identities", str(x)))
            if self.arrows[e].source != x or self.arrows[e].target != x:
                raise InvalidCategory(
                    f"{self.arrows[e].name} is not an endomorphism of {self.objects[x]}.",
                    ("identities", str(x)),
                )
        if len(self.composition) != m or any(len(row) != m for row in self.composition):
            raise InvalidCategory("The composition table must be square.", ("composition",))
        for g, f in product(range(m), repeat=2):
            h = self.composition[g][f]
            if h != NO_COMPOSITE and not 0 <= h < m:
                raise InvalidCategory(f"No arrow {h}.", ("composition", str(g), str(f)))
        for g, f in product(range(m), repeat=2):
            h = self.composition[g][f]
            composable = self.arrows[g].source == self.arrows[f].target
            if composable != (h != NO_COMPOSITE):
                raise InvalidCategory(
                    f"{self.arrows[g].name} ∘ {self.arrows[f].name} is "
                    f"{'missing' if composable else 'defined but not composable'}.",
                    ("composition", str(g), str(f)),
                )
            if composable and (
                self.arrows[h].source != self.arrows[f].source
                or self.arrows[h].target != self.arrows[g].target
            ):
                raise InvalidCategory(
                    f"{self.arrows[g].name} ∘ {self.arrows[f].name} has the wrong ends.",
                    ("composition", str(g), str(f)),
                )
        for f, a in enumerate(self.arrows):
            if (
                self.composition[self.identities[a.target]][f] != f
                or self.composition[f][self.identities[a.source]] != f
            ):
                raise InvalidCategory(
                    f"Identities don't act as identities on {a.name}.", ("composition",)
                )
        for h, g, f in product(range(m), repeat=3):
            hg = self.composition[h][g]
            gf = self.composition[g][f]
            if hg == NO_COMPOSITE or gf == NO_COMPOSITE:
                continue
            if self.composition[hg][f] != self.composition[h][gf]:
                raise InvalidCategory(
                    "Composition is not associative at "
                    f"({self.arrows[h].name}, {self.arrows[g].name}, {self.arrows[f].name}).",
                    ("composition",),
                )

    @classmethod
    def build(
        cls,
        objects: Sequence[str],
        arrows: Sequence[Arrow],
        compose: Callable[[int, int], int],
        identities: Sequence[int],
        name: str = "",
    ) -> FiniteCategory:
        """
        Fill the composition table from a function on composable pairs.
        """
        table = tuple(
            tuple(
                compose(g, f) if arrows[g].source == arrows[f].target else NO_COMPOSITE
                for f in range(len(arrows))
            )
            for g in range(len(arrows))
        )
        return cls(tuple(objects), tuple(arrows), table, tuple(identities), name)

    @classmethod
    def from_preorder(cls, objects: Sequence[str], leq: Sequence[tuple[int, int]]) -> FiniteCategory:
        """
        The category with one arrow a → b for each pair a ≤ b. `leq` must be reflexive
        and transitive.
        """
        pairs = sorted(set(leq))
        arrows = [Arrow(f"{objects[a]}≤{objects[b]}", a, b) for a, b in pairs]
        index = {p: i for i, p in enumerate(pairs)}
        return cls.build(
            objects,
            arrows,
            lambda g, f: index[arrows[f].source, arrows[g].target],
            [index[x, x] for x in range(len(objects))],
        )

    def compose(self, g: int, f: int) -> int:
        h = self.composition[g][f]
        if h == NO_COMPOSITE:
            raise InvalidCategory(
                f"{self.arrows[g].name} and {self.arrows[f].name} don't compose."
            )
        return h

    @cached_property
    def homs(self) -> dict[tuple[int, int], tuple[int, ...]]:
        table: dict[tuple[int, int], list[int]] = {
            (a, b): [] for a in range(len(self.objects)) for b in range(len(self.objects))
        }
        for i, arrow in enumerate(self.arrows):
            table[arrow.source, arrow.target].append(i)
        return {k: tuple(v) for k, v in table.items()}

    def hom(self, a: int, b: int) -> tuple[int, ...]:
        return self.homs[a, b]

    def inverse_of(self, f: int) -> Optional[int]:
        arrow = self.arrows[f]
        for g in self.hom(arrow.target, arrow.source):
            if (
                self.composition[g][f] == self.identities[arrow.source]
                and self.composition[f][g] == self.identities[arrow.target]
            ):
                return g
        return None

    def is_iso(self, f: int) -> bool:
        return self.inverse_of(f) is not None

    def object_index(self, name: str) -> int:
        try:
            return self.objects.index(name)
        except ValueError:
            raise InvalidCategory(f"Unknown object {name!r}.") from None

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "objects": list(self.objects),
            "arrows": [
                {"name": a.name, "source": a.source, "target": a.target}
                for a in self.arrows
            ],
            "composition": [list(row) for row in self.composition],
            "identities": list(self.identities),
        }


"""
Set-valued functors
"""


def functoriality(functor: SetFunctor) -> Verdict:
    """
    Identities go to identities and composites to composites.
    """
    c = functor.category

    def checks() -> Iterator[Verdict]:
        for x, e in enumerate(c.identities):
            yield holds_if(
                functor.maps[e] == tuple(range(len(functor.values[x]))),
                f"F({c.arrows[e].name}) is not the identity",
                [c.arrows[e].name],
            )
        for g, f in product(range(len(c.arrows)), repeat=2):
            h = c.composition[g][f]
            if h == NO_COMPOSITE:
                continue
            expected = tuple(functor.maps[g][y] for y in functor.maps[f])
            yield holds_if(
                functor.maps[h] == expected,
                f"F({c.arrows[g].name} ∘ {c.arrows[f].name}) ≠ "
                f"F({c.arrows[g].name}) ∘ F({c.arrows[f].name})",
                [c.arrows[g].name, c.arrows[f].name],
            )

    return first_failure(checks())


@dataclass(frozen=True)
class SetFunctor:
    """
    `values[X]` names the elements of FX; `maps[f][x]` is `F(f)(x)`.
    """

    category: FiniteCategory
    values: tuple[tuple[str, ...], ...]
    maps: tuple[tuple[int, ...], ...]
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        c = self.category
        if len(self.values) != len(c.objects):
            raise InvalidFunctor("Need one value per object.", ("values",))
        if len(self.maps) != len(c.arrows):
            raise InvalidFunctor("Need one map per arrow.", ("maps",))
        for i, value in enumerate(self.values):
            if len(set(value)) != len(value):
                raise InvalidFunctor(
                    f"F{c.objects[i]} has repeated elements.", ("values", str(i))
                )
        for i, (arrow, mapping) in enumerate(zip(c.arrows, self.maps)):
            size = len(self.values[arrow.target])
            if len(mapping) != len(self.values[arrow.source]) or any(
                not 0 <= y < size for y in mapping
            ):
                raise InvalidFunctor(
                    f"F({arrow.name}) does not go from F{c.objects[arrow.source]} to "
                    f"F{c.objects[arrow.target]}.",
                    ("maps", str(i)),
                )
        if self.check:
            verdict = functoriality(self)
            if not verdict:
                raise InvalidFunctor(str(verdict), ("maps",))

    def apply(self, arrow: int, x: int) -> int:
        return self.maps[arrow][x]

    def size(self, obj: int) -> int:
        return len(self.values[obj])

    @cached_property
    def elements(self) -> tuple[tuple[int, int], ...]:
        """
        Pairs (X, x) with x in FX, by object and then element.
        """
        return tuple(
            (obj, x) for obj in range(len(self.values)) for x in range(len(self.values[obj]))
        )

    def after(self, functor: CategoryFunctor) -> SetFunctor:
        """
        `F ∘ T` for a functor T into this functor's category.
        """
        if functor.target != self.category:
            raise InvalidFunctor("The functors don't compose.")
        return SetFunctor(
            functor.source,
            tuple(self.values[functor.object_map[x]] for x in range(len(functor.source.objects))),
            tuple(self.maps[functor.arrow_map[f]] for f in range(len(functor.source.arrows))),
            self.check,
        )

    def with_map(self, arrow: int, mapping: Sequence[int]) -> SetFunctor:
        """
        The same data with one arrow sent elsewhere, unchecked.
        """
        maps = list(self.maps)
        maps[arrow] = tuple(mapping)
        return SetFunctor(self.category, self.values, tuple(maps), check=False)

    def as_dict(self) -> dict:
        return {
            "category": self.category.as_dict(),
            "values": [list(v) for v in self.values],
            "maps": [list(m) for m in self.maps],
        }


def representable(category: FiniteCategory, obj: int) -> SetFunctor:
    """
    `[A, −]`, whose value at X names the arrows A → X.
    """
    homs = [category.hom(obj, x) for x in range(len(category.objects))]
    position = [{f: i for i, f in enumerate(h)} for h in homs]
    maps = tuple(
        tuple(position[arrow.target][category.composition[f][u]] for u in homs[arrow.source])
        for f, arrow in enumerate(category.arrows)
    )
    values = tuple(tuple(category.arrows[u].name for u in h) for h in homs)
    return SetFunctor(category, values, maps)


"""
Natural transformations
"""


def naturality(
    source: SetFunctor, target: SetFunctor, components: Sequence[Sequence[int]]
) -> Verdict:
    c = source.category
    return first_failure(
        holds_if(
            target.maps[f][components[arrow.source][x]]
            == components[arrow.target][source.maps[f][x]],
            f"not natural at {arrow.name} on {source.values[arrow.source][x]}",
            [arrow.name, source.values[arrow.source][x]],
        )
        for f, arrow in enumerate(c.arrows)
        for x in range(source.size(arrow.source))
    )


def _transformations(
    source: SetFunctor, target: SetFunctor, bijective: bool
) -> Iterator[tuple[tuple[int, ...], ...]]:
    c = source.category
    if target.category != c:
        raise InvalidFunctor("Functors on different categories.")
    n = len(c.objects)
    options = []
    for obj in range(n):
        k, m = source.size(obj), target.size(obj)
        if bijective:
            options.append(list(permutations(range(m))) if k == m else [])
        else:
            options.append(list(product(range(m), repeat=k)))
    arrows_by_last = [
        [
            (f, a)
            for f, a in enumerate(c.arrows)
            if max(a.source, a.target) == obj
        ]
        for obj in range(n)
    ]

    def extend(obj: int, chosen: list[tuple[int, ...]]) -> Iterator[tuple[tuple[int, ...], ...]]:
        if obj == n:
            yield tuple(chosen)
            return
        for component in options[obj]:
            chosen.append(component)
            if all(
                target.maps[f][chosen[a.source][x]] == chosen[a.target][source.maps[f][x]]
                for f, a in arrows_by_last[obj]
                for x in range(source.size(a.source))
            ):
                yield from extend(obj + 1, chosen)
            chosen.pop()

    return extend(0, [])


def natural_transformations(
    source: SetFunctor, target: SetFunctor
) -> list[tuple[tuple[int, ...], ...]]:
    """
    Every natural transformation, as one component map per object.

    >>> c = FiniteCategory.from_preorder(["a", "b"], [(0, 0), (0, 1), (1, 1)])
    >>> f = SetFunctor(c, (("0", "1"), ("0",)), ((0, 1), (0, 0), (0,)))
    >>> len(natural_transformations(f, f))
    4
    """
    found = list(_transformations(source, target, bijective=False))
    logger.debug("%d natural transformations.", len(found))
    return found


def natural_isomorphisms(
    source: SetFunctor, target: SetFunctor
) -> list[tuple[tuple[int, ...], ...]]:
    return list(_transformations(source, target, bijective=True))


"""
Functors between finite categories
"""


@dataclass(frozen=True)
class CategoryFunctor:
    source: FiniteCategory
    target: FiniteCategory
    object_map: tuple[int, ...]
    arrow_map: tuple[int, ...]

    def __post_init__(self):
        s, t = self.source, self.target
        if len(self.object_map) != len(s.objects) or len(self.arrow_map) != len(s.arrows):
            raise InvalidFunctor("Need an image for every object and arrow.")
        for f, arrow in enumerate(s.arrows):
            image = t.arrows[self.arrow_map[f]]
            if (image.source, image.target) != (
                self.object_map[arrow.source],
                self.object_map[arrow.target],
            ):
                raise InvalidFunctor(f"{arrow.name} goes to an arrow with the wrong ends.")
        for x, e in enumerate(s.identities):
            if self.arrow_map[e] != t.identities[self.object_map[x]]:
                raise InvalidFunctor(f"The identity of {s.objects[x]} is not preserved.")
        for g, f in product(range(len(s.arrows)), repeat=2):
            h = s.composition[g][f]
            if h != NO_COMPOSITE and self.arrow_map[h] != t.composition[
                self.arrow_map[g]
            ][self.arrow_map[f]]:
                raise InvalidFunctor(
                    f"{s.arrows[g].name} ∘ {s.arrows[f].name} is not preserved."
                )

    def then(self, after: CategoryFunctor) -> CategoryFunctor:
        if after.source != self.target:
            raise InvalidFunctor("The functors don't compose.")
        return CategoryFunctor(
            self.source,
            after.target,
            tuple(after.object_map[x] for x in self.object_map),
            tuple(after.arrow_map[f] for f in self.arrow_map),
        )

    def faithful(self) -> Verdict:
        s = self.source
        return first_failure(
            holds_if(
                len({self.arrow_map[f] for f in s.hom(a, b)}) == len(s.hom(a, b)),
                f"not faithful on {s.objects[a]} → {s.objects[b]}",
                [s.objects[a], s.objects[b]],
            )
            for a, b in product(range(len(s.objects)), repeat=2)
        )

    def full(self) -> Verdict:
        s, t = self.source, self.target
        return first_failure(
            holds_if(
                {self.arrow_map[f] for f in s.hom(a, b)}
                == set(t.hom(self.object_map[a], self.object_map[b])),
                f"not full on {s.objects[a]} → {s.objects[b]}",
                [s.objects[a], s.objects[b]],
            )
            for a, b in product(range(len(s.objects)), repeat=2)
        )

    def essentially_surjective(self) -> Verdict:
        s, t = self.source, self.target
        hit = set(self.object_map)

        def reached(y: int) -> bool:
            return any(
                any(t.is_iso(f) for f in t.hom(x, y)) for x in hit
            )

        return first_failure(
            holds_if(reached(y), f"{t.objects[y]} is not reached", [t.objects[y]])
            for y in range(len(t.objects))
        )

    def equivalence(self) -> Verdict:
        return self.faithful() & self.full() & self.essentially_surjective()


def identity_functor(category: FiniteCategory) -> CategoryFunctor:
    return CategoryFunctor(
        category,
        category,
        tuple(range(len(category.objects))),
        tuple(range(len(category.arrows))),
    )


def full_subcategory(
    category: FiniteCategory, objects: Sequence[int], name: str = ""
) -> tuple[FiniteCategory, CategoryFunctor]:
    """
    The full subcategory on some objects, with its inclusion.
    """
    objects = sorted(set(objects))
    new_object = {x: i for i, x in enumerate(objects)}
    kept = [
        f
        for f, a in enumerate(category.arrows)
        if a.source in new_object and a.target in new_object
    ]
    new_arrow = {f: i for i, f in enumerate(kept)}
    arrows = [
        Arrow(a.name, new_object[a.source], new_object[a.target])
        for a in (category.arrows[f] for f in kept)
    ]
    sub = FiniteCategory.build(
        [category.objects[x] for x in objects],
        arrows,
        lambda g, f: new_arrow[category.composition[kept[g]][kept[f]]],
        [new_arrow[category.identities[x]] for x in objects],
        name or category.name,
    )
    return sub, CategoryFunctor(sub, category, tuple(objects), tuple(kept))
