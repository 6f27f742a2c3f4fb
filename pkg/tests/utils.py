"""
Helpers shared by the tests, including independent oracles that the library itself
must never use.
"""
from functools import partial
from functools import reduce
from typing import Iterable

import jsonschema
import pytest

from localic.category import Arrow
from localic.category import FiniteCategory
from localic.category import SetFunctor
from localic.groups import FiniteGroup
from localic.groups import Subgroup
from localic.groups import class_representatives
from localic.groups import named_group

validate_json = partial(
    jsonschema.validate, format_checker=jsonschema.Draft7Validator.FORMAT_CHECKER
)

GROUPS = ["1", "Z2", "Z3", "Z4", "V4", "S3", "Z6"]
GROUPS += ["Z8", "D4", "Q8", "Z2xZ4", "A4", "D6", "Z12"]


def subgroup_cases(names=GROUPS) -> list:
    """
    One case per conjugacy class of subgroups of each named group.
    """
    return [
        pytest.param(group, h, id=f"{name}:{i}")
        for name in names
        for group in [named_group(name)]
        for i, h in enumerate(class_representatives(group))
    ]


def normal_core(group: FiniteGroup, subgroup: Subgroup) -> Subgroup:
    """
    The intersection of every conjugate, computed element by element.
    """
    return reduce(
        frozenset.intersection,
        (
            frozenset(group.conjugate(h, g) for h in subgroup)
            for g in group.elements
        ),
    )


def is_normal_oracle(group: FiniteGroup, subgroup: Subgroup) -> bool:
    return normal_core(group, subgroup) == frozenset(subgroup)


def conjugate_into(group: FiniteGroup, small: Subgroup, big: Subgroup) -> bool:
    """
    Some conjugate of `small` lies in `big`: G/small maps to G/big.
    """
    return any(
        {group.conjugate(h, g) for h in small} <= set(big) for g in group.elements
    )


def factors_through(kernel: Iterable[int], subgroup: Subgroup) -> bool:
    """
    A normal `kernel` acts trivially on G/subgroup exactly when it lies in the
    subgroup.
    """
    return set(kernel) <= set(subgroup)


def z2_category() -> FiniteCategory:
    """
    One object whose endomorphisms form the group of order two.
    """
    return FiniteCategory(
        ("*",),
        (Arrow("e", 0, 0), Arrow("s", 0, 0)),
        ((0, 1), (1, 0)),
        (0,),
        "Z2",
    )


def regular_functor() -> SetFunctor:
    return SetFunctor(z2_category(), (("0", "1"),), ((0, 1), (1, 0)))


def walking_arrow() -> FiniteCategory:
    return FiniteCategory.from_preorder(["a", "b"], [(0, 0), (0, 1), (1, 1)])
