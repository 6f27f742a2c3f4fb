"""
The JSON documents the command line reads and writes: preorders, sites, groups, chains
of groups, finite categories and set-valued functors.

Each document is a form. Loading validates the data against the form's constraints,
builds the object (which checks its own axioms) and reports every problem by its path
in the document.

>>> site = load("site", {
...     "base": {"elements": ["a", "b"], "leq": [[0, 1]]},
...     "covers": [{"target": ["b"], "family": [["a"]]}],
... })
>>> site.describe_cover(0)
'[⟨b⟩] ≤ ⋁{[⟨a⟩]}'
>>> load("site", dump("site", site)) == site
True
>>> load("site", {"base": {"elements": ["a"], "leq": [[0, 1]]}, "covers": []})
Traceback (most recent call last):
...
localic.exceptions.InputErrors: base.leq: Pair [0, 1] is out of range.
"""
from __future__ import annotations

import json
import logging
from functools import cache
from pathlib import Path
from typing import Any
from typing import Callable
from typing import Optional
from typing import Sequence

from localic.category import Arrow
from localic.category import FiniteCategory
from localic.category import SetFunctor
from localic.constraints import constraint
from localic.constraints import is_int
from localic.constraints import is_list
from localic.deserializers import KwargsDeserializer
from localic.exceptions import InputErrors
from localic.exceptions import InvalidGroup
from localic.exceptions import InvalidSite
from localic.exceptions import LocalicError
from localic.fields import BasicField
from localic.fields import CyclesField
from localic.fields import IndicesField
from localic.fields import IntField
from localic.fields import NameRowsField
from localic.fields import NamesField
from localic.fields import PairsField
from localic.fields import RowsField
from localic.fields import StrField
from localic.fields import TableField
from localic.forms import BasicForm
from localic.forms import VariableListForm
from localic.groups import FiniteGroup
from localic.groups import GroupHom
from localic.groups import from_permutations
from localic.groups import from_table
from localic.locale import Cover
from localic.locale import LocalePoint
from localic.locale import Site
from localic.order import Preorder
from localic.prodiscrete import GroupChain
from localic.serializers import as_dict
from localic.types import JSONData

logger = logging.getLogger(__name__)


"""
Builders
"""


def preorder_from_data(elements: Sequence[str], leq: Sequence[tuple[int, int]]) -> Preorder:
    preorder = Preorder.generated(elements, leq)
    if preorder.closure_added:
        logger.info(
            "Preorder closed on load: %d pairs added.", preorder.closure_added
        )
    return preorder


def site_from_data(base: Preorder, covers: Sequence[dict], name: str = "") -> Site:
    pairs = []
    for i, cover in enumerate(covers):
        try:
            pairs.append(
                (base.mask(cover["target"]), tuple(base.mask(m) for m in cover["family"]))
            )
        except LocalicError as e:
            raise InvalidSite(str(e), ("covers", str(i))) from e
    return Site(base, tuple(Cover(t, f) for t, f in pairs), name)


@constraint("Must be [[permutations in cycle notation], degree].", requires=[is_list])
def is_permutation_spec(value: list) -> bool:
    return (
        len(value) == 2
        and CyclesField(key="generators").data_constraint.satisfied_by(value[0])
        and is_int.satisfied_by(value[1])
        and value[1] >= 1
    )


@constraint("Must set exactly one of permutations and cayley.")
def one_presentation(value: dict) -> bool:
    return isinstance(value, dict) and ("permutations" in value) != ("cayley" in value)


def group_from_data(
    name: str = "",
    permutations: Optional[list] = None,
    cayley: Optional[Sequence[Sequence[int]]] = None,
    labels: Optional[Sequence[str]] = None,
) -> FiniteGroup:
    if permutations is not None:
        generators, degree = permutations
        group = from_permutations(generators, degree, name)
        if labels:
            return FiniteGroup(group.name, group.table, tuple(labels), group.permutations)
        return group
    return from_table(cayley, labels, name)


def chain_from_data(
    stages: Sequence[FiniteGroup], transitions: Sequence[Sequence[int]]
) -> GroupChain:
    if len(transitions) != len(stages) - 1:
        raise InvalidGroup(
            f"{len(stages)} stages need {len(stages) - 1} transitions.",
            ("transitions",),
        )
    homs = []
    for i, images in enumerate(transitions):
        try:
            homs.append(GroupHom(stages[i + 1], stages[i], tuple(images)))
        except InvalidGroup as e:
            raise InvalidGroup(str(e), ("transitions", str(i))) from e
    return GroupChain(tuple(stages), tuple(homs))


def category_from_data(
    objects: Sequence[str],
    arrows: Sequence[Arrow],
    composition: Sequence[Sequence[int]],
    identities: Sequence[int],
    name: str = "",
) -> FiniteCategory:
    return FiniteCategory(
        tuple(objects), tuple(arrows), tuple(composition), tuple(identities), name
    )


def functor_from_data(
    category: FiniteCategory,
    values: Sequence[Sequence[str]],
    maps: Sequence[Sequence[int]],
) -> SetFunctor:
    return SetFunctor(category, tuple(values), tuple(maps))


"""
Forms
"""


def preorder_form(key: str = "preorder", **kwargs: Any) -> BasicForm:
    return BasicForm(
        key=key,
        description="Named elements and index pairs i ≤ j, closed on load.",
        children=[NamesField(key="elements"), PairsField(key="leq")],
        deserializer=KwargsDeserializer(preorder_from_data, "Not a preorder."),
        serializer=as_dict,
        **kwargs,
    )


def cover_form() -> BasicForm:
    return BasicForm(
        key="cover",
        description="target ≤ ⋁ family, each side a meet of generator names.",
        children=[NamesField(key="target"), NameRowsField(key="family")],
    )


def site_form(key: str = "site") -> BasicForm:
    return BasicForm(
        key=key,
        children=[
            preorder_form("base"),
            VariableListForm(cover_form(), key="covers"),
            StrField(key="name", required=False),
        ],
        deserializer=KwargsDeserializer(site_from_data, "Not a site."),
        serializer=as_dict,
    )


def group_form(key: str = "group") -> BasicForm:
    return BasicForm(
        key=key,
        description="Permutation generators with a degree, or a full Cayley table.",
        children=[
            StrField(key="name", required=False),
            BasicField(
                key="permutations",
                required=False,
                extra_data_constraints=[is_permutation_spec],
            ),
            TableField(key="cayley", required=False),
            NamesField(key="labels", required=False),
        ],
        extra_data_constraints=[one_presentation],
        deserializer=KwargsDeserializer(group_from_data, "Not a group."),
        serializer=as_dict,
    )


def chain_form(key: str = "chain") -> BasicForm:
    return BasicForm(
        key=key,
        description="Stages G_1 ← G_2 ← …; transitions[i] lists the images in stage "
        "i + 1 of the elements of stage i + 2.",
        children=[
            VariableListForm(group_form(), key="stages"),
            RowsField(key="transitions"),
        ],
        deserializer=KwargsDeserializer(chain_from_data, "Not a chain of groups."),
        serializer=as_dict,
    )


def arrow_form() -> BasicForm:
    return BasicForm(
        key="arrow",
        children=[
            StrField(key="name"),
            IntField(key="source"),
            IntField(key="target"),
        ],
        deserializer=KwargsDeserializer(Arrow, "Not an arrow."),
    )


def category_form(key: str = "category") -> BasicForm:
    return BasicForm(
        key=key,
        description="composition[g][f] is g ∘ f, or -1 when they don't compose.",
        children=[
            StrField(key="name", required=False),
            NamesField(key="objects"),
            VariableListForm(arrow_form(), key="arrows"),
            RowsField(key="composition"),
            IndicesField(key="identities"),
        ],
        deserializer=KwargsDeserializer(category_from_data, "Not a category."),
        serializer=as_dict,
    )


def functor_form(key: str = "functor") -> BasicForm:
    return BasicForm(
        key=key,
        description="values[X] names the elements of FX; maps[f][x] is F(f)(x).",
        children=[
            category_form(),
            NameRowsField(key="values"),
            RowsField(key="maps"),
        ],
        deserializer=KwargsDeserializer(functor_from_data, "Not a functor."),
        serializer=as_dict,
    )


FORMS: dict[str, Callable[[], BasicForm]] = {
    "preorder": preorder_form,
    "site": site_form,
    "group": group_form,
    "chain": chain_form,
    "category": category_form,
    "functor": functor_form,
}


@cache
def form(kind: str) -> BasicForm:
    try:
        return FORMS[kind]()
    except KeyError:
        raise ValueError(f"Unknown document kind {kind!r}.") from None


"""
Loading and dumping
"""


def load(kind: str, data: JSONData) -> Any:
    return form(kind).make_object(data)


def load_file(kind: str, path: str) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputErrors({(): f"Can't read {path}: {e.strerror}."}) from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputErrors({(): f"{path} is not JSON: {e.msg} at line {e.lineno}."}) from e
    logger.debug("Loaded %s document from %s.", kind, path)
    return load(kind, data)


def dump(kind: str, obj: Any) -> JSONData:
    return form(kind).serialize(obj)


def schema(kind: str) -> JSONData:
    return form(kind).data_schema()


def point_to_data(point: LocalePoint) -> list[str]:
    """
    A point as the generators it accepts, in generator order.
    """
    return point.names()

