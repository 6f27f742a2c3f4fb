from __future__ import annotations

from abc import ABC
from typing import Iterable
from typing import Optional
from typing import Sequence
from typing import Union

from localic.base_classes import Converter
from localic.constraints import GE
from localic.constraints import And
from localic.constraints import Choices
from localic.constraints import Constraint
from localic.constraints import EachItem
from localic.constraints import is_cycle_notation
from localic.constraints import is_index_pair
from localic.constraints import is_int
from localic.constraints import is_list
from localic.constraints import is_list_of_int
from localic.constraints import is_list_of_str
from localic.constraints import is_null
from localic.constraints import is_square_table
from localic.constraints import is_str
from localic.constraints import list_of
from localic.constraints import not_null
from localic.deserializers import Deserializer
from localic.deserializers import FunctionDeserializer
from localic.deserializers import SplitDeserializer
from localic.deserializers import tuple_rows
from localic.serializers import FunctionSerializer
from localic.serializers import Serializer
from localic.serializers import nested_lists
from localic.serializers import sorted_pairs
from localic.types import D
from localic.types import T
from localic.utils import MISSING
from localic.utils import key_and_label


class Field(Converter[D, T], ABC):
    """
    Fields serialize objects, deserialize data and check constraints on a single value
    of a document.

    They are different from Forms in that they don't contain Fields or Forms.
    """


class BasicField(Field[D, T]):
    """
    You can create a Field directly from this class, or subclass it to make a template.
    """

    # Defaults for instances of this class. Meant to be overridden by subclasses.
    default_serializer: Serializer = Serializer()
    default_deserializer: Deserializer = Deserializer()
    default_data_constraints: tuple[Constraint[D], ...] = ()
    default_object_constraints: tuple[Constraint[T], ...] = ()

    def __init__(
        self,
        label: Optional[str] = None,
        description: Optional[str] = None,
        default: Union[T, object] = MISSING,
        choices: Iterable[T] = (),
        required: bool = True,
        nullable: bool = False,
        extra_data_constraints: Sequence[Constraint] = (),
        extra_object_constraints: Sequence[Constraint] = (),
        serializer: Serializer[D, T] = None,
        deserializer: Deserializer[D, T] = None,
        key: str = "",
    ) -> None:
        key, label = key_and_label(key, label)
        self.serializer = serializer or self.default_serializer
        self.deserializer = deserializer or self.default_deserializer
        self.key = key
        self.label = label
        self.description = description
        self.required = required
        self.nullable = nullable
        self.default = default
        self.default_data = MISSING if default is MISSING else self.serialize(default)
        self.data_constraint = And(
            *self.default_data_constraints, *extra_data_constraints
        )
        self.object_constraint = And(
            *self.default_object_constraints, *extra_object_constraints
        )
        self.choices = tuple(choices)
        data_choices = [self.serialize(choice) for choice in self.choices]
        if self.choices:
            self.data_constraint &= Choices(data_choices)
            self.object_constraint &= Choices(self.choices)
        if self.nullable:
            self.data_constraint |= is_null
            self.object_constraint |= is_null
        else:
            self.data_constraint &= not_null
            self.object_constraint &= not_null
        self.data_constraint = self.data_constraint.simplify()
        self.object_constraint = self.object_constraint.simplify()

    def __str__(self):
        return self.label or self.key

    def serialize(self, obj: T) -> D:
        return self.serializer.serialize(obj) if obj is not None else None

    def deserialize(self, data: D, path: Sequence[str] = ()) -> T:
        if data is None:
            return None
        return self.deserializer.deserialize(data)

    def inner_data_schema(self):
        schema = super().inner_data_schema()
        if self.description:
            schema["description"] = self.description
        return schema


class IntField(BasicField[int, int]):
    default_serializer = FunctionSerializer(int)
    default_deserializer = FunctionDeserializer(int, "Must be an integer.")
    default_data_constraints = (is_int,)
    default_object_constraints = (is_int,)


class CountField(IntField):
    """
    A positive integer, such as a degree or a size.
    """

    default_data_constraints = (is_int, GE(1))
    default_object_constraints = (is_int, GE(1))


class StrField(BasicField[str, str]):
    default_serializer = FunctionSerializer(str)
    default_deserializer = FunctionDeserializer(str, "Must be a string.")
    default_data_constraints = (is_str,)
    default_object_constraints = (is_str,)


class NamesField(BasicField[list, tuple]):
    """
    Element names, kept as a tuple.
    """

    default_serializer = FunctionSerializer(list)
    default_deserializer = FunctionDeserializer(tuple, "Must be a list of names.")
    default_data_constraints = (is_list_of_str,)


class IndicesField(BasicField[list, tuple]):
    default_serializer = FunctionSerializer(list)
    default_deserializer = FunctionDeserializer(tuple, "Must be a list of indices.")
    default_data_constraints = (is_list_of_int, EachItem(GE(0)))


class PairsField(BasicField[list, list]):
    """
    Pairs of indices, such as the `leq` relation of a preorder.
    """

    default_serializer = sorted_pairs
    default_deserializer = FunctionDeserializer(
        lambda pairs: [tuple(p) for p in pairs], "Must be a list of index pairs."
    )
    default_data_constraints = (
        list_of(is_index_pair, "Must be a list of index pairs."),
    )


class TableField(BasicField[list, tuple]):
    """
    A square table of indices, such as a Cayley table.
    """

    default_serializer = nested_lists
    default_deserializer = tuple_rows
    default_data_constraints = (is_square_table,)


class RowsField(BasicField[list, tuple]):
    """
    Rows of indices, not necessarily of the same length.
    """

    default_serializer = nested_lists
    default_deserializer = tuple_rows
    default_data_constraints = (
        list_of(is_list_of_int, "Must be a list of lists of integers."),
    )


class NameRowsField(BasicField[list, tuple]):
    default_serializer = nested_lists
    default_deserializer = tuple_rows
    default_data_constraints = (
        list_of(is_list_of_str, "Must be a list of lists of names."),
    )


class CyclesField(BasicField[list, list]):
    """
    Permutations in cycle notation.
    """

    default_serializer = FunctionSerializer(list)
    default_deserializer = FunctionDeserializer(list, "Must be a list of permutations.")
    default_data_constraints = (
        is_list,
        EachItem(is_cycle_notation),
    )


def separated_field(
    separator: str, items_type: type = str, iterable_type: type = list, **kwargs
) -> BasicField:
    """
    A field read from one string, such as a command line value.

    >>> field = separated_field(";", key="generators")
    >>> field.make_object("(1 2);(1 2 3)")
    ['(1 2)', '(1 2 3)']
    """
    d = dict(
        serializer=FunctionSerializer(lambda items: separator.join(map(str, items))),
        deserializer=SplitDeserializer(separator, items_type, iterable_type),
        extra_data_constraints=[is_str] + kwargs.pop("extra_data_constraints", []),
    )
    return BasicField(**(d | kwargs))
