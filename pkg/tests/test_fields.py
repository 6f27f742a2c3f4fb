import pytest

from localic.exceptions import DeserializationError
from localic.exceptions import InputErrors
from localic.fields import CountField
from localic.fields import CyclesField
from localic.fields import IndicesField
from localic.fields import IntField
from localic.fields import NamesField
from localic.fields import PairsField
from localic.fields import StrField
from localic.fields import TableField
from localic.fields import separated_field
from tests.utils import validate_json


class TestOrdersField:
    @pytest.fixture
    def field(self):
        return separated_field(",", int, key="orders")

    def test_make_object(self, field):
        assert field.make_object("2,4,8") == [2, 4, 8]

    def test_whitespace_and_empty_items(self, field):
        assert field.make_object(" 2, 4 ,,8,") == [2, 4, 8]

    def test_serialize(self, field):
        assert field.serialize([2, 4, 8]) == "2,4,8"

    @pytest.mark.parametrize("data", [1, None, ["2", "4"]])
    def test_not_a_string(self, field, data):
        with pytest.raises(InputErrors):
            field.make_object(data)

    def test_bad_item(self, field):
        with pytest.raises(DeserializationError, match="separated list of int"):
            field.make_object("2,x")

    def test_schema(self, field):
        validate_json("2,4", field.data_schema())


def test_separated_tuple():
    field = separated_field(";", iterable_type=tuple, key="generators")
    assert field.make_object("(1 2);(1 2 3)") == ("(1 2)", "(1 2 3)")


def test_choices():
    field = IntField(key="engine_level", choices=[1, 2])
    assert field.make_object(1) == 1
    with pytest.raises(InputErrors):
        field.make_object(3)


def test_nullable():
    field = StrField(key="name", nullable=True)
    assert field.make_object(None) is None
    with pytest.raises(InputErrors):
        StrField(key="name").make_object(None)


@pytest.mark.parametrize("data", [0, -3, "4", 2.5])
def test_count_rejects(data):
    with pytest.raises(InputErrors):
        CountField(key="degree").make_object(data)


def test_count_default_in_schema():
    field = CountField(key="samples", default=200, required=False)
    schema = field.data_schema()
    assert schema["default"] == 200
    validate_json(5, schema)


def test_names_are_a_tuple():
    field = NamesField(key="elements")
    assert field.make_object(["a", "b"]) == ("a", "b")
    assert field.serialize(("a", "b")) == ["a", "b"]


@pytest.mark.parametrize("data", [["0"], [[0], 2], [0, -1]])
def test_indices_reject(data):
    with pytest.raises(InputErrors):
        IndicesField(key="identities").make_object(data)


class TestPairsField:
    @pytest.fixture
    def field(self):
        return PairsField(key="leq")

    def test_make_object(self, field):
        assert field.make_object([[1, 0], [0, 0]]) == [(1, 0), (0, 0)]

    def test_serialize_sorts(self, field):
        assert field.serialize({(1, 0), (0, 0)}) == [[0, 0], [1, 0]]

    @pytest.mark.parametrize("data", [[[0]], [[0, 1, 2]], [["a", "b"]], [0, 1]])
    def test_bad_pairs(self, field, data):
        with pytest.raises(InputErrors) as e:
            field.make_object(data)
        assert e.value.as_dict() == {"": "Must be a list of index pairs."}


class TestTableField:
    @pytest.fixture
    def field(self):
        return TableField(key="cayley")

    def test_make_object(self, field):
        assert field.make_object([[0, 1], [1, 0]]) == ((0, 1), (1, 0))

    @pytest.mark.parametrize("data", [[[0, 1], [1]], [[0, 1]], "01", [["0"]]])
    def test_not_square(self, field, data):
        with pytest.raises(InputErrors):
            field.make_object(data)


class TestCyclesField:
    @pytest.fixture
    def field(self):
        return CyclesField(key="generators")

    def test_make_object(self, field):
        assert field.make_object(["()", "(1 2)(3 4)"]) == ["()", "(1 2)(3 4)"]

    @pytest.mark.parametrize("data", [["1 2"], "(1 2)", [["(1 2)"]], ["(a b)"]])
    def test_bad_cycles(self, field, data):
        with pytest.raises(InputErrors):
            field.make_object(data)
