import jsonschema
import pytest

from localic.category import Arrow
from localic.constraints import LE
from localic.constraints import FunctionConstraint
from localic.deserializers import KwargsDeserializer
from localic.documents import arrow_form
from localic.documents import preorder_form
from localic.exceptions import InputErrors
from localic.fields import CountField
from localic.fields import IntField
from localic.fields import StrField
from localic.forms import BasicForm
from localic.forms import VariableListForm
from localic.settings import EngineSettings
from tests.utils import validate_json


class TestListOfOrders:
    @pytest.fixture
    def form(self):
        return VariableListForm(
            IntField(key="*", extra_data_constraints=[LE(24)]),
            label="Orders",
            extra_data_constraints=[FunctionConstraint(lambda x: len(x) < 4)],
        )

    def test_make_object(self, form):
        assert form.make_object([2, 4, 8]) == [2, 4, 8]

    def test_inner_constraint(self, form):
        with pytest.raises(InputErrors) as e:
            form.make_object([2, 48, 8])
        assert list(e.value.as_dict()) == ["1"]

    def test_outer_constraint(self, form):
        with pytest.raises(InputErrors) as e:
            form.make_object([1, 2, 4, 8])
        assert list(e.value.as_dict()) == [""]

    def test_not_a_list(self, form):
        with pytest.raises(InputErrors):
            form.make_object({"0": 2})

    def test_serialize(self, form):
        assert form.serialize([2, 4, 8]) == [2, 4, 8]


class TestArrows:
    @pytest.fixture
    def form(self):
        return VariableListForm(arrow_form(), key="arrows")

    @pytest.fixture
    def data(self):
        return [
            {"name": "1a", "source": 0, "target": 0},
            {"name": "a≤b", "source": 0, "target": 1},
        ]

    def test_make_object(self, form, data):
        assert form.make_object(data) == [Arrow("1a", 0, 0), Arrow("a≤b", 0, 1)]

    def test_serialize(self, form, data):
        assert form.serialize(form.make_object(data)) == data

    def test_nested_path(self, form, data):
        data[1]["target"] = "1"
        with pytest.raises(InputErrors) as e:
            form.make_object(data)
        assert e.value.as_dict() == {"1.target": "Must be an integer."}

    def test_missing_key(self, form, data):
        del data[0]["source"]
        with pytest.raises(InputErrors) as e:
            form.make_object(data)
        assert list(e.value.as_dict()) == ["0"]

    def test_schema(self, form, data):
        schema = form.data_schema()
        validate_json(data, schema)
        data[0]["colour"] = "red"
        with pytest.raises(jsonschema.ValidationError):
            validate_json(data, schema)


class TestPreorderForm:
    @pytest.fixture
    def form(self):
        return preorder_form()

    def test_closed_on_load(self, form):
        preorder = form.make_object({"elements": ["a", "b"], "leq": [[0, 1]]})
        assert preorder.le(0, 1)
        assert not preorder.le(1, 0)
        assert form.serialize(preorder) == {
            "elements": ["a", "b"],
            "leq": [[0, 0], [0, 1], [1, 1]],
        }

    def test_domain_error_location(self, form):
        with pytest.raises(InputErrors) as e:
            form.make_object({"elements": ["a", "a"], "leq": []})
        assert e.value.as_dict() == {"elements": "Element names must be distinct."}

    def test_location_inside_a_parent(self):
        form = BasicForm(
            key="pair", children=[preorder_form("left"), preorder_form("right")]
        )
        data = {
            "left": {"elements": ["a"], "leq": []},
            "right": {"elements": ["b", "b"], "leq": []},
        }
        with pytest.raises(InputErrors) as e:
            form.make_object(data)
        assert e.value.as_dict() == {
            "right.elements": "Element names must be distinct."
        }

    def test_schema_describes(self, form):
        schema = form.data_schema()
        assert schema["required"] == ["elements", "leq"]
        assert "closed on load" in schema["description"]


class TestSettingsForm:
    @pytest.fixture
    def form(self):
        return BasicForm(
            key="settings",
            children=[
                StrField(key="engine", choices=["full", "lazy", "auto"]),
                CountField(key="budget", required=False, default=1000),
                IntField(key="seed", required=False, default=0),
            ],
            deserializer=KwargsDeserializer(EngineSettings, "Not engine settings."),
        )

    def test_defaults(self, form):
        settings = form.make_object({"engine": "lazy"})
        assert settings == EngineSettings(engine="lazy", budget=1000)

    def test_every_problem_reported(self, form):
        with pytest.raises(InputErrors) as e:
            form.make_object({"engine": "fast", "budget": 0})
        assert set(e.value.as_dict()) == {"engine", "budget"}

    def test_unknown_key_fails_schema(self, form):
        with pytest.raises(jsonschema.ValidationError):
            validate_json({"engine": "auto", "samples": 3}, form.data_schema())

    def test_serialize(self, form):
        assert form.serialize(EngineSettings(budget=5, seed=2)) == {
            "engine": "auto",
            "budget": 5,
            "seed": 2,
        }
