import json

import jsonschema
import pytest

from localic.documents import dump
from localic.documents import form
from localic.documents import load
from localic.documents import load_file
from localic.documents import point_to_data
from localic.documents import schema
from localic.exceptions import InputErrors
from localic.groups import symmetric
from localic.locale import enumerate_points
from localic.prodiscrete import cyclic_chain
from localic.wraith import Kind
from localic.wraith import wraith_site
from tests.utils import regular_functor
from tests.utils import walking_arrow
from tests.utils import validate_json


@pytest.fixture
def site_data():
    return {
        "name": "arrow",
        "base": {"elements": ["a", "b", "c"], "leq": [[0, 1], [1, 2]]},
        "covers": [{"target": ["c"], "family": [["a"], ["b"]]}],
    }


@pytest.fixture
def chain_data():
    return {
        "stages": [
            {"name": "Z2", "cayley": [[0, 1], [1, 0]]},
            {"permutations": [["(1 2 3 4)"], 4], "name": "Z4"},
        ],
        "transitions": [[0, 1, 0, 1]],
    }


class TestSite:
    def test_load(self, site_data):
        site = load("site", site_data)
        assert site.name == "arrow"
        assert site.base.le(0, 2)
        assert site.describe_cover(0) == "[⟨c⟩] ≤ ⋁{[⟨a⟩], [⟨b⟩]}"

    def test_closure_is_logged(self, site_data, caplog):
        with caplog.at_level("INFO", logger="localic.documents"):
            load("site", site_data)
        assert "pairs added" in caplog.text

    def test_schema(self, site_data):
        validate_json(site_data, schema("site"))
        validate_json(dump("site", load("site", site_data)), schema("site"))

    def test_schema_rejects(self, site_data):
        del site_data["covers"]
        with pytest.raises(jsonschema.ValidationError):
            validate_json(site_data, schema("site"))

    def test_missing_key(self, site_data):
        del site_data["covers"][0]["target"]
        with pytest.raises(InputErrors) as info:
            load("site", site_data)
        [(path, message)] = info.value.as_dict().items()
        assert path == "covers.0"
        assert "target" in message

    def test_unknown_name(self, site_data):
        site_data["covers"][0]["family"] = [["d"]]
        with pytest.raises(InputErrors) as info:
            load("site", site_data)
        assert list(info.value.as_dict()) == ["covers.0"]

    def test_every_problem_is_reported(self, site_data):
        site_data["base"]["elements"] = "abc"
        site_data["covers"] = [{"target": 1, "family": []}]
        with pytest.raises(InputErrors) as info:
            load("site", site_data)
        assert set(info.value.as_dict()) == {"base.elements", "covers.0.target"}


class TestGroup:
    def test_permutations(self):
        group = load("group", {"permutations": [["(1 2)", "(1 2 3)"], 3]})
        assert group.table == symmetric(3).table
        assert group.name == "⟨(1 2), (1 2 3)⟩"

    def test_labels(self):
        group = load("group", {"cayley": [[0, 1], [1, 0]], "labels": ["e", "s"]})
        assert group.labels == ("e", "s")
        assert group.name == "G"

    def test_one_presentation(self):
        with pytest.raises(InputErrors) as info:
            load("group", {"cayley": [[0]], "permutations": [[], 1]})
        assert list(info.value.as_dict()) == [""]

    def test_not_a_group(self):
        with pytest.raises(InputErrors) as info:
            load("group", {"cayley": [[0, 1], [1, 1]]})
        assert info.value.as_dict() == {"cayley": "1 has no inverse."}

    def test_bad_cycles(self):
        with pytest.raises(InputErrors):
            load("group", {"permutations": [["(1 5)"], 3]})


class TestChain:
    def test_load(self, chain_data):
        chain = load("chain", chain_data)
        assert [len(g) for g in chain.stages] == [2, 4]
        assert chain.kernels[0] == frozenset([0, 2])

    def test_round_trip(self):
        chain = cyclic_chain([2, 4, 8])
        data = dump("chain", chain)
        validate_json(data, schema("chain"))
        assert load("chain", data) == chain

    def test_transition_count(self, chain_data):
        chain_data["transitions"].append([0])
        with pytest.raises(InputErrors) as info:
            load("chain", chain_data)
        assert info.value.as_dict() == {"transitions": "2 stages need 1 transitions."}

    def test_nested_stage_error(self, chain_data):
        chain_data["stages"][0]["cayley"] = [[0, 1], [1, 1]]
        with pytest.raises(InputErrors) as info:
            load("chain", chain_data)
        assert list(info.value.as_dict()) == ["stages.0.cayley"]

    def test_not_a_hom(self, chain_data):
        chain_data["transitions"] = [[0, 1, 1, 0]]
        with pytest.raises(InputErrors) as info:
            load("chain", chain_data)
        assert list(info.value.as_dict()) == ["transitions.0"]


class TestCategoryAndFunctor:
    def test_functor(self):
        functor = regular_functor()
        data = dump("functor", functor)
        validate_json(data, schema("functor"))
        assert load("functor", data) == functor

    def test_not_functorial(self):
        data = dump("functor", regular_functor())
        data["maps"][1] = [0, 0]
        with pytest.raises(InputErrors) as info:
            load("functor", data)
        assert list(info.value.as_dict()) == ["maps"]

    def test_bad_identity(self):
        data = dump("category", walking_arrow())
        data["identities"] = [1, 2]
        with pytest.raises(InputErrors) as info:
            load("category", data)
        assert list(info.value.as_dict()) == ["identities.0"]


class TestFiles:
    def test_load_file(self, tmp_path, chain_data):
        path = tmp_path / "chain.json"
        path.write_text(json.dumps(chain_data))
        assert len(load_file("chain", str(path))) == 2

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputErrors, match="Can't read"):
            load_file("site", str(tmp_path / "missing.json"))

    def test_not_json(self, tmp_path):
        path = tmp_path / "site.json"
        path.write_text("{")
        with pytest.raises(InputErrors, match="is not JSON"):
            load_file("site", str(path))

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="Unknown document kind"):
            form("tower")


def test_point_to_data():
    points = enumerate_points(wraith_site(Kind.BIJECTIONS, ["0", "1"], ["0", "1"]).site)
    assert sorted(point_to_data(p) for p in points) == [["0|0", "1|1"], ["0|1", "1|0"]]


def test_arrow_out_of_range():
    data = dump("category", walking_arrow())
    data["composition"][2][1] = 7
    with pytest.raises(InputErrors) as info:
        load("category", data)
    assert info.value.as_dict() == {"composition.2.1": "No arrow 7."}
