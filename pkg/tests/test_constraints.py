import pytest

from localic.constraints import GE
from localic.constraints import LE
from localic.constraints import Comparison
from localic.constraints import HasKeys
from localic.constraints import is_cycle_notation
from localic.constraints import is_index_pair
from localic.constraints import is_square_table
from localic.constraints import to_json


def test_json_ge():
    assert to_json(GE(100)) == ({"minimum": 100}, True)


def test_json_le():
    assert to_json(LE(3)) == ({"maximum": 3}, True)


def test_json_ge_non_number():
    assert to_json(GE("A")) == ({}, False)


def test_json_comparison_unsupported():
    constraint = Comparison(100)
    constraint.operator = lambda x: True
    assert to_json(constraint) == ({}, False)


@pytest.mark.parametrize(
    "text", ["()", "(1 2)", "(1 2 3)(4 5)", "( 1 2 )", "(10 11)"]
)
def test_cycle_notation(text):
    assert is_cycle_notation.satisfied_by(text)


@pytest.mark.parametrize("text", ["", "1 2", "(1 2", "(a b)", "(1,2)x"])
def test_not_cycle_notation(text):
    assert not is_cycle_notation.satisfied_by(text)


@pytest.mark.parametrize(
    "value, expected",
    [([0, 1], True), ([0], False), ([0, 1, 2], False), (["a", "b"], False)],
)
def test_index_pair(value, expected):
    assert is_index_pair.satisfied_by(value) is expected


def test_square_table_rejects_ragged_rows():
    assert is_square_table.satisfied_by([[0]])
    assert not is_square_table.satisfied_by([[0, 1], [1]])
    assert not is_square_table.satisfied_by("no")


def test_has_keys_names_the_missing_key():
    verdict = HasKeys(["base", "covers"]).validate({"base": {}})
    assert not verdict
    assert "covers" in str(verdict)


def test_has_keys_ignores_non_dicts():
    constraint = HasKeys(["base"])
    assert constraint.validate([]) is constraint
