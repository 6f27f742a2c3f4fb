from itertools import product
from math import factorial

import pytest

from localic.exceptions import InvalidAction
from localic.groups import cyclic
from localic.groups import symmetric
from localic.gsets import natural
from localic.gsets import regular
from localic.gsets import trivial
from localic.locale import enumerate_points
from localic.settings import EngineSettings
from localic.wraith import ActionPresentation
from localic.wraith import Kind
from localic.wraith import action_from_gset
from localic.wraith import check_action_equations
from localic.wraith import check_cover_equations
from localic.wraith import is_transitive
from localic.wraith import l_fix
from localic.wraith import structure_map
from localic.wraith import verify_groupoid_laws
from localic.wraith import wraith_points
from localic.wraith import wraith_site


def counted(kind, n, m):
    if kind == Kind.RELATIONS:
        return 2 ** (n * m)
    if kind == Kind.FUNCTIONS:
        return m**n
    return factorial(n) if n == m else 0


@pytest.mark.parametrize("kind", list(Kind))
@pytest.mark.parametrize("n, m", list(product(range(4), repeat=2)))
def test_point_counts(kind, n, m):
    assert len(wraith_points(kind, range(n), range(m))) == counted(kind, n, m)


@pytest.mark.parametrize(
    "kind, n, m, expected",
    [
        (Kind.RELATIONS, 2, 2, 16),
        (Kind.FUNCTIONS, 2, 3, 9),
        (Kind.FUNCTIONS, 2, 0, 0),
        (Kind.BIJECTIONS, 3, 3, 6),
        (Kind.BIJECTIONS, 0, 0, 1),
    ],
)
def test_counting_formula(kind, n, m, expected):
    assert counted(kind, n, m) == expected


def test_bijection_points_are_the_bijections():
    points = wraith_points(Kind.BIJECTIONS, "ab", "xy")
    assert sorted(sorted(p) for p in points) == [
        [("a", "x"), ("b", "y")],
        [("a", "y"), ("b", "x")],
    ]


def test_bijections_two_by_two_have_eight_covers():
    assert len(wraith_site(Kind.BIJECTIONS, "12", "12").site.covers) == 8


def test_kind_aliases():
    assert Kind.parse("func") is Kind.FUNCTIONS
    assert Kind.parse("transformations") is Kind.FUNCTIONS
    assert Kind.parse("relations") is Kind.RELATIONS
    with pytest.raises(ValueError, match="Unknown kind"):
        Kind.parse("groups")


SIZES = ["", "1", "12"]


@pytest.mark.parametrize("kind", list(Kind))
@pytest.mark.parametrize("x, y, z", list(product(SIZES, repeat=3)))
def test_groupoid_laws(kind, x, y, z):
    report = verify_groupoid_laws(kind, x, y, z)
    assert report.status == "pass", report.failures()


@pytest.mark.parametrize("kind", [Kind.RELATIONS, Kind.FUNCTIONS])
@pytest.mark.parametrize("x, y, z", list(product(["1", "12"], repeat=3)))
def test_corrupted_comultiplication_is_caught(kind, x, y, z):
    report = verify_groupoid_laws(kind, x, y, z, corrupt=True)
    assert report.status == "fail"


@pytest.mark.parametrize("x", ["1", "12"])
@pytest.mark.parametrize("z", ["1", "12"])
def test_corrupted_bijections_are_caught(x, z):
    report = verify_groupoid_laws(Kind.BIJECTIONS, x, x, z, corrupt=True)
    assert report.status == "fail"
    assert any(key.startswith("counit") for key in report.failures())


def test_corrupted_middle_of_one_fails_coassociativity():
    report = verify_groupoid_laws(Kind.FUNCTIONS, "12", "12", "1", corrupt=True)
    assert any(key.startswith("coassociativity") for key in report.failures())


def test_nothing_to_corrupt():
    with pytest.raises(ValueError, match="No generators"):
        verify_groupoid_laws(Kind.RELATIONS, "", "12", "1", corrupt=True)


def test_laws_on_the_lazy_engine():
    report = verify_groupoid_laws(
        Kind.BIJECTIONS, "12", "12", "12", EngineSettings(engine="lazy")
    )
    assert report.engine.startswith("lazy")
    assert report.status == "pass"


def test_structure_maps_are_morphisms():
    structure_map("m", "12", "12", "12")
    structure_map("e", "123")
    structure_map("iota", "12", "12")
    with pytest.raises(ValueError, match="Only bijections"):
        structure_map("iota", "1", "1", kind=Kind.FUNCTIONS)
    with pytest.raises(ValueError, match="Unknown structure map"):
        structure_map("rho", "1")


@pytest.mark.parametrize("kind", list(Kind))
def test_cover_equations(kind):
    assert check_cover_equations(wraith_site(kind, "12", "123"))


class TestActions:
    def test_regular_action(self):
        act = action_from_gset(regular(cyclic(3)))
        assert act.report.status == "pass"
        assert sorted(act.mu(0, 2)) == [2]
        assert is_transitive(act)

    def test_natural_action_of_s3(self):
        s3 = symmetric(3)
        act = action_from_gset(natural(s3))
        assert act.report
        assert len(l_fix(act, 0)) == 2

    def test_intransitive(self):
        act = action_from_gset(trivial(cyclic(2), ["a", "b"]))
        assert not is_transitive(act)
        assert act.report

    def test_broken_presentation(self):
        z2 = cyclic(2)
        good = action_from_gset(regular(z2))
        swapped = ActionPresentation(
            z2, good.carrier, (good.mu_star[1], good.mu_star[0])
        )
        report = check_action_equations(swapped)
        assert report.status == "fail"
        assert "counit" in report.failures()

    def test_l_fix_must_be_a_subgroup(self):
        z2 = cyclic(2)
        act = ActionPresentation(z2, ("a",), ((frozenset([1]),),))
        with pytest.raises(InvalidAction, match="not a subgroup"):
            l_fix(act, 0)

    def test_large_actions_skip_the_frame_map(self):
        act = action_from_gset(regular(symmetric(3)), EngineSettings(max_generators=4))
        assert any("not checked as a frame map" in n for n in act.report.notes)


def test_points_of_lazy_and_full_agree_on_functions():
    ws = wraith_site(Kind.FUNCTIONS, "12", "12")
    assert enumerate_points(ws.site, EngineSettings(engine="lazy")) == enumerate_points(
        ws.site, EngineSettings(engine="full")
    )
