from localic.verdicts import All
from localic.verdicts import Fails
from localic.verdicts import Holds
from localic.verdicts import Report
from localic.verdicts import Undecided
from localic.verdicts import first_failure
from localic.verdicts import to_json


def test_undecided_is_never_a_pass():
    assert not Undecided("budget")
    assert All(Holds, Undecided("budget")).status == "undecided"


def test_fail_beats_undecided():
    assert All(Undecided("budget"), Fails("broken")).status == "fail"


def test_negate():
    assert Holds.negate("should fail").status == "fail"
    assert Fails("x").negate("unused") is Holds
    assert Undecided("budget").negate("unused").status == "undecided"


def test_first_failure_stops_early():
    seen = []

    def verdicts():
        for v in [Holds, Fails("first"), Fails("second")]:
            seen.append(v)
            yield v

    assert str(first_failure(verdicts())) == "first"
    assert len(seen) == 2


class TestReport:
    def test_exit_codes(self):
        report = Report("r")
        assert report.exit_code == 0
        report.add("a", Undecided("budget"))
        assert report.exit_code == 3
        report.add("b", Fails("no"))
        assert report.exit_code == 2
        assert report.failures() == {"a": Undecided("budget"), "b": Fails("no")}

    def test_include_reroots(self):
        inner = Report("inner", "full")
        inner.add("law", Holds)
        inner.data["size"] = 3
        outer = Report("outer")
        outer.include("part", inner)
        assert list(outer) == [("part", "law")]
        assert outer.data == {"part": {"size": 3}}
        assert outer.engine == "full"

    def test_and_merges(self):
        a, b = Report("a"), Report("b")
        a.add("x", Holds)
        b.add("x", Fails("broken"))
        b.note("a note")
        merged = a & b
        assert merged["x",].status == "fail"
        assert merged.notes == ["a note"]

    def test_render_puts_wall_time_in_text_only(self):
        report = Report("r")
        report.add("law", Fails("broken", witness=["0|1"]))
        text = report.render(1.5)
        assert "wall time: 1.500s" in text
        assert "FAIL      law: broken" in text
        assert "wall" not in str(to_json(report))

    def test_json(self):
        report = Report("r")
        report.add("law", "left", Fails("broken", witness=["0|1"]))
        assert to_json(report)["checks"] == [
            {"check": "law.left", "status": "fail", "message": "broken", "witness": ["0|1"]}
        ]
