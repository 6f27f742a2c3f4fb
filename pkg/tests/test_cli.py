import json

import pytest

from localic.cli import expected_points
from localic.cli import main
from localic.wraith import Kind


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


class TestExitCodes:
    def test_pass(self, capsys):
        code, out, _ = run(capsys, "site", "verify-atomic", "--group", "Z4")
        assert code == 0
        assert "status: pass" in out

    def test_fail(self, capsys):
        code, out, _ = run(
            capsys, "site", "verify-atomic", "--group", "S3", "--max-size", "3"
        )
        assert code == 2
        assert "FAIL" in out

    def test_unknown_group(self, capsys):
        code, _, err = run(capsys, "group", "define", "--group", "Z0y")
        assert code == 1
        assert "--group:" in err

    def test_unknown_element(self, capsys):
        code, _, err = run(
            capsys, "galois", "check", "--group", "S3", "--subgroup", "(1 4)"
        )
        assert code == 1
        assert "--subgroup" in err

    def test_over_capacity(self, capsys):
        code, _, err = run(
            capsys, "group", "define", "--group", "Z8", "--max-group-order", "4"
        )
        assert code == 3
        assert "capacity: Z8 has order 8" in err

    def test_bad_flag(self, capsys):
        with pytest.raises(SystemExit) as e:
            main(["galois", "check", "--group", "S3"])
        assert e.value.code == 1

    def test_bad_settings(self, capsys):
        code, _, err = run(capsys, "group", "define", "--group", "Z2", "--budget", "-1")
        assert code == 1
        assert "settings: Bounds must be positive." in err

    @pytest.mark.parametrize("flag", ["--budget", "--samples", "--max-group-order"])
    def test_zero_is_not_a_default(self, capsys, flag):
        code, _, err = run(capsys, "group", "define", "--group", "Z2", flag, "0")
        assert code == 1
        assert "settings: Bounds must be positive." in err


class TestDocuments:
    def test_group_file(self, capsys, tmp_path):
        path = tmp_path / "z3.json"
        path.write_text(json.dumps({"cayley": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}))
        code, result = run_json(capsys, "group", "define", "--group-file", str(path))
        assert code == 0
        assert result["report"]["data"]["order"] == 3

    def test_malformed_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"cayley": [[0, 1], [1, 1]]}))
        code, _, err = run(capsys, "group", "define", "--group-file", str(path))
        assert code == 1
        assert "cayley: 1 has no inverse." in err

    def test_functor_file(self, capsys, tmp_path):
        functor = {
            "category": {
                "objects": ["*"],
                "arrows": [
                    {"name": "e", "source": 0, "target": 0},
                    {"name": "s", "source": 0, "target": 0},
                ],
                "composition": [[0, 1], [1, 0]],
                "identities": [0],
            },
            "values": [["0", "1"]],
            "maps": [[0, 1], [1, 0]],
        }
        path = tmp_path / "regular.json"
        path.write_text(json.dumps(functor))
        code, out, _ = run(
            capsys, "enrich", "points", "--functor-file", str(path), "--kind", "bij"
        )
        assert code == 0
        assert "note: 2 points" in out


class TestReports:
    def test_galois_check(self, capsys):
        code, out, _ = run(
            capsys, "galois", "check", "--group", "S3", "--subgroup", "(1 2)"
        )
        assert code == 0
        assert "note: not Galois, |Aut|=1" in out

    def test_galois_closure(self, capsys):
        code, result = run_json(
            capsys, "galois", "closure", "--group", "S3", "--subgroup", "(1 2)"
        )
        assert code == 0
        assert len(result["report"]["data"]["closure"]) == 6

    def test_locale_points(self, capsys):
        code, out, _ = run(
            capsys, "locale", "points", "--kind", "bij", "--x", "3", "--y", "3"
        )
        assert code == 0
        assert "note: 6 points" in out

    def test_chain_factor(self, capsys):
        code, result = run_json(
            capsys, "chain", "factor", "--cyclic", "2,4,8", "--subgroup", "4"
        )
        assert code == 0
        assert result["report"]["data"]["stage"] == 2
        assert result["report"]["data"]["group"] == "Z4"

    def test_bad_orders(self, capsys):
        code, _, err = run(capsys, "chain", "verify", "--cyclic", "2,x")
        assert code == 1
        assert "--cyclic:" in err

    def test_envelope(self, capsys):
        _, result = run_json(capsys, "site", "verify-atomic", "--group", "Z2")
        assert result["command"] == "site verify-atomic"
        assert len(result["inputs"]) == 64
        assert result["report"]["status"] == "pass"


class TestStableOutput:
    argv = ("locale", "points", "--kind", "func", "--x", "2", "--y", "2", "--json")

    def test_same_bytes(self, capsys):
        _, first, _ = run(capsys, *self.argv)
        _, second, _ = run(capsys, *self.argv)
        assert first == second

    def test_digest_follows_inputs(self, capsys):
        _, plain = run_json(capsys, *self.argv[:-1])
        _, seeded = run_json(capsys, *self.argv[:-1], "--seed", "7")
        assert plain["inputs"] != seeded["inputs"]
        assert plain["report"] == seeded["report"]

    def test_digest_ignores_presentation(self, capsys):
        _, quiet = run_json(capsys, *self.argv[:-1])
        _, loud = run_json(capsys, *self.argv[:-1], "-v")
        assert quiet["inputs"] == loud["inputs"]


@pytest.mark.parametrize(
    "kind, n, m, expected",
    [
        (Kind.RELATIONS, 2, 2, 16),
        (Kind.FUNCTIONS, 3, 2, 8),
        (Kind.BIJECTIONS, 3, 3, 6),
        (Kind.BIJECTIONS, 2, 3, 0),
    ],
)
def test_expected_points(kind, n, m, expected):
    assert expected_points(kind, n, m) == expected
