import json
from importlib import resources

import jsonschema
import numpy as np
import pytest

from graphcontrol.cli import main, read_target
from graphcontrol.census import canonical_form
from graphcontrol.graph import from_graph6, path, to_graph6

P3 = to_graph6(path(3))
P7 = to_graph6(path(7))


def schema(kind):
    text = resources.files("graphcontrol").joinpath(f"schemas/{kind}.schema.json").read_text()
    return json.loads(text)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    doc = json.loads(out)
    jsonschema.validate(doc, schema(doc["kind"]))
    assert doc["schema_version"] == 1
    return code, doc


class TestCheck:
    def test_p2_end_controllable(self, capsys):
        code, doc = run_json(capsys, "check", "--graph", "A_", "--subset", "0")
        assert code == 0 and doc["controllable"] and doc["det"] == "1"

    def test_p3_all_not_controllable(self, capsys):
        code, doc = run_json(capsys, "check", "--graph", P3, "--subset", "all")
        assert code == 2 and not doc["controllable"] and doc["gcd_degree"] is None

    def test_garbage(self, capsys):
        code, out, err = run(capsys, "check", "--graph", "garbage")
        assert code == 1 and "error" in err and out == ""

    def test_bad_subset(self, capsys):
        code, _, err = run(capsys, "check", "--graph", P3, "--subset", "5")
        assert code == 1 and "out of range" in err

    def test_plain_and_csv(self, capsys):
        assert run(capsys, "check", "--graph", "A_", "--subset", "0", "--format", "plain")[1].startswith("A_")
        code, out, _ = run(capsys, "check", "--graph", "A_", "--subset", "0", "--format", "csv")
        assert out.splitlines()[0].startswith("graph6,subset,controllable")

    def test_missing_argument_is_error(self, capsys):
        assert run(capsys, "check")[0] == 1


def test_walk_matrix_p7(capsys):
    code, doc = run_json(capsys, "walk-matrix", "--graph", P7, "--subset", "0")
    assert code == 0
    assert doc["matrix"][0] == ["1", "0", "1", "0", "2", "0", "5"]
    assert doc["matrix"][1] == ["0", "1", "0", "2", "0", "5", "0"]


def test_charpoly_p3(capsys):
    code, doc = run_json(capsys, "charpoly", "--graph", P3)
    assert code == 0 and doc["polynomial"] == "t^3 - 2t"
    assert [int(c) for c in doc["coefficients"]] == [0, -2, 0, 1]


@pytest.mark.parametrize("mode", ["exact", "float"])
def test_lie_dim(capsys, mode):
    code, doc = run_json(capsys, "lie-dim", "--graph", "A_", "--subset", "0", "--mode", mode)
    assert code == 0 and doc["real_dim"] == 4 and doc["skew_dim"] == 4
    assert run(capsys, "lie-dim", "--graph", "A_", "--subset", "0", "--format", "plain")[1].strip() == "4"


def test_lie_dim_not_full(capsys):
    code, doc = run_json(capsys, "lie-dim", "--graph", P3, "--subset", "1")
    assert code == 2 and doc["lemma_holds"] and not doc["full"]


def test_cone(capsys):
    code, doc = run_json(capsys, "cone", "--graph", P3, "--subset", "0")
    assert code == 0 and doc["theorem_holds"] and doc["cone_controllable"]


def test_attach_path(capsys):
    code, doc = run_json(capsys, "attach-path", "--graph", "A_", "--subset", "0", "--m", "1")
    assert canonical_form(from_graph6(doc["result_graph6"]))[0] == canonical_form(path(3))[0]
    assert code == 2 and not doc["controllable"]


class TestCensusCommand:
    def test_six(self, capsys, tmp_path):
        out_file = tmp_path / "found.g6"
        code, doc = run_json(capsys, "census", "--n", "6", "--graphs-out", str(out_file))
        assert code == 0 and doc["controllable"] == 8 and doc["connected"] == 112
        lines = out_file.read_text().splitlines()
        assert len(lines) == 8
        code, again = run_json(capsys, "census", "--n", "6", "--from-file", str(out_file))
        assert again["controllable"] == 8 and again["connected"] == 8

    def test_five(self, capsys):
        assert run_json(capsys, "census", "--n", "5")[1]["controllable"] == 0

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "census", "--n", "6", "--format", "csv")
        rows = out.splitlines()
        assert rows[0] == "n,connected,controllable,degree_sequence,count" and len(rows) == 9

    def test_every_singleton(self, capsys):
        code, doc = run_json(capsys, "census", "--n", "4", "--mode", "every-singleton")
        assert "beyond_paper" in doc

    def test_guard(self, capsys):
        assert run(capsys, "census", "--n", "9")[0] == 1

    def test_bad_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.g6"
        bad.write_text("A_\n!!\n")
        assert run(capsys, "census", "--from-file", str(bad))[0] == 1


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "4")
    assert code == 0 and len(out.split()) == 6


class TestSynthesizeCommand:
    def test_identity(self, capsys):
        code, doc = run_json(capsys, "synthesize", "--graph", "A_", "--subset", "0", "--target", "identity", "--K", "2")
        assert code == 0 and doc["infidelity"] < 1e-12

    def test_permutation_csv(self, capsys, tmp_path):
        sched = tmp_path / "s.csv"
        code, doc = run_json(
            capsys, "synthesize", "--graph", P3, "--subset", "0", "--target", "perm:1,2,0", "--K", "8",
            "--schedule-csv", str(sched),
        )
        assert code == 0 and doc["reached_target"]
        rows = sched.read_text().splitlines()
        assert rows[0] == "segment,s,t" and len(rows) == 9

    def test_target_file(self, capsys, tmp_path):
        U = np.array([[0, 1], [1, 0]], dtype=complex)
        f = tmp_path / "target.txt"
        f.write_text("2\n" + "\n".join(f"{z.real} {z.imag}" for z in U.ravel()) + "\n")
        assert np.allclose(read_target(str(f), 2), U)
        code, doc = run_json(capsys, "synthesize", "--graph", "A_", "--subset", "0", "--target", str(f))
        assert code == 0

    def test_bad_target_file(self, capsys, tmp_path):
        f = tmp_path / "target.txt"
        f.write_text("2\n1 0\n")
        assert run(capsys, "synthesize", "--graph", "A_", "--subset", "0", "--target", str(f))[0] == 1

    def test_uncontrollable_pair_returns_negative(self, capsys):
        code, out, err = run(
            capsys, "synthesize", "--graph", P3, "--subset", "1", "--target", "haar:4", "--K", "3", "--restarts", "2",
        )
        assert code == 2 and "not controllable" in err
