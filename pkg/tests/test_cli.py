import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from distset import io
from distset.cli import run
from distset.constructors import build_cantor_ultrametric, build_discrete_ultrametric, glue_spaces, GlueSchedule
from distset.metrics import spectrum

FIX = Path(__file__).parent / "fixtures"
F = Fraction


def fx(name):
    return str(FIX / name)


@pytest.fixture
def glue_file(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    out = tmp_path / "g.json"
    assert run(["build", "lemma1", "--set", fx("set_glue1.json"), "-o", str(a)]) == 0
    assert run(["build", "lemma1", "--set", fx("set_glue2.json"), "-o", str(b)]) == 0
    assert run(["build", "glue", "--pieces", str(a), str(b), "--deltas", "1/2,3/2", "-o", str(out)]) == 0
    return out


def test_build_lemma1_then_verify(tmp_path, capsys):
    out = tmp_path / "X.json"
    assert run(["build", "lemma1", "--set", fx("set_lemma1.json"), "-o", str(out)]) == 0
    assert run(["verify", str(out), "--ultrametric"]) == 0
    assert capsys.readouterr().out.strip() == "PASS"
    X = io.space_from_json(json.loads(out.read_text()))
    assert X == build_discrete_ultrametric([1, 2])
    assert json.loads(out.read_text())["construction"] == "lemma1"


def test_dist_on_glue(glue_file, capsys):
    capsys.readouterr()
    assert run(["dist", str(glue_file)]) == 0
    assert capsys.readouterr().out.strip() == "{0, 1/2, 3/2}"


def test_space_file_round_trip(glue_file):
    text = glue_file.read_text()
    X = io.space_from_json(json.loads(text))
    assert io.dump_json(io.space_to_json(X)) == text


def test_csv_export(glue_file, tmp_path):
    out = tmp_path / "m.csv"
    assert run(["dist", str(glue_file), "--csv", str(out)]) == 0
    rows = out.read_text().splitlines()
    assert rows[0].split(",")[1] == "0:x0"
    assert rows[1].split(",")[1:3] == ["0", "1/2"]


def test_realize_rejects_non_metric_triple(capsys):
    assert run(["realize", "--triples", fx("triples_not_metric.json"), "--kmax", "3"]) == 2
    err = capsys.readouterr().err
    assert "triples[0]" in err and "triangle inequality" in err


def test_realize_sat_and_unsat(tmp_path, capsys):
    out = tmp_path / "w.json"
    assert run(["realize", "--triples", fx("triples_mixed.json"), "--kmax", "5", "-o", str(out)]) == 0
    w = json.loads(out.read_text())
    assert w["k"] == 4 and len(w["edges"]) == 6
    X = io.space_from_json(w["space"])
    assert {tuple(map(str, t)) for t in spectrum(X, 3, distinct=True).tuples} == {
        ("1", "1", "1"),
        ("1", "1", "2"),
        ("1", "2", "2"),
    }
    assert run(["realize", "--triples", fx("triples_unsat.json"), "--kmax", "5"]) == 1
    assert "UNSAT" in capsys.readouterr().out


def test_broken_json_is_line_anchored(capsys):
    assert run(["realize", "--triples", fx("triples_broken_json.json")]) == 2
    assert "triples_broken_json.json:2:" in capsys.readouterr().err


def test_missing_file_and_bad_args(capsys):
    assert run(["dist", "/nonexistent.json"]) == 2
    assert run(["nosuchcommand"]) == 2
    assert run(["build", "cantor", "--d", "1/4,1/2"]) == 2


def test_build_cantor_and_spec(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert run(["build", "cantor", "--dseq", fx("dseq_cantor.json"), "--depth", "3", "-o", str(out)]) == 0
    assert io.space_from_json(json.loads(out.read_text())) == build_cantor_ultrametric([F(1, 2), F(1, 4), F(1, 8)], 3)
    capsys.readouterr()
    assert run(["spec", str(out), "-n", "2"]) == 0
    spec = json.loads(capsys.readouterr().out)
    assert spec["tuples"] == [["0"], ["1/8"], ["1/4"], ["1/2"]]
    assert run(["spec", str(out), "-n", "3", "--project", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["tuples"] == spec["tuples"]


def test_spectrum_file_round_trip(tmp_path):
    out = tmp_path / "s.json"
    X = build_discrete_ultrametric([1, 2])
    S = spectrum(X, 3)
    io.dump_json(io.spectrum_to_json(S), out)
    assert io.spectrum_from_json(json.loads(out.read_text())) == S


def test_net(tmp_path, capsys):
    out = tmp_path / "c.json"
    run(["build", "cantor", "--d", "1/2,1/4,1/8", "-o", str(out)])
    capsys.readouterr()
    assert run(["net", str(out), "--eps", "1/4"]) == 0
    assert json.loads(capsys.readouterr().out)["net"] == ["000", "100"]
    assert run(["net", str(out), "--eps", "1/4", "--canonical"]) == 2


def test_tree_builds_and_reports(tmp_path, capsys):
    out = tmp_path / "t.json"
    assert run(["build", "tree", "--tree", fx("tree_epsilon.json"), "-o", str(out)]) == 0
    X = io.space_from_json(json.loads(out.read_text()))
    assert X.d("1100|0,0,0,0", "1110|0,0,0,0") == F(1, 4)
    capsys.readouterr()
    assert run(["verify", str(out), "--report"]) == 0
    report = capsys.readouterr().out
    assert "PASS  split pair bounds" in report and "FAIL" not in report


def test_report_flags_separability_gap(tmp_path, capsys):
    out = tmp_path / "t.json"
    assert run(["build", "compact", "--tree", fx("tree_separability_gap.json"), "-o", str(out)]) == 0
    capsys.readouterr()
    assert run(["verify", str(out), "--report"]) == 1
    lines = capsys.readouterr().out.splitlines()
    assert [l for l in lines if l.startswith("FAIL")] == [
        "FAIL separability bound 2^(1-n) exceeded witness=('111', 2, '110', '3/4')  separability"
    ]


def test_compact_canonical_net(tmp_path, capsys):
    out = tmp_path / "k.json"
    assert run(["build", "compact", "--tree", fx("tree_compact_full3.json"), "-o", str(out)]) == 0
    capsys.readouterr()
    assert run(["net", str(out), "--eps", "1/2", "--canonical"]) == 0
    assert json.loads(capsys.readouterr().out)["net"] == ["001", "010", "100", "110"]


def test_baire_tree_and_glue_report(tmp_path, glue_file, capsys):
    out = tmp_path / "b.json"
    assert run(["build", "tree", "--tree", fx("tree_baire.json"), "-o", str(out)]) == 0
    assert run(["verify", str(out)]) == 0
    assert run(["--seed", "5", "verify", str(glue_file), "--report"]) == 0


def test_scale_subcommand(tmp_path, capsys):
    x = tmp_path / "x.json"
    y = tmp_path / "y.json"
    run(["build", "lemma1", "--set", fx("set_lemma1.json"), "-o", str(x)])
    assert run(["build", "scale", "--space", str(x), "--factor", "3/2", "-o", str(y)]) == 0
    capsys.readouterr()
    run(["dist", str(y)])
    assert capsys.readouterr().out.strip() == "{0, 3/2, 3}"


def test_verify_fail_exit(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"points": ["a", "b", "c"], "matrix": [["0", "1", "3"], ["1", "0", "1"], ["3", "1", "0"]]}))
    assert run(["verify", str(bad)]) == 1
    assert capsys.readouterr().out.startswith("FAIL triangle inequality")


def test_module_entry_point(tmp_path):
    out = tmp_path / "X.json"
    proc = subprocess.run(
        [sys.executable, "-m", "distset", "build", "lemma1", "--set", fx("set_lemma1.json"), "-o", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.exists()
