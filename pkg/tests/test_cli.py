from __future__ import annotations

import json
import subprocess
import sys

import pytest

from equimult import cli, corpus
from equimult.cli import EXIT_BOUND, EXIT_CORPUS, EXIT_INPUT, EXIT_OK, dump_json, main

MM = {"ring": {"variables": ["x", "y"]}, "module": {"ambient_rank": 2, "generators": [["x", "0"], ["y", "0"], ["0", "x"], ["0", "y"]]}}
U = {"ring": {"variables": ["x", "y"]}, "module": {"ambient_rank": 2, "generators": [["x", "0"], ["0", "x + y"], ["y", "x"]]}}


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_report(tmp_path, capsys):
    code, out, _ = run(capsys, ["report", write(tmp_path, "e.json", MM)])
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["analytic_spread"] == 3 and rep["equimultiple"] is True and rep["ci"] is False
    assert rep["burch"]["status"] == "PASS"
    assert dump_json(rep) == out


def test_fitting_and_spread(tmp_path, capsys):
    f = write(tmp_path, "e.json", MM)
    code, out, _ = run(capsys, ["fitting", f, "--index", "2"])
    assert code == 0 and json.loads(out)["height"] == 2
    code, out, _ = run(capsys, ["fitting", f, "--index", "9"])
    assert json.loads(out)["unit"] is True
    code, out, _ = run(capsys, ["spread", f])
    doc = json.loads(out)
    assert doc["analytic_spread"] == 3
    assert doc["fiber_ideal"] == ["y2*y3 - y1*y4"]
    assert doc["rees_kernel_generator_count"] == 3


def test_rees_power(tmp_path, capsys):
    code, out, _ = run(capsys, ["rees", write(tmp_path, "e.json", MM), "--power", "2"])
    doc = json.loads(out)
    assert code == 0 and doc["ambient_rank"] == 3 and doc["rank_check"] is True


def test_reduce_and_genred(tmp_path, capsys):
    f = write(tmp_path, "e.json", MM)
    code, out, _ = run(capsys, ["reduce", f, "--candidate", write(tmp_path, "u.json", U)])
    doc = json.loads(out)
    assert code == 0 and doc["verified"] and doc["r"] == 1
    code, out, _ = run(capsys, ["genred", f, "--seed", "3"])
    doc = json.loads(out)
    assert doc["verified"] and doc["r"] == 1 and doc["seed"] == 3 and doc["mu"] == 3
    code, out, _ = run(capsys, ["genred", f, "--target", "2"])
    assert code == 0 and json.loads(out)["verified"] is False


def test_classify_with_primes(tmp_path, capsys):
    f = write(tmp_path, "e.json", MM)
    code, out, _ = run(capsys, ["classify", f, "--primes", write(tmp_path, "p.json", {"primes": [["x", "y"]]})])
    doc = json.loads(out)
    assert doc["generically_ci_basis"] == "relative to supplied primes"
    assert doc["generically_ci"] == "false"
    assert doc["crosscheck"]["linear_type_criterion"] is True


def test_text_format(tmp_path, capsys):
    code, out, _ = run(capsys, ["spread", write(tmp_path, "e.json", MM), "--format", "text"])
    assert code == 0
    assert any(line.startswith("analytic_spread") and line.rstrip().endswith("3") for line in out.splitlines())


def test_corpus_command(capsys):
    code, out, _ = run(capsys, ["corpus", "--format", "text"])
    assert code == EXIT_OK
    assert all(line.startswith("PASS") for line in out.splitlines())


def test_corpus_mismatch_exit_code(monkeypatch, capsys):
    entry = corpus.CORPUS[0]
    bad = corpus.CorpusEntry(entry.name, entry.description, entry.variables, entry.generators, {**entry.expected, "analytic_spread": 99})
    monkeypatch.setattr(cli, "run_corpus", lambda seed: [corpus.run_entry(bad, seed)])
    code, out, _ = run(capsys, ["corpus"])
    assert code == EXIT_CORPUS and json.loads(out)["all_pass"] is False


@pytest.mark.parametrize(
    "doc",
    [
        "{not json",
        {"ring": {"variables": ["x", "y"]}},
        {"ring": {"variables": ["x", "y"]}, "module": {"ambient_rank": 1, "generators": [["x y"]]}},
        {"ring": {"variables": ["x"]}, "module": {"ambient_rank": 2, "generators": [["x"]]}},
        {"ring": {"variables": ["x"], "field": {"Fp": 9}}, "module": {"ambient_rank": 1, "generators": [["x"]]}},
        {"ring": {"variables": ["x"]}, "module": {"ambient_rank": 1, "generators": [["w"]]}},
    ],
)
def test_malformed_input(tmp_path, capsys, doc):
    code, _, err = run(capsys, ["report", write(tmp_path, "bad.json", doc)])
    assert code == EXIT_INPUT and err.startswith("error:")


def test_missing_file_and_ungraded_spread(tmp_path, capsys):
    assert run(capsys, ["report", str(tmp_path / "missing.json")])[0] == EXIT_INPUT
    ung = {"ring": {"variables": ["x", "y"]}, "module": {"ambient_rank": 1, "generators": [["x + 1"], ["y"]]}}
    assert run(capsys, ["spread", write(tmp_path, "u.json", ung)])[0] == EXIT_INPUT


def test_bound_exceeded(tmp_path, capsys):
    m3 = {"ring": {"variables": ["x", "y"]}, "module": {"ambient_rank": 3, "generators": [
        ["x", "0", "0"], ["y", "0", "0"], ["0", "x", "0"], ["0", "y", "0"], ["0", "0", "x"], ["0", "0", "y"]]}}
    code, _, err = run(capsys, ["rees", write(tmp_path, "m3.json", m3), "--power", "22"])
    assert code == EXIT_BOUND and "bound exceeded" in err


def test_json_output_is_deterministic(tmp_path, capsys):
    f = write(tmp_path, "e.json", MM)
    first = run(capsys, ["report", f])[1]
    second = run(capsys, ["report", f])[1]
    assert first == second


def test_module_entry_point(tmp_path):
    f = write(tmp_path, "e.json", MM)
    proc = subprocess.run([sys.executable, "-m", "equimult", "spread", f], capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and json.loads(proc.stdout)["analytic_spread"] == 3
