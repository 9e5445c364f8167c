import json
import os

import pytest

from monoid_spectra.cli import main

DATA = os.path.join(os.path.dirname(__file__), "data")


def data(name):
    return os.path.join(DATA, name)


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr().out
    return code, out


def test_axioms_suite_passes(capsys):
    code, out = run(capsys, "verify", "--suite", "axioms",
                    "--input", data("n23.json"))
    assert code == 0
    assert "OVERALL PASS" in out
    assert "Id1" in out and "Id4" in out


def test_all_suites_pass_on_n23(capsys):
    for suite in ("axioms", "spec", "ideals", "zar", "pruefer", "pronconst",
                  "main1", "prop1", "prop2", "corollaries"):
        code, out = run(capsys, "verify", "--suite", suite,
                        "--input", data("n23.json"))
        assert code == 0, (suite, out)


def test_main2_with_family(capsys):
    code, out = run(capsys, "verify", "--suite", "main2",
                    "--input", data("n2.json"),
                    "--family", data("adjoin-ray.json"))
    assert code == 0, out
    assert "non-finitary" in out or "certificate" in out or "falsif" in out


def test_exit_code_2_on_missing_file(capsys):
    code, _ = run(capsys, "verify", "--suite", "axioms",
                  "--input", data("does-not-exist.json"))
    assert code == 2


def test_exit_code_2_on_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "numerical", "generators": [2, 4]}')
    code, _ = run(capsys, "verify", "--suite", "axioms", "--input", str(bad))
    assert code == 2
    bad.write_text("{not json")
    code, _ = run(capsys, "verify", "--suite", "axioms", "--input", str(bad))
    assert code == 2


def test_exit_code_3_on_unsupported_realization(capsys):
    # bounded ideal enumeration is undefined for affine inputs
    code, _ = run(capsys, "verify", "--suite", "ideals",
                  "--input", data("n2.json"))
    assert code == 3
    # valuation enumeration is undefined for finite inputs
    code, _ = run(capsys, "verify", "--suite", "zar",
                  "--input", data("c3z.json"))
    assert code == 3


def test_json_report(capsys):
    code, out = run(capsys, "verify", "--suite", "spec",
                    "--input", data("n23.json"), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["suite"] == "spec"
    assert doc["overall"] in ("PASS", "BOUNDED-PASS")
    assert isinstance(doc["checks"], list) and doc["checks"]
    assert all("name" in c and "verdict" in c for c in doc["checks"])


def test_report_and_dot_files(tmp_path, capsys):
    rep = tmp_path / "report.txt"
    dot = tmp_path / "spec.dot"
    code, out = run(capsys, "verify", "--suite", "spec",
                    "--input", data("n23.json"),
                    "--report", str(rep), "--dot", str(dot))
    assert code == 0
    assert rep.read_text() == out
    text = dot.read_text()
    assert text.startswith("digraph")
    assert "P_zero" in text and "P_max" in text


def test_runs_are_byte_identical(capsys):
    outs = []
    for _ in range(2):
        code, out = run(capsys, "verify", "--suite", "main1",
                        "--input", data("n23.json"), "--seed", "3")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_seed_env_var(capsys, monkeypatch):
    monkeypatch.setenv("MONOID_SPECTRA_SEED", "7")
    _, out_env = run(capsys, "verify", "--suite", "axioms",
                     "--input", data("n345.json"))
    monkeypatch.delenv("MONOID_SPECTRA_SEED")
    _, out_flag = run(capsys, "verify", "--suite", "axioms",
                      "--input", data("n345.json"), "--seed", "7")
    assert out_env == out_flag
    assert "SEED 7" in out_env


def test_suites_pass_on_affine_and_finite(capsys):
    for suite in ("axioms", "spec", "zar", "pruefer", "main1", "prop1",
                  "prop2", "corollaries"):
        code, out = run(capsys, "verify", "--suite", suite,
                        "--input", data("n2.json"))
        assert code == 0, (suite, out)
    for suite in ("axioms", "spec", "ideals", "pronconst", "main1", "prop2"):
        code, out = run(capsys, "verify", "--suite", suite,
                        "--input", data("c3z.json"))
        assert code == 0, (suite, out)
