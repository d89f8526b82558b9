import json
import subprocess
import sys

import pytest

from hkcurves import cli
from hkcurves.fano import bundle


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def usage_error(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(list(argv))
    return exc.value.code, capsys.readouterr().err


def test_uniruled_k3_8(capsys):
    code, out = run(capsys, "uniruled", "--n", "8", "--norm", "3/14", "--residue", "5")
    assert code == 0
    assert out == "exists = false, multiplicity = 0\n"


def test_uniruled_witness(capsys):
    code, out = run(capsys, "uniruled", "--norm", "3/2", "--witness", "--r-bound", "3", "--d-bound", "5")
    assert code == 0
    assert out.splitlines() == ["exists = true, multiplicity = 120", "witness = (d=2, r=1)"]
    code, out = run(capsys, "uniruled", "--n", "8", "--norm", "3/14", "--residue", "5", "--witness")
    assert "witness = none within bounds" in out


def test_residue_inferred_only_when_unique(capsys):
    code, out = run(capsys, "uniruled", "--norm", "-2")
    assert out.startswith("exists = true, multiplicity = 1")
    code, err = usage_error(capsys, "uniruled", "--n", "5", "--norm", "-2")
    assert code == 2 and "--residue" in err


def test_coeff(capsys):
    code, out = run(capsys, "coeff", "--form", "f", "--norm", "3/2")
    assert out == "f[3/2, ±[1] mod 2] = 120\n"
    code, out = run(capsys, "coeff", "--form", "g", "--norm", "3/2")
    assert out.endswith("= 630\n")
    code, out = run(capsys, "coeff", "--n", "3", "--norm", "-2", "--residue", "0")
    assert out.endswith("= 1\n")


def test_coeff_qprec_only_raises(capsys):
    _, out = run(capsys, "--json", "coeff", "--form", "phi", "--norm", "2", "--qprec", "3")
    assert json.loads(out)["inputs"]["qprec"] == 12
    _, out = run(capsys, "--json", "coeff", "--form", "phi", "--norm", "2", "--qprec", "20")
    assert json.loads(out)["inputs"]["qprec"] == 20


@pytest.mark.parametrize("argv,flag", [
    (["coeff", "--n", "2", "--norm", "7/3"], "--norm"),
    (["coeff", "--norm", "1/2", "--residue", "1"], "--norm"),
    (["coeff", "--form", "f", "--n", "3", "--norm", "-2", "--residue", "0"], "--n"),
    (["uniruled", "--norm", "x"], "--norm"),
    (["table", "--which", "nope"], "--which"),
    (["series", "--form", "theta", "--qprec", "0"], "--qprec"),
    (["sweep", "--max-d", "1"], "--max-d"),
])
def test_usage_errors(capsys, argv, flag):
    code, err = usage_error(capsys, *argv)
    assert code == 2
    assert flag in err


def test_parse_defaults():
    args = cli.build_parser().parse_args(["table", "--which", "eigenvalues"])
    assert args.max_norm == 6 and not args.json


def test_table_multiplicities(capsys):
    code, out = run(capsys, "table", "--which", "multiplicities")
    values = [line.split("\t")[1] for line in out.splitlines()[1:]]
    assert values == "0 1 4 30 120 504 1980 6160 23576 60720".split()


def test_table_eigenvalues(capsys):
    code, out = run(capsys, "table", "--which", "eigenvalues")
    rows = [line.split("\t") for line in out.splitlines()[1:]]
    assert [r[1] for r in rows] == "0 -2 -2 — 180 1008 6930 24640 129668 364320".split()
    assert [r[2] for r in rows] == "3 0 0 — 945 3840 53760 138240 1237005 2661120".split()


def test_series_dump(capsys):
    code, out = run(capsys, "series", "--form", "theta", "--qprec", "2")
    assert out.splitlines() == ["0 -1 1/1", "0 1 1/1", "1 -3 1/1", "1 -1 3/1", "1 1 3/1", "1 3 1/1"]
    code, out = run(capsys, "series", "--form", "g", "--qprec", "1")
    assert "-1 2 -6/5" in out.splitlines()


def test_fano_verify(capsys):
    code, out = run(capsys, "fano", "verify")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines())
    assert "PASS  n945 = 945 (expected 945)" in out.splitlines()


def test_fano_verify_mismatch_exits_1(capsys, monkeypatch):
    H = bundle.H
    wrong = (bundle.SPRIME_DISPLAY[0], bundle.SPRIME_DISPLAY[1], 5 * H ** 2)
    monkeypatch.setattr(bundle, "SPRIME_DISPLAY", wrong)
    code, out = run(capsys, "fano", "verify")
    assert code == 1
    assert "FAIL  [S'] matches closed form" in out


def test_sweep(capsys):
    code, out = run(capsys, "sweep", "--max-d", "3")
    assert code == 0
    assert "n=2: " in out and "all positive" in out
    assert out.splitlines()[-1] == "n=8: coefficient at (d=1, r=5, norm=3/14) = 0"


@pytest.mark.parametrize("argv", [
    ["uniruled", "--n", "8", "--norm", "3/14", "--residue", "5"],
    ["coeff", "--form", "phi-pow-over-delta", "--n", "4", "--norm", "11/6", "--residue", "1"],
    ["table", "--which", "eigenvalues"],
    ["series", "--form", "f", "--qprec", "3"],
    ["fano", "verify"],
])
def test_json_matches_text(capsys, argv):
    _, text = run(capsys, *argv)
    _, raw = run(capsys, *argv, "--json")
    doc = json.loads(raw)
    assert set(doc) == {"subcommand", "inputs", "results"}
    assert doc["subcommand"] == argv[0]
    for name, value in doc["results"].items():
        assert isinstance(value, (str, bool))
        if isinstance(value, str) and name != "all_pass":
            assert value in text


def test_json_flag_position(capsys):
    _, a = run(capsys, "--json", "table", "--which", "multiplicities")
    _, b = run(capsys, "table", "--which", "multiplicities", "--json")
    assert a == b
    assert json.loads(a)["results"]["f[3/2]"] == "120"


def test_deterministic(capsys):
    outs = [run(capsys, "sweep", "--max-d", "2", "--json")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hkcurves", "uniruled", "--n", "8", "--norm", "3/14",
                           "--residue", "5"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "exists = false, multiplicity = 0\n"
