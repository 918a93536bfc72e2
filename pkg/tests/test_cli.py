import json
import subprocess
import sys

import numpy as np
import pytest

from opuc.cli import main
from opuc.measure import CircleMeasure


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_zeros_trivial(tmp_path, capsys):
    f = write(tmp_path, "a.json", {"alphas": [0, 0, 0]})
    code, out, _ = run(capsys, ["compute", "--input", f, "--target", "zeros"])
    assert code == 0
    assert json.loads(out)["zeros"]["zeros"] == [[0.0, 0.0]] * 3


def test_phi(tmp_path, capsys):
    f = write(tmp_path, "a.json", {"alphas": [0.5, 1 / 3]})
    code, out, _ = run(capsys, ["compute", "--input", f, "--target", "phi"])
    assert code == 0
    np.testing.assert_allclose(json.loads(out)["phi"]["Phi"], [[-1 / 3, 0], [-1 / 3, 0], [1, 0]], atol=1e-15)


def test_szego_report(tmp_path, capsys):
    f = write(tmp_path, "a.json", {"alphas": [0.5]})
    code, out, _ = run(capsys, ["compute", "--input", f, "--target", "szego-report"])
    assert code == 0 and json.loads(out)["szego-report"]["F_limit"] == pytest.approx(0.75)


def test_all_targets_csv_and_determinism(tmp_path, capsys):
    f = write(tmp_path, "a.json", {"alphas": [0.5, -0.2, 0.1, 0.3]})
    targets = sum((["--target", t] for t in ("phi", "zeros", "moments", "schur", "cmv", "bands", "jacobi", "szego-report")), [])
    for d in ("o1", "o2"):
        code, _, _ = run(capsys, ["compute", "--input", f, *targets, "--format", "csv", "--out", str(tmp_path / d)])
        assert code == 0
    for t in ("phi", "zeros", "moments", "schur", "cmv", "bands", "jacobi", "szego-report"):
        a = (tmp_path / "o1" / f"{t}.csv").read_bytes()
        assert a == (tmp_path / "o2" / f"{t}.csv").read_bytes()
    assert (tmp_path / "o1" / "moments.csv").read_text().startswith("n,re,im\n")


def test_measure_and_jacobi_inputs(tmp_path, capsys):
    mu = CircleMeasure.from_weight(lambda t: 0.75 / np.abs(1 - np.exp(1j * t) / 2) ** 2, 256)
    f = write(tmp_path, "m.json", mu.to_json())
    code, out, _ = run(capsys, ["compute", "--input", f, "--target", "schur", "--max-n", "3"])
    assert code == 0
    np.testing.assert_allclose(json.loads(out)["schur"]["gammas"], [[0.5, 0], [0, 0], [0, 0]], atol=1e-12)
    f = write(tmp_path, "j.json", {"a": [2**0.5, 1, 1], "b": [0, 0, 0]})
    code, out, _ = run(capsys, ["compute", "--input", f, "--target", "phi"])
    assert code == 0
    np.testing.assert_allclose(json.loads(out)["phi"]["Phi"], np.eye(7)[6][:, None] * [1, 0], atol=1e-12)


def test_point_mass_input(tmp_path, capsys):
    mu = CircleMeasure.point_mass(0.0, 64)
    f = write(tmp_path, "m.json", mu.to_json())
    code, out, _ = run(capsys, ["compute", "--input", f, "--target", "zeros"])
    assert code == 0
    np.testing.assert_allclose(json.loads(out)["zeros"]["zeros"], [[1, 0]], atol=1e-12)


def test_input_errors(tmp_path, capsys):
    code, _, err = run(capsys, ["compute", "--input", str(tmp_path / "missing.json")])
    assert code == 2 and json.loads(err)["exit_code"] == 2
    f = write(tmp_path, "bad.json", {"foo": 1})
    assert run(capsys, ["compute", "--input", f])[0] == 2
    f = write(tmp_path, "odd.json", {"alphas": [0.1, 0.2, 0.3]})
    assert run(capsys, ["compute", "--input", f, "--target", "bands"])[0] == 2
    f = write(tmp_path, "big.json", {"alphas": [1.5]})
    assert run(capsys, ["compute", "--input", f])[0] == 2
    assert run(capsys, ["verify", "--suite", "nope"])[0] == 2
    assert run(capsys, ["verify", "--suite", "cd-formula", "--grid", "0"])[0] == 2


def test_verify_examples(capsys):
    code, out, _ = run(capsys, ["verify", "--suite", "cd-formula"])
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, ["verify", "--suite", "geronimus", "--max-n", "12"])
    rep = json.loads(out)["suites"]["geronimus"]
    assert code == 0 and max(c["residual"] for c in rep) < 1e-8
    code, out, _ = run(capsys, ["verify", "--suite", "haar", "--samples", "100000"])
    rep = json.loads(out)["suites"]["haar"]
    assert code == 0 and all(c["residual"] < 3 for c in rep if "zscore" in c["name"])


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, ["verify", "--suite", "recursion-roundtrip", "--tol", "1e-30"])
    assert code == 1 and not json.loads(out)["passed"]


def test_config_override(tmp_path, capsys):
    cfg = write(tmp_path, "c.json", {"trials": 3, "seed": 4})
    code, out, _ = run(capsys, ["verify", "--suite", "toeplitz", "--config", cfg, "--format", "csv"])
    assert code == 0 and out.splitlines()[1] == "suite,name,residual,tol,passed"
    bad = write(tmp_path, "b.json", {"nonsense": 1})
    assert run(capsys, ["verify", "--suite", "toeplitz", "--config", bad])[0] == 2


def test_verify_checks_sorted(capsys):
    _, out, _ = run(capsys, ["verify", "--suite", "weyl"])
    names = [c["name"] for c in json.loads(out)["suites"]["weyl"]]
    assert names == sorted(names)


def test_help_documents_csv_columns():
    out = subprocess.run([sys.executable, "-m", "opuc.cli", "compute", "--help"], capture_output=True, text=True).stdout
    assert "CSV columns" in out and "row, col, re, im" in out
