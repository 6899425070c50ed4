"""Exercise the command-line entry points through main(argv).

Exit codes: 0 ok, 2 invalid input, 3 ill-conditioned, 4 numerical failure.
"""

import json

import numpy as np
import pytest

from holonomy_forge.algebra import matrix_to_json
from holonomy_forge.cli import main

SCALAR = json.dumps(matrix_to_json(np.array([[2.0 + 0j]])))
DIAG12 = json.dumps(matrix_to_json(np.diag([1.0, 2.0]).astype(complex)))
CIRCLE = '{"kind": "circle", "R": 1.0}'


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_spectrum_json(capsys):
    code, out, _ = _run(capsys, ["spectrum", "--input", SCALAR])
    assert code == 0
    report = json.loads(out)
    assert report["schema_version"] == 1
    assert report["surface"]["rank"] == 1
    assert all(c["pass"] for c in report["checks"])
    assert report["totally_geodesic"]["ok"] is True


def test_spectrum_reads_file(tmp_path, capsys):
    path = tmp_path / "mat.json"
    path.write_text(DIAG12)
    code, out, _ = _run(capsys, ["spectrum", "--input", str(path)])
    assert code == 0
    assert json.loads(out)["distinct_values"] == 2


def test_spectrum_csv_flat(capsys):
    code, out, _ = _run(capsys, ["spectrum", "--input", SCALAR, "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "key,value,schema"
    assert all(line.endswith(",1") for line in lines[1:])


def test_holonomy_all_checks_pass(capsys):
    code, out, _ = _run(
        capsys,
        ["holonomy", "--input", SCALAR, "--curve", CIRCLE, "--ode-steps", "2048"],
    )
    assert code == 0
    report = json.loads(out)
    names = {c["name"] for c in report["checks"]}
    assert {
        "trace_identity",
        "span_membership",
        "psi_anti_hermitian",
        "holonomy_unitary",
        "ode_endpoint_gap",
        "transport_drift",
    } <= names
    for c in report["checks"]:
        assert c["pass"], c
        assert "residual" in c and "threshold" in c
    expected = np.pi * np.sinh(1.0) ** 2
    assert report["result"]["area0"] == pytest.approx(expected, abs=1e-10)


def test_holonomy_can_skip_transport(capsys):
    code, out, _ = _run(
        capsys, ["holonomy", "--input", SCALAR, "--curve", CIRCLE, "--ode-steps", "0"]
    )
    assert code == 0
    report = json.loads(out)
    assert "transport" not in report
    assert {c["name"] for c in report["checks"]} == {
        "trace_identity",
        "span_membership",
        "psi_anti_hermitian",
        "holonomy_unitary",
    }


def test_holonomy_deterministic_output(capsys):
    argv = ["holonomy", "--input", DIAG12, "--curve", CIRCLE, "--ode-steps", "0"]
    _, out1, _ = _run(capsys, argv)
    _, out2, _ = _run(capsys, argv)
    assert out1 == out2


def test_missing_input_is_invalid(capsys):
    code, _, err = _run(capsys, ["holonomy", "--curve", CIRCLE])
    assert code == 2
    assert json.loads(err)["error"] == "error"


def test_zero_matrix_is_invalid(capsys):
    zero = json.dumps(matrix_to_json(np.zeros((1, 1), dtype=complex)))
    code, _, err = _run(capsys, ["spectrum", "--input", zero])
    assert code == 2
    assert json.loads(err)["error"] == "trivial_X"


def test_bad_curve_kind_is_invalid(capsys):
    code, _, err = _run(
        capsys, ["holonomy", "--input", SCALAR, "--curve", '{"kind": "square", "R": 1}']
    )
    assert code == 2
    assert json.loads(err)["error"] == "dimension"


def test_ill_conditioned_exit_code(capsys):
    near = json.dumps(matrix_to_json(np.diag([1.0, 1.0 + 2e-12]).astype(complex)))
    code, _, err = _run(
        capsys, ["spectrum", "--input", near, "--group-tol", "1e-13"]
    )
    assert code == 3
    assert json.loads(err)["error"] == "ill_conditioned"


def test_sweep_csv_table(capsys):
    code, out, _ = _run(
        capsys,
        [
            "sweep",
            "--input",
            DIAG12,
            "--radii",
            "0.5,1.0,1.5",
            "--ode-steps",
            "1024",
            "--format",
            "csv",
        ],
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "R,area0,area1,trace_over_2i,trace_residual,oracle_residual,status,schema"
    assert len(lines) == 4
    for line in lines[1:]:
        assert line.split(",")[-2] == "ok"


def test_sweep_partial_failure_still_succeeds(capsys):
    code, out, _ = _run(
        capsys,
        ["sweep", "--input", DIAG12, "--radii", "1.0,-0.5", "--ode-steps", "0"],
    )
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [row["status"] for row in rows] == ["ok", "dimension"]


def test_sweep_all_failures_exit_nonzero(capsys):
    code, out, _ = _run(
        capsys, ["sweep", "--input", DIAG12, "--radii=-1,-2", "--ode-steps", "0"]
    )
    assert code == 2
    assert all(row["status"] == "dimension" for row in json.loads(out)["rows"])


def test_sweep_empty_radii(capsys):
    code, out, _ = _run(capsys, ["sweep", "--input", DIAG12, "--radii", ""])
    assert code == 0
    assert json.loads(out)["rows"] == []


def test_sweep_thread_env_validation(capsys, monkeypatch):
    monkeypatch.setenv("HOLONOMY_FORGE_THREADS", "zero")
    code, _, err = _run(capsys, ["sweep", "--input", DIAG12, "--radii", "1.0"])
    assert code == 2
    assert "HOLONOMY_FORGE_THREADS" in json.loads(err)["message"]


def test_sweep_respects_thread_env(capsys, monkeypatch):
    monkeypatch.setenv("HOLONOMY_FORGE_THREADS", "2")
    code, out, _ = _run(
        capsys, ["sweep", "--input", DIAG12, "--radii", "0.5,0.8", "--ode-steps", "0"]
    )
    assert code == 0
    assert len(json.loads(out)["rows"]) == 2


def test_verify_seeded_and_deterministic(capsys):
    # reference step count keeps the fixed oracle threshold meaningful
    argv = ["verify", "--cases", "3", "--seed", "11"]
    code, out1, _ = _run(capsys, argv)
    assert code == 0
    report = json.loads(out1)
    assert report["seed"] == 11
    assert report["all_pass"] is True
    assert report["failures"] == []
    for c in report["checks"]:
        assert c["pass"], c
    _, out2, _ = _run(capsys, argv)
    second = json.loads(out2)
    report.pop("elapsed_seconds")
    second.pop("elapsed_seconds")
    assert report == second


def test_verify_draws_seed_when_absent(capsys):
    code, out, _ = _run(capsys, ["verify", "--cases", "1"])
    report = json.loads(out)
    assert code in (0, 4)
    assert isinstance(report["seed"], int)
    assert {c["name"] for c in report["checks"]} >= {
        "trace_identity",
        "ode_endpoint_gap",
        "transport_drift",
        "frame_pseudo_unitarity",
    }
