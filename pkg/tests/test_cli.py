from __future__ import annotations

import json
import subprocess
import sys

import numpy as np
import pytest

from fefaudit.cli import parse_state_file, write_state_file
from fefaudit.errors import StateFileError
from fefaudit.states import max_entangled_projector

FAST = ["--restarts", "4"]


def run_cli(*args, binary=False):
    return subprocess.run(
        [sys.executable, "-m", "fefaudit", *args],
        capture_output=True,
        text=not binary,
    )


def report_floats(stdout):
    vals = {}
    for line in stdout.splitlines():
        key, sep, rest = line.partition(": ")
        if sep:
            try:
                vals[key] = float(rest)
            except ValueError:
                pass
    return vals


def test_bound_maxent_report():
    r = run_cli("bound", "--family", "maxent", "--d", "2", *FAST)
    assert r.returncode == 0  # violations are findings, not failures
    lines = r.stdout.splitlines()
    assert lines[0] == "state: maxent(d=2)"
    assert lines[1] == "d: 2"
    vals = report_floats(r.stdout)
    assert vals["frobenius_norm"] == pytest.approx(1.0, abs=1e-12)
    assert vals["theorem1_bound"] == pytest.approx(0.75, abs=1e-12)
    assert vals["hoelder_sum_bound"] == pytest.approx(1.75, abs=1e-12)
    assert vals["lm_bound"] == pytest.approx(1.0, abs=1e-10)
    assert vals["spectral_bound"] == pytest.approx(1.0, abs=1e-10)
    assert vals["fef_lower"] >= 1.0 - 1e-9
    assert any(line.startswith("violations: theorem1 (undercut by") for line in lines)


def test_bound_horodecki_prints_closed_form():
    r = run_cli("bound", "--family", "horodecki", "--a", "1", *FAST)
    assert r.returncode == 0
    assert "paper_example3_form: 0.33333333333333331" in r.stdout
    assert "state: horodecki(a=1)" in r.stdout


def test_bound_no_closed_form_for_other_families():
    r = run_cli("bound", "--family", "isotropic", "--d", "2", "--p", "0", *FAST)
    assert r.returncode == 0
    assert "paper_example3_form" not in r.stdout
    assert "violations: none" in r.stdout


def test_bound_json_payload(tmp_path):
    out = tmp_path / "report.json"
    r = run_cli("bound", "--family", "maxent", "--d", "2", *FAST, "--out", str(out))
    assert r.returncode == 0
    payload = json.loads(out.read_text())
    assert set(payload) == {
        "state_label",
        "d",
        "frobenius_norm",
        "bounds",
        "fef_lower",
        "violations",
        "best_unitary",
    }
    assert set(payload["bounds"]) == {"theorem1", "hoelder_sum", "lm", "spectral"}
    assert payload["violations"][0]["bound"] == "theorem1"
    U = np.asarray(payload["best_unitary"]["re"]) + 1j * np.asarray(
        payload["best_unitary"]["im"]
    )
    assert U.shape == (2, 2)
    assert np.linalg.norm(U.conj().T @ U - np.eye(2)) < 1e-8


def test_sweep_isotropic_csv():
    r = run_cli(
        "sweep", "--family", "isotropic", "--d", "2", "--param", "p",
        "--from", "0", "--to", "1", "--steps", "3", *FAST,
    )
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    assert lines[0] == (
        "param,frobenius_norm,theorem1_bound,hoelder_sum_bound,"
        "lm_bound,spectral_bound,fef_lower"
    )
    assert len(lines) == 4
    lm = [float(line.split(",")[4]) for line in lines[1:]]
    assert lm == pytest.approx([0.25, 0.625, 1.0], abs=1e-10)
    params = [float(line.split(",")[0]) for line in lines[1:]]
    assert params == [0.0, 0.5, 1.0]


def test_sweep_horodecki_has_extra_column_and_stderr_gap():
    r = run_cli(
        "sweep", "--family", "horodecki", "--param", "a",
        "--from", "0", "--to", "1", "--steps", "3", *FAST,
    )
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    assert lines[0] == (
        "param,frobenius_norm,theorem1_bound,paper_example3_form,"
        "hoelder_sum_bound,lm_bound,spectral_bound,fef_lower"
    )
    assert r.stderr.startswith("max |theorem1_bound - paper_example3_form| over grid:")


def test_sweep_byte_determinism():
    args = (
        "sweep", "--family", "horodecki", "--param", "a",
        "--from", "0", "--to", "1", "--steps", "3", "--seed", "7", *FAST,
    )
    r1 = run_cli(*args, binary=True)
    r2 = run_cli(*args, binary=True)
    assert r1.returncode == r2.returncode == 0
    assert r1.stdout == r2.stdout
    assert r1.stderr == r2.stderr


def test_sweep_json_format():
    r = run_cli(
        "sweep", "--family", "isotropic", "--d", "2", "--param", "p",
        "--from", "0", "--to", "1", "--steps", "2", "--format", "json", *FAST,
    )
    assert r.returncode == 0
    rows = json.loads(r.stdout)
    assert len(rows) == 2
    assert rows[0]["param"] == 0.0
    assert rows[1]["param"] == 1.0
    assert "lm_bound" in rows[0]


def test_sweep_two_steps_is_endpoints_only():
    r = run_cli(
        "sweep", "--family", "isotropic", "--d", "2", "--param", "p",
        "--from", "0.2", "--to", "0.8", "--steps", "2", *FAST,
    )
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    assert len(lines) == 3
    assert lines[1].split(",")[0] == "0.20000000000000001"
    assert lines[2].split(",")[0] == "0.80000000000000004"


def test_sweep_plot_renders_png(tmp_path):
    png = tmp_path / "curves.png"
    r = run_cli(
        "sweep", "--family", "isotropic", "--d", "2", "--param", "p",
        "--from", "0", "--to", "1", "--steps", "3", *FAST,
        "--out", str(tmp_path / "rows.csv"), "--plot", str(png),
    )
    assert r.returncode == 0
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_verify_passes_and_reports_findings():
    r = run_cli("verify", "--d-max", "2", *FAST)
    assert r.returncode == 0
    assert "identity summary: all checks passed" in r.stdout
    assert "paper-claim findings:" in r.stdout
    assert "findings never affect the exit code" in r.stdout
    assert "- maxent(d=2): theorem1 bound 0.75" in r.stdout
    eig_lines = [
        line for line in r.stdout.splitlines()
        if line.startswith("d=2 werner-paper minimum eigenvalue: ")
    ]
    assert len(eig_lines) == 1
    assert float(eig_lines[0].rpartition(": ")[2]) == pytest.approx(-0.125, abs=1e-12)
    assert "printed dual pairing (-i,-j) at d=2" in r.stdout


def test_verify_reports_pairing_residual_growth():
    r = run_cli("verify", "--d-max", "3", *FAST)
    assert r.returncode == 0
    assert (
        "printed dual pairing (-i,-j) at d=3: expansion residual "
        "1.1547005383792517" in r.stdout
    )
    assert "conjugate pairing (-i,+j) is exact" in r.stdout


def test_decompose_maxent_principal():
    r = run_cli("decompose", "--family", "maxent", "--d", "3")
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    c_lines = [line for line in lines if line.startswith("c[")]
    assert len(c_lines) == 8
    indices = {line.split(" = ")[0] for line in c_lines}
    assert "c[1,0;2,0]" in indices
    assert "c[1,2;2,2]" in indices
    for line in c_lines:
        assert complex(line.split(" = ")[1]) == pytest.approx(1.0, abs=1e-12)
    assert not any(line.startswith(("a[", "b[")) for line in lines)
    residual = [line for line in lines if line.startswith("reconstruction_residual")]
    assert len(residual) == 1
    assert float(residual[0].split(" = ")[1]) < 1e-12


def test_decompose_maximally_mixed_lists_nothing():
    r = run_cli("decompose", "--family", "isotropic", "--d", "2", "--p", "0")
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    assert lines[0] == "state: isotropic(d=2, p=0)"
    assert not any(line.startswith(("a[", "b[", "c[")) for line in lines)


def test_decompose_bloch_maxent_d2():
    r = run_cli("decompose", "--family", "maxent", "--d", "2", "--basis", "bloch")
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    m_lines = [line for line in lines if line.startswith("m[")]
    assert [line.split(" = ")[0] for line in m_lines] == ["m[0,0]", "m[1,1]", "m[2,2]"]
    values = [float(line.split(" = ")[1]) for line in m_lines]
    assert values == pytest.approx([0.25, 0.25, -0.25], abs=1e-12)
    assert not any(line.startswith(("r[", "s[")) for line in lines)


def test_state_file_roundtrip(tmp_path):
    path = tmp_path / "maxent3.json"
    state = max_entangled_projector(3)
    write_state_file(state, str(path))
    back = parse_state_file(str(path))
    assert back.d == 3
    assert float(np.linalg.norm(back.matrix - state.matrix)) == 0.0


def test_bound_from_state_file(tmp_path):
    path = tmp_path / "maxent2.json"
    write_state_file(max_entangled_projector(2), str(path))
    r = run_cli("bound", "--state", str(path), *FAST)
    assert r.returncode == 0
    assert f"state: {path}" in r.stdout
    assert report_floats(r.stdout)["theorem1_bound"] == pytest.approx(0.75, abs=1e-12)


def test_exit_1_usage_errors(tmp_path):
    assert run_cli("bound").returncode == 1  # neither --state nor --family
    both = run_cli(
        "bound", "--family", "maxent", "--d", "2", "--state", str(tmp_path / "x.json")
    )
    assert both.returncode == 1
    assert run_cli("bound", "--family", "isotropic", "--d", "2").returncode == 1
    outside = run_cli("bound", "--family", "isotropic", "--d", "2", "--p", "-0.9")
    assert outside.returncode == 1
    assert run_cli("nonsense").returncode == 1
    assert run_cli(
        "sweep", "--family", "isotropic", "--d", "2", "--param", "a",
        "--from", "0", "--to", "1",
    ).returncode == 1
    assert run_cli(
        "sweep", "--family", "isotropic", "--d", "2", "--param", "p",
        "--from", "0", "--to", "1", "--steps", "1",
    ).returncode == 1
    assert run_cli(
        "sweep", "--family", "isotropic", "--d", "2", "--param", "p",
        "--from", "1", "--to", "0",
    ).returncode == 1


def test_exit_1_parse_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "re": [[')
    r = run_cli("bound", "--state", str(bad))
    assert r.returncode == 1
    assert "line 1" in r.stderr

    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"dim": 2, "re": np.eye(4).tolist(),
                                 "im": np.zeros((3, 3)).tolist()}))
    r = run_cli("bound", "--state", str(wrong))
    assert r.returncode == 1
    assert '"im"' in r.stderr

    missing = tmp_path / "missing.json"
    missing.write_text(json.dumps({"dim": 2, "im": np.zeros((4, 4)).tolist()}))
    r = run_cli("bound", "--state", str(missing))
    assert r.returncode == 1
    assert '"re"' in r.stderr

    tiny = tmp_path / "tiny.json"
    tiny.write_text(json.dumps({"dim": 1, "re": [[1.0]], "im": [[0.0]]}))
    assert run_cli("bound", "--state", str(tiny)).returncode == 1


def test_exit_2_physicality_and_override(tmp_path):
    heavy = tmp_path / "trace2.json"
    heavy.write_text(json.dumps({
        "dim": 2,
        "re": (np.eye(4) / 2.0).tolist(),
        "im": np.zeros((4, 4)).tolist(),
    }))
    r = run_cli("bound", "--state", str(heavy), *FAST)
    assert r.returncode == 2
    assert "fefaudit: error:" in r.stderr
    r = run_cli("bound", "--state", str(heavy), "--allow-unphysical", *FAST)
    assert r.returncode == 0


def test_exit_3_io_errors(tmp_path):
    r = run_cli("bound", "--state", str(tmp_path / "absent.json"))
    assert r.returncode == 3
    r = run_cli(
        "bound", "--family", "maxent", "--d", "2", *FAST,
        "--out", str(tmp_path / "no-such-dir" / "x.json"),
    )
    assert r.returncode == 3


def test_parse_state_file_rejects_non_object(tmp_path):
    path = tmp_path / "list.json"
    path.write_text("[1, 2, 3]")
    with pytest.raises(StateFileError):
        parse_state_file(str(path))
