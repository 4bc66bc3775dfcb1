import json

import numpy as np
import pytest

import rotbell.oracle as oracle_mod
from rotbell.cli import main
from rotbell.states import as_density, parse_ket, state_to_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# analyze


def test_analyze_ghz_ket_json(capsys):
    code, out, _ = run_cli(capsys, "analyze", "--ket", "|000>+|111>", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    rep = payload["report"]
    assert rep["r"] == pytest.approx(np.pi**3 / 16.0, rel=1e-11)
    assert rep["min_excluded_separability"] == 2
    assert rep["critical_visibility"] == pytest.approx(0.5160, abs=5e-5)
    assert payload["input"]["normalization_applied"] is True


def test_analyze_product_ket_nothing_excluded(capsys):
    code, out, _ = run_cli(capsys, "analyze", "--ket", "|00>", "--format", "json")
    assert code == 0
    rep = json.loads(out)["report"]
    assert rep["r"] == 0.0
    assert rep["min_excluded_separability"] is None
    assert rep["lhv_violated"] is False


def test_analyze_biseparable_density_file(tmp_path, capsys):
    rho = as_density(parse_ket("|000>+|011>+|100>+|111>"))
    path = tmp_path / "bisep.json"
    path.write_text(json.dumps(state_to_json(rho)))
    code, out, _ = run_cli(capsys, "analyze", "--input", str(path), "--format", "json")
    assert code == 0
    rep = json.loads(out)["report"]
    assert rep["r"] == pytest.approx(np.pi**3 / 32.0, rel=1e-11)
    k2 = [t for t in rep["thresholds"] if t["k"] == 2][0]
    assert k2["excluded"] is False


def test_analyze_stdin(capsys, monkeypatch):
    import io

    payload = json.dumps(state_to_json(parse_ket("|00>+|11>")))
    monkeypatch.setattr("sys.stdin", io.StringIO(payload))
    code, out, _ = run_cli(capsys, "analyze", "--input", "-", "--format", "json")
    assert code == 0
    assert json.loads(out)["report"]["r"] == pytest.approx(np.pi**2 / 8.0, rel=1e-11)


def test_analyze_text_wording_not_excluded(capsys):
    code, out, _ = run_cli(capsys, "analyze", "--ket", "|000>+|011>+|100>+|111>")
    assert code == 0
    assert "not excluded" in out
    assert "is k-separable" not in out
    assert "verdict:" in out


def test_analyze_details_arrays(capsys):
    code, out, _ = run_cli(
        capsys, "analyze", "--ket", "|00>+|11>", "--format", "json", "--details"
    )
    assert code == 0
    corr = json.loads(out)["correlation"]
    assert corr["antidiagonal_profile"] == [[0.5, 0.0], [0.0, 0.0]]
    assert corr["correlation_tensor"] == [1.0, -0.0, -0.0, -1.0]


def test_analyze_with_oracle_ok(capsys):
    code, out, _ = run_cli(
        capsys, "analyze", "--ket", "|00>+|11>", "--format", "json", "--oracle"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["oracle"]["identity_ok"] is True


def test_analyze_bad_ket_exits_1(capsys):
    code, _, err = run_cli(capsys, "analyze", "--ket", "|01> + |0>")
    assert code == 1
    assert "inconsistent bitstring lengths" in err


def test_analyze_bad_json_exits_1(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run_cli(capsys, "analyze", "--input", str(path))
    assert code == 1
    assert "error:" in err


def test_analyze_invalid_state_exits_1(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 1, "kind": "pure", "amplitudes": [[1.0, 0.0], [1.0, 0.0]]}))
    code, _, err = run_cli(capsys, "analyze", "--input", str(path))
    assert code == 1
    assert "not normalized" in err


def test_analyze_missing_file_exits_1(capsys):
    code, _, err = run_cli(capsys, "analyze", "--input", "/nonexistent/state.json")
    assert code == 1
    assert "error:" in err


def test_usage_errors_exit_1(capsys):
    assert run_cli(capsys, "analyze")[0] == 1  # no input source
    assert run_cli(capsys, "frobnicate")[0] == 1  # unknown command
    assert run_cli(capsys, "analyze", "--ket", "|0>", "--input", "x")[0] == 1  # both sources


def test_determinism_byte_identical(capsys):
    _, out1, _ = run_cli(capsys, "analyze", "--ket", "|000>+|111>", "--format", "json")
    _, out2, _ = run_cli(capsys, "analyze", "--ket", "|000>+|111>", "--format", "json")
    assert out1 == out2


# ---------------------------------------------------------------------------
# ghz


def test_ghz_command(capsys):
    code, out, _ = run_cli(capsys, "ghz", "--n", "4", "--format", "json")
    assert code == 0
    rep = json.loads(out)["report"]
    assert rep["r"] == pytest.approx(0.5 * (np.pi / 2) ** 4, rel=1e-11)


def test_ghz_rejects_bad_n(capsys):
    code, _, err = run_cli(capsys, "ghz", "--n", "0")
    assert code == 1 and "error:" in err


# ---------------------------------------------------------------------------
# sweep


def test_sweep_ghz3_flip_point(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "--ket", "|000>+|111>", "--steps", "101", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "v,r,lhv_violated,min_excluded_separability"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 101
    flips = [
        (float(a[0]), float(b[0]))
        for a, b in zip(rows, rows[1:])
        if a[2] == "false" and b[2] == "true"
    ]
    assert flips == [(0.51, 0.52)]
    v_crit = 16.0 / np.pi**3
    assert flips[0][0] < v_crit < flips[0][1]


def test_sweep_ghz4_flip_near_reciprocal(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "--ket", "|0000>+|1111>", "--steps", "101", "--format", "csv"
    )
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    flips = [
        (float(a[0]), float(b[0]))
        for a, b in zip(rows, rows[1:])
        if a[2] == "false" and b[2] == "true"
    ]
    v_crit = 1.0 / (0.5 * (np.pi / 2) ** 4)
    assert len(flips) == 1
    assert flips[0][0] < v_crit <= flips[0][1] + 1e-12
    assert abs(flips[0][1] - v_crit) <= 0.01 + 1e-12


def test_sweep_maximally_mixed_all_zero(tmp_path, capsys):
    from rotbell.states import DensityMatrix

    path = tmp_path / "mixed.json"
    path.write_text(json.dumps(state_to_json(DensityMatrix.maximally_mixed(2))))
    code, out, _ = run_cli(
        capsys, "sweep", "--input", str(path), "--steps", "11", "--format", "csv"
    )
    assert code == 0
    for line in out.strip().splitlines()[1:]:
        assert line.split(",")[1] == "0"


def test_sweep_validates_range(capsys):
    code, _, err = run_cli(capsys, "sweep", "--ket", "|0>", "--vmin", "0.9", "--vmax", "0.1")
    assert code == 1 and "vmin" in err
    code, _, err = run_cli(capsys, "sweep", "--ket", "|0>", "--steps", "1")
    assert code == 1 and "steps" in err


# ---------------------------------------------------------------------------
# zoo


def test_zoo_table(capsys):
    code, out, _ = run_cli(
        capsys, "zoo", "--nmin", "2", "--nmax", "6", "--samples", "0", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,k,ghz_r,r_k_sep_max,ratio_to_next,sampled_max_r,sampled_within_bound"
    rows = [line.split(",") for line in lines[1:]]
    ghz_by_n = {int(r[0]): float(r[2]) for r in rows}
    for n, expected in ((2, 1.2337), (3, 1.9379), (4, 3.0440), (5, 4.7815), (6, 7.5109)):
        assert ghz_by_n[n] == pytest.approx(expected, abs=1e-4)
    for r in rows:
        if r[4]:
            assert float(r[4]) == 2.0
        if int(r[1]) == int(r[0]):  # fully separable rung: threshold below 1
            assert float(r[3]) < 1.0


def test_zoo_sampling_stays_below_thresholds(capsys):
    code, out, _ = run_cli(
        capsys, "zoo", "--nmin", "2", "--nmax", "3", "--samples", "5", "--seed", "3",
        "--format", "csv",
    )
    assert code == 0
    for line in out.strip().splitlines()[1:]:
        parts = line.split(",")
        assert parts[6] == "true"
        assert float(parts[5]) <= float(parts[3]) + 1e-9


def test_zoo_deterministic(capsys):
    args = ("zoo", "--nmin", "2", "--nmax", "3", "--samples", "3", "--seed", "1",
            "--format", "csv")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


# ---------------------------------------------------------------------------
# verify


@pytest.mark.slow
def test_verify_fresh_build_exits_0_and_is_deterministic(capsys):
    code, out, _ = run_cli(capsys, "verify")
    assert code == 0
    assert "0 failed" in out
    assert "FAIL" not in out
    code2, out2, _ = run_cli(capsys, "verify")
    assert code2 == 0 and out2 == out


def test_verify_detects_sign_mutation(capsys, monkeypatch):
    from rotbell.correlation import _sign_matrix, antidiagonal_profile

    def flipped(state, angles):
        prof = state if hasattr(state, "values") else antidiagonal_profile(state)
        phi = _sign_matrix(prof.n_qubits) @ np.asarray(angles, dtype=float)
        return float(
            2.0 * np.sum(np.cos(phi) * prof.values.real + np.sin(phi) * prof.values.imag)
        )

    monkeypatch.setattr(oracle_mod, "correlation_value", flipped)
    code, out, _ = run_cli(capsys, "verify")
    assert code == 2
    assert "FAIL" in out
