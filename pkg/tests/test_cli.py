import json
import math

import pytest

from helix_lattice import cli
from helix_lattice.cli import (
    EXIT_INPUT,
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_VIOLATION,
    main,
    parse_lattice,
    parse_sweep_config,
)
from helix_lattice.errors import DomainError
from helix_lattice.verify import BoundReport, TheoremId


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# constants


def test_constants_standard(capsys):
    code, out, _ = run(["constants"], capsys)
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["d_min"] == 1.0
    assert payload["a_min_lb"] == 0.5
    assert payload["lambda1"] == 1.0


def test_constants_scaled(capsys):
    spec = "0,0,0, 2,0,0, 0,2,0, 0,0,2"
    code, out, _ = run(["constants", "--lattice", spec, "--exhaustive-bound", "2"], capsys)
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["d_min"] == 2.0
    assert payload["a_min_lb"] == 2.0
    assert payload["a_min_exact"] == 2.0


def test_constants_consistency_random(capsys):
    spec = "0.1,0,0, 1.1,0.2,0, -0.3,0.9,0.1, 0.2,0,1.4"
    code, out, _ = run(["constants", "--lattice", spec], capsys)
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["d_min"] >= math.sqrt(payload["lambda1"]) * (1 - 1e-12)
    assert len(payload["d_min_coeffs"]) == 3


def test_constants_singular_basis_exit_2(capsys):
    spec = "0,0,0, 1,0,0, 2,0,0, 0,0,1"
    code, _, err = run(["constants", "--lattice", spec], capsys)
    assert code == EXIT_INPUT
    assert "singular" in err.lower()


def test_constants_csv(capsys):
    code, out, _ = run(["constants", "--format", "csv"], capsys)
    assert code == EXIT_OK
    header, row = out.strip().splitlines()
    assert header.startswith("schema,lambda1,d_min")
    cells = row.split(",")
    assert cells[0] == "1"  # schema version
    assert cells[1] == "1"  # lambda1 of the standard lattice


# ---------------------------------------------------------------------------
# lattice specs


def test_parse_lattice_file(tmp_path):
    path = tmp_path / "lat.txt"
    path.write_text("0 0 0  2 0 0  0 2 0  0 0 2\n")
    lat = parse_lattice("@" + str(path))
    assert lat.v1.as_tuple() == (2.0, 0.0, 0.0)


def test_parse_lattice_json_file(tmp_path):
    path = tmp_path / "lat.json"
    path.write_text(json.dumps([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    lat = parse_lattice("@" + str(path))
    assert lat.v3.as_tuple() == (0.0, 0.0, 1.0)


def test_parse_lattice_bad_count():
    with pytest.raises(DomainError):
        parse_lattice("1,2,3")


# ---------------------------------------------------------------------------
# verify subcommands


def test_verify_schinzel_25(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, _, _ = run(["verify", "schinzel", "25", "--out", str(out_path)], capsys)
    assert code == EXIT_OK
    payload = json.loads(out_path.read_text())
    report = payload["reports"][0]
    assert report["theorem_id"] == "schinzel"
    assert report["observed_min"] == pytest.approx(4.636476090008061, rel=1e-12)
    assert not report["vacuous"]


def test_verify_schinzel_vacuous(capsys):
    code, out, _ = run(["verify", "schinzel", "3"], capsys)
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["reports"][0]["vacuous"] is True
    assert payload["summary"]["vacuous_count"] == 1


def test_verify_near_helix_inadmissible_delta(capsys):
    code, out, _ = run(
        [
            "verify",
            "near-helix",
            "--kappa", "0.9", "--tau", "0.3",
            "--delta", "0.2",
            "--window", "0", "25",
        ],
        capsys,
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    report = payload["reports"][0]
    assert report["admissible"] is False
    assert report["ok"] is True


def test_verify_near_helix_rich(capsys):
    kappa = 1.0 / (1.0 + 1.0 / math.pi**2)
    tau = (1.0 / math.pi) / (1.0 + 1.0 / math.pi**2)
    code, out, _ = run(
        [
            "verify",
            "near-helix",
            "--kappa", repr(kappa), "--tau", repr(tau),
            "--delta", "0.001",
            "--window", "0", repr(16 * math.pi),
        ],
        capsys,
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    report = payload["reports"][0]
    assert report["details"]["point_count"] == 17
    assert report["ok"] is True and report["vacuous"] is False


def test_verify_on_helix_with_corollary(tmp_path, capsys):
    kappa = 1.0 / (1.0 + 4.0 / math.pi**2)
    tau = (2.0 / math.pi) / (1.0 + 4.0 / math.pi**2)
    svg_path = tmp_path / "tube.svg"
    code, out, _ = run(
        [
            "verify",
            "on-helix",
            "--kappa", repr(kappa), "--tau", repr(tau),
            "--window", "0", repr(16 * math.pi),
            "--svg", str(svg_path),
        ],
        capsys,
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    ids = [r["theorem_id"] for r in payload["reports"]]
    assert ids == ["on_helix", "corollary"]
    assert all(r["ok"] for r in payload["reports"])
    assert svg_path.read_text().startswith("<svg")


def test_verify_missing_helix_flags(capsys):
    code, _, err = run(["verify", "near-helix"], capsys)
    assert code == EXIT_INPUT
    assert "--kappa" in err


def test_verify_window_cap(capsys):
    code, _, err = run(
        ["verify", "near-helix", "--kappa", "1", "--tau", "1", "--window", "0", "300"],
        capsys,
    )
    assert code == EXIT_INPUT
    assert "cap" in err


def test_verify_violation_exit_code(monkeypatch, capsys):
    # harness negative control: force a failing report through the CLI path
    failing = BoundReport(
        theorem_id=TheoremId.MAIN,
        inputs={},
        bound_value=10.0,
        observed_min=1.0,
        admissible=True,
        tightness=0.1,
        vacuous=False,
        ok=False,
    )
    monkeypatch.setattr(cli, "verify_near_helix", lambda query, constants: failing)
    code, _, err = run(
        ["verify", "near-helix", "--kappa", "1", "--tau", "1", "--delta", "0.0001"],
        capsys,
    )
    assert code == EXIT_VIOLATION
    assert "violation" in err


# ---------------------------------------------------------------------------
# sweep


SWEEP_JSON = {
    "kappa_range": [0.8, 1.2, 2],
    "tau_range": [0.25, 0.35, 2],
    "delta_policy": "fraction:0.5",
    "window": [0.0, 4 * math.pi],
    "seed": 7,
    "budget": 100000,
}


def _write_config(tmp_path, payload=None, text=None):
    path = tmp_path / "sweep.json"
    if text is None:
        text = json.dumps(payload)
    path.write_text(text)
    return str(path)


def test_sweep_csv_deterministic(tmp_path, capsys):
    config = _write_config(tmp_path, SWEEP_JSON)
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    assert main(["sweep", "--config", config, "--out", str(out1)]) == EXIT_OK
    assert main(["sweep", "--config", config, "--out", str(out2)]) == EXIT_OK
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().strip().splitlines()
    assert lines[0].startswith("schema,kappa,tau,")
    assert len(lines) == 1 + 4  # header + 2x2 grid


def test_sweep_json_deterministic(tmp_path, capsys):
    config = _write_config(tmp_path, SWEEP_JSON)
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert main(["sweep", "--config", config, "--format", "json", "--out", str(out1)]) == EXIT_OK
    assert main(["sweep", "--config", config, "--format", "json", "--out", str(out2)]) == EXIT_OK
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
    payload = json.loads(out1.read_text())
    assert payload["schema"] == 1
    assert len(payload["rows"]) == 4


def test_sweep_key_value_config(tmp_path, capsys):
    text = "\n".join(
        [
            "# comment",
            "kappa_range = 0.9, 1.1, 1",
            "tau_range = 0.3, 0.3, 1",
            "delta_policy = zero",
            "window = 0, 12.0",
            "seed = 3",
        ]
    )
    config = _write_config(tmp_path, text=text)
    code, out, _ = run(["sweep", "--config", config, "--format", "json"], capsys)
    assert code == EXIT_OK
    payload = json.loads(out)
    assert len(payload["rows"]) == 1
    assert payload["rows"][0]["delta"] == 0.0


def test_sweep_single_cell_matches_verify(tmp_path, capsys):
    config = _write_config(
        tmp_path,
        {
            "kappa_range": [1.0, 1.0, 1],
            "tau_range": [0.4, 0.4, 1],
            "delta_policy": "zero",
            "window": [0.0, 4 * math.pi],
        },
    )
    code, out, _ = run(["sweep", "--config", config, "--format", "json"], capsys)
    assert code == EXIT_OK
    row = json.loads(out)["rows"][0]
    code, out, _ = run(
        ["verify", "near-helix", "--kappa", "1.0", "--tau", "0.4", "--delta", "0",
         "--window", "0", repr(4 * math.pi)],
        capsys,
    )
    assert code == EXIT_OK
    report = json.loads(out)["reports"][0]
    assert row["separation_bound"] == report["bound_value"]
    assert row["observed_min"] == report["observed_min"]
    assert row["vacuous"] == report["vacuous"]
    assert row["point_count"] == report["details"]["point_count"]


def test_sweep_ten_by_ten_grid_within_budget(tmp_path, capsys):
    import time

    config = _write_config(
        tmp_path,
        {
            "kappa_range": [0.5, 1.5, 10],
            "tau_range": [0.2, 0.6, 10],
            "delta_policy": "fraction:0.5",
            "window": [0.0, 8 * math.pi],
        },
    )
    out = tmp_path / "grid.csv"
    start = time.perf_counter()
    code = main(["sweep", "--config", config, "--out", str(out)])
    elapsed = time.perf_counter() - start
    capsys.readouterr()
    assert code == EXIT_OK
    assert len(out.read_text().strip().splitlines()) == 101  # header + 100 cells
    assert elapsed < 60.0  # measured ~0.03s compiled, ~0.2s pure


def test_sweep_malformed_config_names_field(tmp_path, capsys):
    config = _write_config(tmp_path, {"kappa_range": [1.0, 1.0, 1]})
    code, _, err = run(["sweep", "--config", config], capsys)
    assert code == EXIT_INPUT
    assert "tau_range" in err


def test_sweep_unknown_field_rejected(tmp_path, capsys):
    config = _write_config(
        tmp_path, {"kappa_range": [1, 1, 1], "tau_range": [1, 1, 1], "bogus": 1}
    )
    code, _, err = run(["sweep", "--config", config], capsys)
    assert code == EXIT_INPUT
    assert "bogus" in err


def test_sweep_budget_exceeded_exit_3(tmp_path, capsys):
    config = _write_config(
        tmp_path,
        {
            "kappa_range": [0.2, 0.2, 1],
            "tau_range": [0.05, 0.05, 1],
            "delta_policy": "zero",
            "window": [0.0, 60.0],
            "budget": 2,
        },
    )
    code, _, err = run(["sweep", "--config", config], capsys)
    assert code == EXIT_RESOURCE
    assert "resource" in err


def test_sweep_fraction_policy_validation():
    with pytest.raises(DomainError):
        parse_sweep_config(json.dumps({"kappa_range": [1, 1, 1], "tau_range": [1, 1, 1], "delta_policy": "fraction:1.5"}))
    cfg = parse_sweep_config(json.dumps({"kappa_range": [1, 1, 1], "tau_range": [1, 1, 1], "delta_policy": {"fraction": 0.25}}))
    assert cfg.delta_policy == "fraction" and cfg.delta_fraction == 0.25


def test_verify_budget_exceeded_exit_3(capsys):
    code, _, err = run(
        [
            "verify", "near-helix",
            "--kappa", "0.2", "--tau", "0.05",
            "--delta", "0",
            "--window", "0", "60",
            "--budget", "2",
        ],
        capsys,
    )
    assert code == EXIT_RESOURCE
    assert "resource" in err


def test_unknown_command_exit_2(capsys):
    code, _, _ = run(["frobnicate"], capsys)
    assert code == EXIT_INPUT


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "helix_lattice", "verify", "schinzel", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert '"schema": 1' in proc.stdout
