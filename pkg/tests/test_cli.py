"""Command line front end tests; all invocations run main() in-process."""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from gapscan import Hamiltonian, cutoff_error_bound, min_sampling_range, save_hamiltonian
from gapscan.cli import load_run_config, main, read_spectrum_csv

GAP_DET = """\
[model]
kind = "heisenberg"
n = 3

[state]
initial = "super(+++,001)"

[scan]
mode = "gap"
a = 0.05
cutoff = 60.0
tau = 0.14
e_grid = [0.5, 10.8, 0.025]

[output]
dir = "{out}"
emit = {emit}
"""


def write_cfg(tmp_path, text, name="run.toml"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def det_cfg(tmp_path, emit='["spectrum_csv", "peaks_json"]', out="out"):
    return write_cfg(tmp_path, GAP_DET.format(out=tmp_path / out, emit=emit))


class TestValidate:
    def test_valid_config_ok(self, tmp_path, capsys):
        assert main(["validate", det_cfg(tmp_path)]) == 0
        assert capsys.readouterr().out.strip() == "ok"

    def test_cooling_range_violation_cites_range_and_line(self, tmp_path, capsys):
        text = GAP_DET.format(out=tmp_path, emit="[]").replace("a = 0.05", "a = 1.5")
        path = write_cfg(tmp_path, text)
        assert main(["validate", path]) == 2
        out = capsys.readouterr().out
        assert "0 < a < 1" in out
        line_no = text.splitlines().index("a = 1.5") + 1
        assert f"{path}:{line_no}: [scan] a:" in out

    def test_all_violations_listed(self, tmp_path, capsys):
        text = (
            GAP_DET.format(out=tmp_path, emit="[]")
            .replace("a = 0.05", "a = 1.5")
            .replace('mode = "gap"', 'mode = "transition"')
            + 'threshold = 1.4\n'
        )
        assert main(["validate", write_cfg(tmp_path, text)]) == 2
        out = capsys.readouterr().out
        assert "0 < a < 1" in out
        assert "model2" in out
        assert "threshold" in out
        assert len(out.strip().splitlines()) == 3

    def test_missing_sections(self, tmp_path, capsys):
        assert main(["validate", write_cfg(tmp_path, "[model]\nkind = 'heisenberg'\nn = 2\n")]) == 2
        out = capsys.readouterr().out
        for section in ("state", "scan", "output"):
            assert f"[{section}]" in out

    def test_unknown_section_and_key(self, tmp_path, capsys):
        text = GAP_DET.format(out=tmp_path, emit="[]") + "[plotting]\nstyle = 1\n"
        text = text.replace("tau = 0.14", "tau = 0.14\ncolor = 3")
        assert main(["validate", write_cfg(tmp_path, text)]) == 2
        out = capsys.readouterr().out
        assert "[plotting]: unknown section" in out
        assert "[scan] color: unknown key" in out

    def test_toml_syntax_error(self, tmp_path, capsys):
        assert main(["validate", write_cfg(tmp_path, "[scan\nmode=")]) == 2
        assert "TOML syntax error" in capsys.readouterr().out

    def test_missing_file(self, tmp_path, capsys):
        assert main(["validate", str(tmp_path / "nope.toml")]) == 2
        assert "cannot read config" in capsys.readouterr().out

    def test_tau_with_shots(self, tmp_path, capsys):
        text = GAP_DET.format(out=tmp_path, emit="[]").replace("tau = 0.14", "tau = 0.14\nshots = 50")
        assert main(["validate", write_cfg(tmp_path, text)]) == 2
        assert "drop shots" in capsys.readouterr().out

    def test_tau_aliasing_precheck(self, tmp_path, capsys):
        text = GAP_DET.format(out=tmp_path, emit="[]").replace("tau = 0.14", "tau = 0.5")
        assert main(["validate", write_cfg(tmp_path, text)]) == 2
        assert "tau too coarse" in capsys.readouterr().out

    def test_bad_state_spec(self, tmp_path, capsys):
        text = GAP_DET.format(out=tmp_path, emit="[]").replace("super(+++,001)", "++2")
        assert main(["validate", write_cfg(tmp_path, text)]) == 2
        assert "[state] initial" in capsys.readouterr().out

    def test_observable_qubit_mismatch(self, tmp_path, capsys):
        save_hamiltonian(Hamiltonian.from_terms(2, [("ZI", 1.0)]), tmp_path / "o.json")
        text = GAP_DET.format(out=tmp_path, emit="[]") + (
            f'\n[observable]\nkind = "pauli_sum"\npath = "{tmp_path / "o.json"}"\n'
        )
        assert main(["validate", write_cfg(tmp_path, text)]) == 2
        assert "2 qubits, model on 3" in capsys.readouterr().out

    def test_observable_with_symmetry_rejected(self, tmp_path, capsys):
        save_hamiltonian(
            Hamiltonian.from_terms(3, [("ZII", 1.0), ("IZI", 1.0), ("IIZ", 1.0)]),
            tmp_path / "s.json",
        )
        text = GAP_DET.format(out=tmp_path, emit="[]") + (
            f'\n[observable]\nkind = "identity"\n\n[symmetry]\npath = "{tmp_path / "s.json"}"\n'
        )
        assert main(["validate", write_cfg(tmp_path, text)]) == 2
        assert "fixes the observable" in capsys.readouterr().out

    def test_validate_never_writes(self, tmp_path):
        cfg = det_cfg(tmp_path, out="vout")
        main(["validate", cfg])
        assert not (tmp_path / "vout").exists()


class TestScanCommand:
    def test_deterministic_gap_run(self, tmp_path, capsys):
        assert main(["scan", det_cfg(tmp_path)]) == 0
        out_dir = tmp_path / "out"
        assert (out_dir / "spectrum.csv").exists()
        assert (out_dir / "peaks.json").exists()
        payload = json.loads((out_dir / "peaks.json").read_text())
        locs = [p["E"] for p in payload["peaks"]]
        # 3-site chain gaps are even integers; window and weights admit 2, 4, 6
        assert len(locs) >= 3
        for loc in locs:
            assert min(abs(loc - g) for g in (2.0, 4.0, 6.0, 8.0, 10.0)) < 0.02
        assert payload["seed"] == 0
        assert payload["units"] == "model"
        assert payload["config"]["scan"]["a"] == 0.05

    def test_spectrum_header_contract(self, tmp_path):
        main(["scan", det_cfg(tmp_path)])
        lines = (tmp_path / "out" / "spectrum.csv").read_text().splitlines()
        assert lines[0] == "# gapscan spectrum v1"
        assert lines[1].startswith("# config: {")
        assert lines[2] == "# seed: 0"
        assert lines[3] == "# mode: gap"
        assert lines[4] == "# units: model"
        assert lines[5] == "E,re_C,im_C,stderr"
        first = lines[6].split(",")
        assert len(first) == 4
        assert float(first[0]) == 0.5

    def test_byte_identical_reruns(self, tmp_path):
        cfg_a = write_cfg(tmp_path, GAP_DET.format(out=tmp_path / "a", emit='["spectrum_csv", "peaks_json"]'), "a.toml")
        cfg_b = write_cfg(tmp_path, GAP_DET.format(out=tmp_path / "b", emit='["spectrum_csv", "peaks_json"]'), "b.toml")
        assert main(["scan", cfg_a]) == 0
        assert main(["scan", cfg_b]) == 0
        for name in ("spectrum.csv", "peaks.json"):
            a = (tmp_path / "a" / name).read_bytes()
            b = (tmp_path / "b" / name).read_bytes()
            # the config snapshot embeds the differing output dir; compare payload
            a = a.replace(str(tmp_path / "a").encode(), b"OUT")
            b = b.replace(str(tmp_path / "b").encode(), b"OUT")
            assert a == b

    def test_monte_carlo_reruns_byte_identical(self, tmp_path):
        text = GAP_DET.format(out=tmp_path / "mc", emit='["spectrum_csv"]').replace(
            "tau = 0.14", "n_samples = 400\nseed = 11"
        )
        cfg = write_cfg(tmp_path, text)
        assert main(["scan", cfg]) == 0
        first = (tmp_path / "mc" / "spectrum.csv").read_bytes()
        assert main(["scan", cfg]) == 0
        assert (tmp_path / "mc" / "spectrum.csv").read_bytes() == first
        scan, meta = read_spectrum_csv(tmp_path / "mc" / "spectrum.csv")
        assert meta["seed"] == 11
        assert scan.stderr.max() > 0

    def test_peaks_roundtrip_identical(self, tmp_path, capsys):
        assert main(["scan", det_cfg(tmp_path)]) == 0
        emitted = json.loads((tmp_path / "out" / "peaks.json").read_text())
        capsys.readouterr()
        assert main(["peaks", str(tmp_path / "out" / "spectrum.csv")]) == 0
        reparsed = json.loads(capsys.readouterr().out)
        assert reparsed["peaks"] == emitted["peaks"]
        assert reparsed["threshold"] == emitted["threshold"]

    def test_all_artifacts(self, tmp_path):
        emit = '["spectrum_csv", "peaks_json", "budget_csv", "plot_data"]'
        assert main(["scan", det_cfg(tmp_path, emit=emit)]) == 0
        out_dir = tmp_path / "out"
        budget = (out_dir / "budget.csv").read_text().splitlines()
        header = budget[-2].split(",")
        row = dict(zip(header, map(float, budget[-1].split(","))))
        assert row["a"] == 0.05
        assert row["T"] == 60.0
        assert row["min_T"] == pytest.approx(min_sampling_range(0.05, 1e-2), rel=1e-12)
        assert row["cutoff_bound"] == pytest.approx(cutoff_error_bound(0.05, 60.0), rel=1e-12)
        assert math.isnan(row["shot_variance_bound"])
        plot = (out_dir / "plot.dat").read_text().splitlines()
        assert plot[0] == "# gapscan plot data v1"
        assert any("gnuplot" in line for line in plot[:8])
        assert len(plot[-1].split(" ")) == 3

    def test_budget_csv_shot_bound_from_shots(self, tmp_path):
        text = GAP_DET.format(out=tmp_path / "out", emit='["budget_csv"]').replace(
            "tau = 0.14", "n_samples = 100\nshots = 40"
        )
        assert main(["scan", write_cfg(tmp_path, text)]) == 0
        budget = (tmp_path / "out" / "budget.csv").read_text().splitlines()
        row = dict(zip(budget[-2].split(","), map(float, budget[-1].split(","))))
        assert row["shot_variance_bound"] == pytest.approx(1 / (4 * 40), rel=1e-12)

    def test_transition_mode_via_files(self, tmp_path, capsys):
        save_hamiltonian(Hamiltonian.from_terms(1, [("Z", 1.0)]), tmp_path / "h1.json")
        save_hamiltonian(Hamiltonian.from_terms(1, [("Z", 2.0)]), tmp_path / "h2.json")
        text = f"""\
[model]
kind = "file"
path = "{tmp_path / "h1.json"}"

[model2]
kind = "file"
path = "{tmp_path / "h2.json"}"

[state]
initial = "0"

[scan]
mode = "transition"
a = 0.2
cutoff = 30.0
tau = 0.5
e_grid = [-3.0, 3.0, 0.05]

[output]
dir = "{tmp_path / "out"}"
units = "model"
"""
        assert main(["scan", write_cfg(tmp_path, text)]) == 0
        payload = json.loads((tmp_path / "out" / "peaks.json").read_text())
        # E^(1) - E^(2) for the shared |0> level: 1 - 2 = -1
        assert len(payload["peaks"]) == 1
        assert payload["peaks"][0]["E"] == pytest.approx(-1.0, abs=1e-6)
        assert payload["units"] == "model"

    def test_grid2d_emits_e2_column(self, tmp_path, capsys):
        save_hamiltonian(Hamiltonian.from_terms(1, [("Z", 1.0)]), tmp_path / "h.json")
        text = f"""\
[model]
kind = "file"
path = "{tmp_path / "h.json"}"

[state]
initial = "0"

[scan]
mode = "grid2d"
a = 0.3
cutoff = 12.0
n_samples = 200
e_grid = [-2.0, 2.0, 0.1]
e_grid2 = [-2.0, 2.0, 0.2]

[output]
dir = "{tmp_path / "out"}"
emit = ["spectrum_csv", "plot_data"]
"""
        assert main(["scan", write_cfg(tmp_path, text)]) == 0
        lines = (tmp_path / "out" / "spectrum.csv").read_text().splitlines()
        assert "E,E2,re_C,im_C,stderr" in lines
        n_rows = sum(1 for l in lines if l and not l.startswith("#") and not l.startswith("E,"))
        assert n_rows == 41 * 21
        capsys.readouterr()
        assert main(["peaks", str(tmp_path / "out" / "spectrum.csv")]) == 2
        assert "1-D" in capsys.readouterr().err

    def test_degeneracy_probe_via_symmetry_section(self, tmp_path):
        save_hamiltonian(
            Hamiltonian.from_terms(3, [("ZII", 1.0), ("IZI", 1.0), ("IIZ", 1.0)]),
            tmp_path / "s.json",
        )
        text = GAP_DET.format(out=tmp_path / "out", emit='["spectrum_csv"]') + (
            f'\n[symmetry]\npath = "{tmp_path / "s.json"}"\n'
        )
        assert main(["scan", write_cfg(tmp_path, text)]) == 0
        scan, meta = read_spectrum_csv(tmp_path / "out" / "spectrum.csv")
        assert meta["mode"] == "gap"
        assert np.all(np.isfinite(scan.c_values.real))

    def test_scan_with_violations_writes_nothing(self, tmp_path, capsys):
        text = GAP_DET.format(out=tmp_path / "out", emit="[]").replace("a = 0.05", "a = -1")
        assert main(["scan", write_cfg(tmp_path, text)]) == 2
        assert not (tmp_path / "out").exists()
        assert "cooling width" in capsys.readouterr().err

    def test_numeric_failure_exit_code(self, tmp_path, capsys):
        # coefficient near float max: the pair summand overflows and the
        # assembly finite check trips
        save_hamiltonian(Hamiltonian.from_terms(2, [("ZI", 1e308)]), tmp_path / "huge.json")
        text = f"""\
[model]
kind = "heisenberg"
n = 2

[state]
initial = "++"

[observable]
kind = "pauli_sum"
path = "{tmp_path / "huge.json"}"

[scan]
mode = "gap"
a = 0.3
cutoff = 10.0
n_samples = 10
e_grid = [-3.0, 3.0, 0.1]

[output]
dir = "{tmp_path / "out"}"
"""
        assert main(["scan", write_cfg(tmp_path, text)]) == 3
        assert "numeric error" in capsys.readouterr().err


class TestPeaksCommand:
    def test_threshold_flag(self, tmp_path, capsys):
        main(["scan", det_cfg(tmp_path)])
        spectrum = str(tmp_path / "out" / "spectrum.csv")
        capsys.readouterr()
        assert main(["peaks", spectrum, "--threshold", "0.5"]) == 0
        strict = json.loads(capsys.readouterr().out)
        assert main(["peaks", spectrum, "--threshold", "0.02"]) == 0
        loose = json.loads(capsys.readouterr().out)
        assert len(strict["peaks"]) < len(loose["peaks"])

    def test_corrupt_csv(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("E,re_C,im_C,stderr\n1.0,2.0,oops,0.0\n")
        assert main(["peaks", str(bad)]) == 2
        assert "bad data row" in capsys.readouterr().err

    def test_wrong_header(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("x,y\n1,2\n")
        assert main(["peaks", str(bad)]) == 2

    def test_missing_file(self, tmp_path, capsys):
        assert main(["peaks", str(tmp_path / "nope.csv")]) == 2


class TestBudgetCommand:
    def test_prints_bounds(self, capsys):
        assert main(["budget", "--a", "1.0", "--T", "0.0", "--eps", str(2 / math.e)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["cutoff_bound"] == 2.0
        assert payload["min_T"] == pytest.approx(1.0, rel=1e-12)

    def test_invalid_width(self, capsys):
        assert main(["budget", "--a", "-1", "--T", "5"]) == 2
        assert "config error" in capsys.readouterr().err


class TestSweepCommand:
    def test_sweep_writes_contract_columns(self, tmp_path, capsys):
        cfg = det_cfg(tmp_path, emit="[]")
        assert main(["sweep-cutoff", cfg, "--T-list", "20", "40", "60"]) == 0
        lines = (tmp_path / "out" / "sweep.csv").read_text().splitlines()
        assert lines[0] == "# gapscan cutoff-sweep v1"
        idx = lines.index("T,gap_error,paper_bound,tight_bound")
        rows = [list(map(float, l.split(","))) for l in lines[idx + 1 :]]
        assert [r[0] for r in rows] == [20.0, 40.0, 60.0]
        for t, err, paper, tight in rows:
            assert paper == pytest.approx(cutoff_error_bound(0.05, t), rel=1e-12)
            assert err <= paper
            assert tight <= paper

    def test_sweep_rejects_mc_config(self, tmp_path, capsys):
        text = GAP_DET.format(out=tmp_path / "out", emit="[]").replace(
            "tau = 0.14", "n_samples = 100"
        )
        assert main(["sweep-cutoff", write_cfg(tmp_path, text), "--T-list", "20"]) == 2
        assert "deterministic" in capsys.readouterr().err


class TestModuleEntryPoint:
    def test_python_dash_m_invocation(self, tmp_path):
        cfg = det_cfg(tmp_path)
        proc = subprocess.run(
            [sys.executable, "-m", "gapscan.cli", "validate", cfg],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == "ok"


class TestLoadRunConfig:
    def test_builds_complete_config(self, tmp_path):
        violations, rc = load_run_config(det_cfg(tmp_path))
        assert violations == []
        assert rc.h.n_qubits == 3
        assert rc.scan_config.tau == 0.14
        assert rc.emit == ("spectrum_csv", "peaks_json")
        assert rc.units == "model"
        assert json.loads(rc.snapshot)["scan"]["mode"] == "gap"

    def test_emit_default(self, tmp_path):
        text = "\n".join(
            l for l in GAP_DET.format(out=tmp_path / "out", emit="IGNORED").splitlines()
            if not l.startswith("emit")
        )
        violations, rc = load_run_config(write_cfg(tmp_path, text))
        assert violations == []
        assert rc.emit == ("spectrum_csv", "peaks_json")