"""Config-driven command line front end.

A run is described by one TOML manifest with flat sections: [model]
(and optional [model2] for transition scans), [state], optional
[observable] and [symmetry], [scan], optional [budget], and [output].
`scan` executes the manifest and writes the requested artifacts,
`validate` reports every violation without executing, `peaks` re-detects
peaks from an emitted spectrum CSV, `budget` prints truncation bounds,
and `sweep-cutoff` reruns a deterministic gap scan over a cutoff list.

Every artifact embeds the canonical config snapshot and the seed; rerun
outputs are byte-identical. Exit codes: 0 success, 2 config error,
3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from .budget import (
    BudgetError,
    cutoff_error_bound,
    cutoff_error_bound_tight,
    cutoff_sweep,
    min_sampling_range,
    shot_variance_bound,
)
from .pauli import Hamiltonian, Observable, PauliError, heisenberg_chain, load_hamiltonian
from .peaks import DEFAULT_PROMINENCE, PeakError, find_peaks
from .scan import (
    CoolingFunction,
    EvolutionSpec,
    ScanConfig,
    ScanError,
    SpectralScan,
    assemble_scan_deterministic,
    degeneracy_probe,
    energy_grid,
    run_scan,
    scan_2d,
)
from .states import NumericError, StateError, prepare_state

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

_EMIT_KINDS = ("spectrum_csv", "peaks_json", "budget_csv", "plot_data")
_DEFAULT_EMIT = ("spectrum_csv", "peaks_json")

_SECTIONS = {
    "model": {"kind", "n", "J", "h", "periodic", "path"},
    "model2": {"kind", "n", "J", "h", "periodic", "path"},
    "state": {"initial"},
    "observable": {"kind", "path"},
    "symmetry": {"path"},
    "scan": {
        "mode",
        "kind",
        "a",
        "cutoff",
        "n_samples",
        "e_grid",
        "e_grid2",
        "seed",
        "shots",
        "tau",
        "evolution",
        "steps_per_time",
        "engine",
    },
    "budget": {"eps_c"},
    "output": {"dir", "emit", "units", "threshold"},
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    h: Hamiltonian
    h2: Hamiltonian | None
    psi0: np.ndarray
    observable: Observable | None
    symmetry: Observable | None
    scan_config: ScanConfig
    out_dir: Path
    emit: tuple[str, ...]
    units: str
    threshold: float
    eps_c: float
    snapshot: str
    source: str


def _line_of(raw: str, section: str, key: str | None = None) -> int:
    """Best-effort line anchor for a section or a key within it."""
    in_section = False
    section_line = 1
    for i, line in enumerate(raw.splitlines(), start=1):
        text = line.strip()
        if text.startswith("["):
            name = text.strip("[]").strip()
            if name == section:
                in_section = True
                section_line = i
            elif in_section:
                break
            continue
        if in_section and key and (text.startswith(f"{key} ") or text.startswith(f"{key}=")):
            return i
    return section_line


class _Diagnostics:
    def __init__(self, path: str, raw: str):
        self.path = path
        self.raw = raw
        self.items: list[str] = []

    def add(self, section: str, key: str | None, message: str) -> None:
        line = _line_of(self.raw, section, key)
        where = f"[{section}] {key}" if key else f"[{section}]"
        self.items.append(f"{self.path}:{line}: {where}: {message}")


def _get(table: dict, key: str, kind, diag: _Diagnostics, section: str, default=None, required=False):
    if key not in table:
        if required:
            diag.add(section, None, f"missing required key {key!r}")
        return default
    value = table[key]
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    bad_bool = isinstance(value, bool) and kind is not bool
    if bad_bool or (kind is not None and not isinstance(value, kind)):
        diag.add(section, key, f"expected {getattr(kind, '__name__', kind)}, got {type(value).__name__}")
        return default
    return value


def _parse_model(table: dict, diag: _Diagnostics, section: str) -> Hamiltonian | None:
    kind = _get(table, "kind", str, diag, section, required=True)
    if kind == "heisenberg":
        n = _get(table, "n", int, diag, section, required=True)
        jj = _get(table, "J", float, diag, section, default=1.0)
        hh = _get(table, "h", float, diag, section, default=1.0)
        periodic = _get(table, "periodic", bool, diag, section, default=False)
        if n is None:
            return None
        try:
            return heisenberg_chain(n, J=jj, h=hh, periodic=periodic)
        except PauliError as exc:
            diag.add(section, "n", str(exc))
            return None
    if kind == "file":
        path = _get(table, "path", str, diag, section, required=True)
        if path is None:
            return None
        try:
            return load_hamiltonian(path)
        except (OSError, PauliError) as exc:
            diag.add(section, "path", str(exc))
            return None
    if kind is not None:
        diag.add(section, "kind", f"unknown model kind {kind!r} (heisenberg or file)")
    return None


def _parse_pauli_file(table: dict, diag: _Diagnostics, section: str) -> Hamiltonian | None:
    path = _get(table, "path", str, diag, section, required=True)
    if path is None:
        return None
    try:
        return load_hamiltonian(path)
    except (OSError, PauliError) as exc:
        diag.add(section, "path", str(exc))
        return None


def _parse_grid(table: dict, key: str, diag: _Diagnostics, required=False):
    if key not in table:
        if required:
            diag.add("scan", None, f"missing required key {key!r}")
        return None
    value = table[key]
    if not isinstance(value, list) or len(value) != 3:
        diag.add("scan", key, "expected [min, max, step]")
        return None
    try:
        return tuple(float(v) for v in value)
    except (TypeError, ValueError):
        diag.add("scan", key, "grid entries must be numbers")
        return None


def load_run_config(path: str) -> tuple[list[str], RunConfig | None]:
    """Parse and fully validate a manifest; collect every violation."""
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        return [f"{path}:1: cannot read config: {exc}"], None
    diag = _Diagnostics(path, raw)
    try:
        doc = tomllib.loads(raw)
    except tomllib.TOMLDecodeError as exc:
        return [f"{path}: TOML syntax error: {exc}"], None

    for section in doc:
        if section not in _SECTIONS:
            diag.add(section, None, "unknown section")
        elif not isinstance(doc[section], dict):
            diag.add(section, None, "expected a [section] table")
        else:
            for key in doc[section]:
                if key not in _SECTIONS[section]:
                    diag.add(section, key, "unknown key")
    for section in ("model", "state", "scan", "output"):
        if section not in doc:
            diag.items.append(f"{path}:1: missing required section [{section}]")
    if diag.items:
        return diag.items, None

    h = _parse_model(doc["model"], diag, "model")
    h2 = _parse_model(doc["model2"], diag, "model2") if "model2" in doc else None

    scan_t = doc["scan"]
    mode = _get(scan_t, "mode", str, diag, "scan", required=True)
    cooling_kind = _get(scan_t, "kind", str, diag, "scan", default="gaussian")
    a = _get(scan_t, "a", float, diag, "scan", required=True)
    cutoff = _get(scan_t, "cutoff", float, diag, "scan", required=True)
    tau = _get(scan_t, "tau", float, diag, "scan")
    n_samples = _get(scan_t, "n_samples", int, diag, "scan", default=2 if tau else None,
                     required=tau is None)
    seed = _get(scan_t, "seed", int, diag, "scan", default=0)
    shots = _get(scan_t, "shots", int, diag, "scan")
    e_grid = _parse_grid(scan_t, "e_grid", diag, required=True)
    e_grid2 = _parse_grid(scan_t, "e_grid2", diag)
    evo_kind = _get(scan_t, "evolution", str, diag, "scan", default="exact")
    steps = _get(scan_t, "steps_per_time", float, diag, "scan", default=0.0)
    engine = _get(scan_t, "engine", str, diag, "scan", default="auto")

    cooling = None
    if cooling_kind is not None and a is not None:
        try:
            cooling = CoolingFunction(cooling_kind, a)
        except ScanError as exc:
            diag.add("scan", "a", str(exc))
    evolution = None
    if evo_kind is not None:
        try:
            evolution = EvolutionSpec(evo_kind, steps, engine)
        except ScanError as exc:
            diag.add("scan", "evolution", str(exc))

    scan_config = None
    if None not in (mode, cooling, cutoff, n_samples, e_grid, evolution):
        try:
            scan_config = ScanConfig(
                mode=mode,
                cooling=cooling,
                cutoff=cutoff,
                n_samples=n_samples,
                e_grid=e_grid,
                shots=shots,
                seed=seed,
                evolution=evolution,
                tau=tau,
                e_grid2=e_grid2,
            )
        except ScanError as exc:
            diag.add("scan", None, str(exc))

    if scan_config is not None:
        if tau is not None and shots is not None:
            diag.add("scan", "shots", "deterministic backend (tau set) is exact; drop shots")
        if tau is not None and mode != "grid2d":
            grids = [energy_grid(e_grid)]
            if e_grid2 is not None:
                grids.append(energy_grid(e_grid2))
            e_absmax = max(max(abs(g[0]), abs(g[-1])) for g in grids)
            n_nodes = max(1, round(cutoff / tau))
            if e_absmax > 0 and cutoff / n_nodes > math.pi / e_absmax:
                diag.add("scan", "tau", f"tau too coarse for the energy window: need tau <= {math.pi / e_absmax:.6g}")
    if mode == "transition" and h2 is None:
        diag.add("scan", "mode", "transition mode needs a [model2] section")
    if mode is not None and mode != "transition" and h2 is not None:
        diag.add("model2", None, "second model is only used by transition mode")
    if mode == "grid2d":
        if evolution is not None and evolution.kind != "exact":
            diag.add("scan", "evolution", "grid2d supports the exact backend only")
        if tau is not None:
            diag.add("scan", "tau", "grid2d has no deterministic backend; drop tau")
    if h is not None and h2 is not None and h.n_qubits != h2.n_qubits:
        diag.add("model2", None, f"qubit counts differ: {h.n_qubits} vs {h2.n_qubits}")

    psi0 = None
    initial = _get(doc["state"], "initial", str, diag, "state", required=True)
    if initial is not None and h is not None:
        try:
            psi0 = prepare_state(initial, h.n_qubits)
        except StateError as exc:
            diag.add("state", "initial", str(exc))

    observable = None
    if "observable" in doc:
        obs_t = doc["observable"]
        obs_kind = _get(obs_t, "kind", str, diag, "observable", required=True)
        if obs_kind in ("identity", "projector"):
            if "path" in obs_t:
                diag.add("observable", "path", f"{obs_kind} takes no path")
            else:
                observable = Observable(obs_kind)
        elif obs_kind == "pauli_sum":
            terms = _parse_pauli_file(obs_t, diag, "observable")
            if terms is not None:
                if h is not None and terms.n_qubits != h.n_qubits:
                    diag.add("observable", "path", f"observable acts on {terms.n_qubits} qubits, model on {h.n_qubits}")
                else:
                    try:
                        observable = Observable("pauli_sum", terms=terms)
                    except PauliError as exc:
                        diag.add("observable", "path", str(exc))
        elif obs_kind is not None:
            diag.add("observable", "kind", f"unknown observable kind {obs_kind!r}")
        if observable is not None and observable.kind == "pauli_sum" and mode == "grid2d":
            diag.add("observable", "kind", "grid2d supports identity and projector observables")

    symmetry = None
    if "symmetry" in doc:
        if mode is not None and mode != "gap":
            diag.add("symmetry", None, "degeneracy probe runs on gap-mode configs")
        if "observable" in doc:
            # the probe kernel already carries the projector onto psi0
            diag.add("observable", None, "degeneracy probe fixes the observable; drop this section")
        terms = _parse_pauli_file(doc["symmetry"], diag, "symmetry")
        if terms is not None:
            if h is not None and terms.n_qubits != h.n_qubits:
                diag.add("symmetry", "path", f"symmetry acts on {terms.n_qubits} qubits, model on {h.n_qubits}")
            else:
                symmetry = Observable("pauli_sum", terms=terms)

    eps_c = 1e-2
    if "budget" in doc:
        eps_c = _get(doc["budget"], "eps_c", float, diag, "budget", default=1e-2)
        if eps_c is not None and not eps_c > 0:
            diag.add("budget", "eps_c", "target error must be positive")
        if eps_c is not None and a is not None and a > 0 and not a * eps_c < 2:
            diag.add("budget", "eps_c", "no truncation needed: a * eps_c >= 2")

    out_t = doc["output"]
    out_dir = _get(out_t, "dir", str, diag, "output", required=True)
    emit_raw = _get(out_t, "emit", list, diag, "output", default=list(_DEFAULT_EMIT))
    emit: tuple[str, ...] = ()
    if emit_raw is not None:
        for item in emit_raw:
            if item not in _EMIT_KINDS:
                diag.add("output", "emit", f"unknown artifact {item!r} (choose from {', '.join(_EMIT_KINDS)})")
        emit = tuple(dict.fromkeys(item for item in emit_raw if item in _EMIT_KINDS))
    threshold = _get(out_t, "threshold", float, diag, "output", default=DEFAULT_PROMINENCE)
    if threshold is not None and not 0 < threshold < 1:
        diag.add("output", "threshold", "prominence threshold must lie in (0, 1)")
    model_kind = doc["model"].get("kind")
    units = _get(out_t, "units", str, diag, "output",
                 default="model" if model_kind == "heisenberg" else "hartree")
    if units not in ("model", "hartree"):
        diag.add("output", "units", f"units must be 'model' or 'hartree', got {units!r}")

    if diag.items:
        return diag.items, None
    snapshot = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return [], RunConfig(
        h=h,
        h2=h2,
        psi0=psi0,
        observable=observable,
        symmetry=symmetry,
        scan_config=scan_config,
        out_dir=Path(out_dir),
        emit=emit,
        units=units,
        threshold=threshold,
        eps_c=eps_c,
        snapshot=snapshot,
        source=path,
    )


def execute(rc: RunConfig) -> SpectralScan:
    cfg = rc.scan_config
    deterministic = cfg.tau is not None
    if rc.symmetry is not None:
        return degeneracy_probe(rc.h, rc.psi0, rc.symmetry, cfg, deterministic=deterministic)
    if cfg.mode == "grid2d":
        return scan_2d(rc.h, rc.psi0, cfg, o=rc.observable)
    if deterministic:
        return assemble_scan_deterministic(rc.h, rc.psi0, cfg, o=rc.observable, h2=rc.h2)
    return run_scan(rc.h, rc.psi0, cfg, o=rc.observable, h2=rc.h2)


def _fmt(x: float) -> str:
    return "%.17e" % x


def _meta_lines(rc: RunConfig, scan_mode: str) -> list[str]:
    return [
        f"# config: {rc.snapshot}",
        f"# seed: {rc.scan_config.seed}",
        f"# mode: {scan_mode}",
        f"# units: {rc.units}",
    ]


def write_spectrum_csv(scan: SpectralScan, rc: RunConfig, path: Path) -> None:
    lines = ["# gapscan spectrum v1"] + _meta_lines(rc, scan.mode)
    if scan.e2_values is None:
        lines.append("E,re_C,im_C,stderr")
        for e, c, s in zip(scan.e_values, scan.c_values, scan.stderr):
            lines.append(",".join((_fmt(e), _fmt(c.real), _fmt(c.imag), _fmt(s))))
    else:
        lines.append("E,E2,re_C,im_C,stderr")
        for i, e1 in enumerate(scan.e_values):
            for j, e2 in enumerate(scan.e2_values):
                c = scan.c_values[i, j]
                s = scan.stderr[i, j]
                lines.append(",".join((_fmt(e1), _fmt(e2), _fmt(c.real), _fmt(c.imag), _fmt(s))))
    _write_text(path, "\n".join(lines) + "\n")


def read_spectrum_csv(path) -> tuple[SpectralScan, dict]:
    """Re-parse an emitted 1-D spectrum; returns the scan and header metadata."""
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read spectrum {path!r}: {exc}") from None
    meta: dict = {}
    rows = []
    header = None
    for line in raw.splitlines():
        if line.startswith("#"):
            text = line[1:].strip()
            for field in ("config", "seed", "mode", "units"):
                if text.startswith(f"{field}:"):
                    meta[field] = text[len(field) + 1 :].strip()
            continue
        if not line.strip():
            continue
        if header is None:
            header = line.strip()
            continue
        rows.append(line.split(","))
    if header == "E,E2,re_C,im_C,stderr":
        raise ConfigError("2-D spectrum: peak detection is defined for 1-D scans")
    if header != "E,re_C,im_C,stderr" or not rows:
        raise ConfigError(f"{path}: not a gapscan spectrum CSV")
    try:
        data = np.array([[float(v) for v in row] for row in rows])
    except ValueError as exc:
        raise ConfigError(f"{path}: bad data row: {exc}") from None
    if data.shape[1] != 4:
        raise ConfigError(f"{path}: expected 4 columns")
    try:
        if "seed" in meta:
            meta["seed"] = int(meta["seed"])
        if "config" in meta:
            meta["config"] = json.loads(meta["config"])
    except (ValueError, json.JSONDecodeError) as exc:
        raise ConfigError(f"{path}: corrupt header metadata: {exc}") from None
    scan = SpectralScan(
        e_values=data[:, 0],
        c_values=data[:, 1] + 1j * data[:, 2],
        stderr=data[:, 3],
        mode=meta.get("mode", "gap"),
        config=None,
    )
    return scan, meta


def _peaks_payload(report, rc: RunConfig, scan_mode: str) -> dict:
    payload = report.to_dict()
    payload["config"] = json.loads(rc.snapshot)
    payload["seed"] = rc.scan_config.seed
    payload["mode"] = scan_mode
    payload["units"] = rc.units
    return payload


def write_peaks_json(scan: SpectralScan, rc: RunConfig, path: Path) -> None:
    report = find_peaks(scan, rc.threshold)
    _write_text(path, json.dumps(_peaks_payload(report, rc, scan.mode), sort_keys=True, indent=1) + "\n")


def write_budget_csv(scan: SpectralScan, rc: RunConfig, path: Path) -> None:
    cfg = rc.scan_config
    a = cfg.cooling.width
    if cfg.shots is not None:
        if rc.observable is not None and rc.observable.kind == "pauli_sum":
            coeffs = [abs(c) for _, c in rc.observable.terms.strings()]
        else:
            # projector kernels are probabilities; a single unit coefficient
            coeffs = [1.0]
        shot_bound = shot_variance_bound(coeffs, cfg.shots)
    else:
        shot_bound = float("nan")
    lines = ["# gapscan budget v1"] + _meta_lines(rc, scan.mode)
    lines.append("a,T,eps_c,min_T,cutoff_bound,tight_bound,shot_variance_bound")
    lines.append(
        ",".join(
            (
                _fmt(a),
                _fmt(cfg.cutoff),
                _fmt(rc.eps_c),
                _fmt(min_sampling_range(a, rc.eps_c)),
                _fmt(cutoff_error_bound(a, cfg.cutoff)),
                _fmt(cutoff_error_bound_tight(a, cfg.cutoff)),
                _fmt(shot_bound),
            )
        )
    )
    _write_text(path, "\n".join(lines) + "\n")


def write_plot_data(scan: SpectralScan, rc: RunConfig, path: Path) -> None:
    lines = ["# gapscan plot data v1"] + _meta_lines(rc, scan.mode)
    if scan.e2_values is None:
        lines.append("# columns: E re_C stderr")
        lines.append(f"# gnuplot: plot '{path.name}' using 1:2 with lines")
        for e, c, s in zip(scan.e_values, scan.c_values, scan.stderr):
            lines.append(" ".join((_fmt(e), _fmt(c.real), _fmt(s))))
    else:
        lines.append("# columns: E E2 re_C")
        lines.append(f"# gnuplot: splot '{path.name}' using 1:2:3 with pm3d")
        for i, e1 in enumerate(scan.e_values):
            for j, e2 in enumerate(scan.e2_values):
                lines.append(" ".join((_fmt(e1), _fmt(e2), _fmt(scan.c_values[i, j].real))))
            lines.append("")
    _write_text(path, "\n".join(lines) + "\n")


def _write_text(path: Path, text: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


_ARTIFACTS = {
    "spectrum_csv": ("spectrum.csv", write_spectrum_csv),
    "peaks_json": ("peaks.json", write_peaks_json),
    "budget_csv": ("budget.csv", write_budget_csv),
    "plot_data": ("plot.dat", write_plot_data),
}


def cmd_scan(args) -> int:
    violations, rc = load_run_config(args.config)
    if violations:
        for v in violations:
            print(v, file=sys.stderr)
        return EXIT_CONFIG
    scan = execute(rc)
    rc.out_dir.mkdir(parents=True, exist_ok=True)
    for kind in rc.emit:
        name, writer = _ARTIFACTS[kind]
        target = rc.out_dir / name
        writer(scan, rc, target)
        print(f"wrote {target}")
    return EXIT_OK


def cmd_validate(args) -> int:
    violations, _ = load_run_config(args.config)
    if violations:
        for v in violations:
            print(v)
        return EXIT_CONFIG
    print("ok")
    return EXIT_OK


def cmd_peaks(args) -> int:
    scan, meta = read_spectrum_csv(args.spectrum)
    report = find_peaks(scan, args.threshold)
    payload = report.to_dict()
    payload.update(meta)
    print(json.dumps(payload, sort_keys=True, indent=1))
    return EXIT_OK


def cmd_budget(args) -> int:
    try:
        payload = {
            "a": args.a,
            "T": args.t,
            "eps_c": args.eps,
            "cutoff_bound": cutoff_error_bound(args.a, args.t),
            "tight_bound": cutoff_error_bound_tight(args.a, args.t),
            "min_T": min_sampling_range(args.a, args.eps),
        }
    except BudgetError as exc:
        raise ConfigError(str(exc)) from None
    print(json.dumps(payload, sort_keys=True, indent=1))
    return EXIT_OK


def cmd_sweep(args) -> int:
    violations, rc = load_run_config(args.config)
    if violations:
        for v in violations:
            print(v, file=sys.stderr)
        return EXIT_CONFIG
    try:
        result = cutoff_sweep(
            rc.h,
            rc.psi0,
            rc.scan_config,
            args.t_list,
            eps_c=rc.eps_c,
            prominence_threshold=rc.threshold,
        )
    except BudgetError as exc:
        raise ConfigError(str(exc)) from None
    rc.out_dir.mkdir(parents=True, exist_ok=True)
    path = rc.out_dir / "sweep.csv"
    lines = ["# gapscan cutoff-sweep v1"] + _meta_lines(rc, rc.scan_config.mode)
    lines.append(f"# target_gap: {_fmt(result.target_gap)}")
    lines.append(f"# min_T: {_fmt(result.t_min)} at eps_c {_fmt(result.eps_c)}")
    lines.append("T,gap_error,paper_bound,tight_bound")
    for row in result.rows:
        lines.append(",".join((_fmt(row.t), _fmt(row.gap_error), _fmt(row.paper_bound), _fmt(row.tight_bound))))
    _write_text(path, "\n".join(lines) + "\n")
    print(f"wrote {path}")
    lost = sum(1 for row in result.rows if not row.found)
    if lost:
        print(f"{lost} cutoff(s) lost the target peak")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gapscan",
        description="spectral scans of many-body models from real-time evolution data",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="run a manifest and write artifacts")
    p.add_argument("config")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("validate", help="report every manifest violation, run nothing")
    p.add_argument("config")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("peaks", help="detect peaks in an emitted spectrum CSV")
    p.add_argument("spectrum")
    p.add_argument("--threshold", type=float, default=DEFAULT_PROMINENCE)
    p.set_defaults(func=cmd_peaks)

    p = sub.add_parser("budget", help="print truncation error bounds")
    p.add_argument("--a", type=float, required=True, dest="a")
    p.add_argument("--T", type=float, required=True, dest="t")
    p.add_argument("--eps", type=float, default=1e-2)
    p.set_defaults(func=cmd_budget)

    p = sub.add_parser("sweep-cutoff", help="rerun a deterministic gap scan over cutoffs")
    p.add_argument("config")
    p.add_argument("--T-list", type=float, nargs="+", required=True, dest="t_list")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (PauliError, StateError, ScanError, PeakError, BudgetError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericError, np.linalg.LinAlgError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
