"""Statevector preparation, time evolution, and measurement sampling.

State specs are strings: a per-qubit pattern over {0,1,+,-} (tensor
product, qubit 0 leftmost), "super(spec1, spec2, ...)" for an
equal-weight superposition normalized after summation, or "file:<path>"
naming a JSON list [[re, im], ...] of 2^n amplitudes.

Exact evolution goes through a cached eigendecomposition (one dense
diagonalization per Hamiltonian, reused for every t). Trotter evolution
is first order with analytic Pauli rotations; see rotations.py for the
two engines.

Randomness is counter-based. Stream (seed, lane, sample_index,
term_index) maps onto a Philox counter, so any shot of any sample can be
regenerated independently of execution order. Lane 0 holds measurement
shots, lane 1 evolution-time draws.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np
from scipy.special import erf, erfinv

from .pauli import DENSE_LIMIT, Hamiltonian, Observable, PauliError
from .rotations import group_terms, trotter_step_numba, trotter_step_numpy

TIME_LANE = 1
SHOT_LANE = 0

# registers at or above this size route Trotter steps to the numba engine
_NUMBA_MIN_QUBITS = 14

_CHAR_AMPS = {
    "0": np.array([1.0, 0.0], dtype=np.complex128),
    "1": np.array([0.0, 1.0], dtype=np.complex128),
    "+": np.array([1.0, 1.0], dtype=np.complex128) / math.sqrt(2.0),
    "-": np.array([1.0, -1.0], dtype=np.complex128) / math.sqrt(2.0),
}


class StateError(ValueError):
    pass


class NumericError(RuntimeError):
    """Numerical invariant broke (norm drift, failed diagonalization)."""


def _load_amplitude_file(path: str, n_qubits: int) -> np.ndarray:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise StateError(f"cannot read state file {path!r}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise StateError(f"invalid JSON in state file {path!r}: {exc}") from None
    dim = 1 << n_qubits
    if not isinstance(data, list) or len(data) != dim:
        raise StateError(
            f"state file {path!r}: expected {dim} [re, im] pairs"
        )
    try:
        arr = np.array([complex(re, im) for re, im in data], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise StateError(f"state file {path!r}: malformed pair: {exc}") from None
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise StateError(f"state file {path!r}: non-finite amplitude")
    norm = np.linalg.norm(arr)
    if norm < 1e-12:
        raise StateError(f"state file {path!r}: zero-norm amplitudes")
    return arr / norm


def _component(spec: str, n_qubits: int) -> np.ndarray:
    if spec.startswith("file:"):
        return _load_amplitude_file(spec[5:], n_qubits)
    if len(spec) != n_qubits:
        raise StateError(
            f"state spec {spec!r} has {len(spec)} characters for {n_qubits} qubits"
        )
    bad = set(spec) - set("01+-")
    if bad:
        raise StateError(f"state spec {spec!r}: invalid characters {sorted(bad)}")
    if set(spec) <= {"0", "1"}:
        v = np.zeros(1 << n_qubits, dtype=np.complex128)
        v[int(spec, 2)] = 1.0
        return v
    return reduce(np.kron, (_CHAR_AMPS[ch] for ch in spec))


def prepare_state(spec: str, n_qubits: int) -> np.ndarray:
    """Parse a state spec into a normalized complex amplitude vector."""
    if n_qubits < 1:
        raise StateError("need at least one qubit")
    spec = spec.strip()
    if spec.startswith("super(") and spec.endswith(")"):
        parts = [p.strip() for p in spec[6:-1].split(",")]
        if not parts or any(not p for p in parts):
            raise StateError(f"empty component in {spec!r}")
        if any(p.startswith("super(") for p in parts):
            raise StateError("nested super() is not supported")
        total = sum(_component(p, n_qubits) for p in parts)
        norm = np.linalg.norm(total)
        if norm < 1e-12:
            raise StateError(f"components of {spec!r} cancel to the zero vector")
        return total / norm
    return _component(spec, n_qubits)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigendecomposition H = V diag(energies) V†, energies ascending.

    basis may be real (symmetric fast path) or complex; columns are
    eigenvectors. Arrays are read-only because instances are cached and
    shared across scans.
    """

    energies: np.ndarray
    basis: np.ndarray

    @property
    def n_qubits(self) -> int:
        return int(self.basis.shape[0]).bit_length() - 1

    def overlaps(self, psi: np.ndarray) -> np.ndarray:
        """Eigenbasis coefficients c = V† psi."""
        return self.basis.conj().T @ psi


@lru_cache(maxsize=8)
def _eigendecompose_cached(h: Hamiltonian, limit: int) -> Spectrum:
    m = h.dense(limit)
    scale = np.abs(m).max() if m.size else 1.0
    if np.abs(m.imag).max(initial=0.0) <= 1e-12 * max(scale, 1.0):
        energies, basis = np.linalg.eigh(m.real)
    else:
        energies, basis = np.linalg.eigh(m)
    if not np.all(np.isfinite(energies)):
        raise NumericError("diagonalization produced non-finite eigenvalues")
    energies.flags.writeable = False
    basis.flags.writeable = False
    return Spectrum(energies=energies, basis=basis)


def eigendecompose(h: Hamiltonian, limit: int = DENSE_LIMIT) -> Spectrum:
    """Dense eigendecomposition, cached on the (frozen) Hamiltonian."""
    return _eigendecompose_cached(h, limit)


def _as_spectrum(h) -> Spectrum:
    return h if isinstance(h, Spectrum) else eigendecompose(h)


def evolve_exact(spec, psi0: np.ndarray, t: float) -> np.ndarray:
    """e^{-iHt} psi0 through the eigenbasis; spec: Spectrum or Hamiltonian."""
    s = _as_spectrum(spec)
    if psi0.shape != (s.basis.shape[0],):
        raise StateError("statevector dimension does not match spectrum")
    c = s.overlaps(psi0)
    return s.basis @ (np.exp(-1j * s.energies * t) * c)


def evolve_trotter(
    h: Hamiltonian, psi0: np.ndarray, t: float, n_steps: int, engine: str = "auto"
) -> np.ndarray:
    """First-order Trotter: (prod_i e^{-i alpha_i P_i t/n})^n, canonical order."""
    if n_steps < 1:
        raise StateError("n_steps must be >= 1")
    dim = 1 << h.n_qubits
    if psi0.shape != (dim,):
        raise StateError("statevector length != 2^n_qubits")
    if engine == "auto":
        engine = "numba" if h.n_qubits >= _NUMBA_MIN_QUBITS else "numpy"
    norm_in = np.linalg.norm(psi0)
    dt = t / n_steps
    if engine == "numpy":
        psi = np.array(psi0, dtype=np.complex128)
        for _ in range(n_steps):
            psi = trotter_step_numpy(psi, h.n_qubits, h.terms, dt)
    elif engine == "numba":
        psi = np.array(psi0, dtype=np.complex128)
        groups = group_terms(h.terms)
        for _ in range(n_steps):
            trotter_step_numba(psi, h.n_qubits, groups, dt)
    else:
        raise StateError(f"unknown trotter engine {engine!r}")
    drift = abs(np.linalg.norm(psi) - norm_in)
    if drift > 1e-8 * max(norm_in, 1.0):
        raise NumericError(f"trotter norm drift {drift:.3e}")
    return psi


def inner(a: np.ndarray, b: np.ndarray) -> complex:
    """<a|b>, conjugating a."""
    if a.shape != b.shape:
        raise StateError("statevector dimensions differ")
    return complex(np.vdot(a, b))


def expectation(o, psi: np.ndarray) -> float:
    """Real <psi|O|psi> for an Observable or a Hamiltonian."""
    if isinstance(o, Hamiltonian):
        return float(np.vdot(psi, o.apply(psi)).real)
    if not isinstance(o, Observable):
        raise StateError(f"cannot take expectation of {type(o).__name__}")
    if o.kind == "identity":
        return float(np.vdot(psi, psi).real)
    if o.kind == "projector":
        if o.state is None:
            raise StateError("projector observable carries no reference state")
        if o.state.shape != psi.shape:
            raise StateError("projector reference dimension mismatch")
        return float(abs(np.vdot(o.state, psi)) ** 2)
    return float(np.vdot(psi, o.terms.apply(psi)).real)


@dataclass(frozen=True)
class SampleStream:
    """Counter-based RNG handle for one (seed, sample) slot.

    term(j) yields an independent generator at counter
    (lane, 0, sample_index, j); reproducible regardless of evaluation
    order across samples, terms, or threads.
    """

    seed: int
    sample_index: int = 0
    lane: int = SHOT_LANE

    def term(self, term_index: int = 0) -> np.random.Generator:
        bits = np.random.Philox(
            key=self.seed,
            counter=[self.lane, 0, self.sample_index, term_index],
        )
        return np.random.Generator(bits)


def sample_expectation(o: Observable, psi: np.ndarray, shots: int, stream: SampleStream) -> float:
    """Shot-noise estimate of <O>; unbiased, one Bernoulli batch per term.

    Pauli terms use outcome mean (1+<P_i>)/2 mapped back to the +-1
    scale; a projector is itself a probability and is sampled directly.
    """
    if shots < 1:
        raise StateError("shots must be >= 1")
    if not isinstance(o, Observable):
        raise StateError("sampling needs an Observable")
    if o.kind == "identity":
        raise StateError("identity observable is deterministic; not sampled")
    if o.kind == "projector":
        if o.state is None:
            raise StateError("projector observable carries no reference state")
        p = min(max(float(abs(np.vdot(o.state, psi)) ** 2), 0.0), 1.0)
        hits = stream.term(0).binomial(shots, p)
        return hits / shots
    total = 0.0
    for j, (pauli, coeff) in enumerate(o.terms.strings()):
        ev = float(np.vdot(psi, pauli.apply(psi)).real)
        ev = min(max(ev, -1.0), 1.0)
        hits = stream.term(j).binomial(shots, 0.5 * (1.0 + ev))
        total += coeff.real * (2.0 * hits / shots - 1.0)
    return total


def truncated_mass(kind: str, width: float, cutoff: float) -> float:
    """Integral of the bare cooling weight over [-T, T].

    gaussian: integral of e^{-a^2 t^2} = (sqrt(pi)/a) erf(aT)
    lorentzian: integral of (b/pi)/(b^2+t^2) = (2/pi) atan(T/b)
    """
    if width <= 0 or cutoff <= 0 or not math.isfinite(cutoff):
        raise StateError("width and cutoff must be positive and finite")
    if kind == "gaussian":
        return (math.sqrt(math.pi) / width) * float(erf(width * cutoff))
    if kind == "lorentzian":
        return (2.0 / math.pi) * math.atan(cutoff / width)
    raise StateError(f"unknown cooling kind {kind!r}")


def inverse_time_cdf(kind: str, width: float, cutoff: float, u: float) -> float:
    """Map a uniform u in [0, 1) to a draw from the truncated cooling weight."""
    truncated_mass(kind, width, cutoff)  # validates kind/width/cutoff
    if kind == "gaussian":
        edge = float(erf(width * cutoff))
        return float(erfinv((2.0 * u - 1.0) * edge)) / width
    half_angle = math.atan(cutoff / width)
    return width * math.tan((2.0 * u - 1.0) * half_angle)


def sample_times(
    kind: str, width: float, cutoff: float, n_pairs: int, seed: int
) -> np.ndarray:
    """Antithetic evolution-time draws [t_1, -t_1, t_2, -t_2, ...].

    t_s is inverse-CDF sampled from the cooling weight truncated to
    [-T, T] on stream (seed, lane 1, s, 0); the mirrored partner makes
    the spectral estimator exactly real and halves kernel work.
    """
    if n_pairs < 1:
        raise StateError("n_pairs must be >= 1")
    truncated_mass(kind, width, cutoff)  # validates kind/width/cutoff
    out = np.empty(2 * n_pairs, dtype=np.float64)
    for s in range(n_pairs):
        u = SampleStream(seed, s, lane=TIME_LANE).term(0).random()
        t = inverse_time_cdf(kind, width, cutoff, u)
        out[2 * s] = t
        out[2 * s + 1] = -t
    return out
