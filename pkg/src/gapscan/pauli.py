"""Pauli-string algebra for qubit Hamiltonians and observables.

A Pauli string on n qubits is stored as two bitmasks plus an integer
power of i:

    operator = i**phase * prod_q letter(x_q, z_q)

with letter(0,0) = I, letter(1,0) = X, letter(1,1) = Y, letter(0,1) = Z.
Qubit q is the q-th character of a label like "XXIZ" (leftmost = qubit 0)
and maps to bit (n-1-q) of a computational-basis index, so a label read
left to right equals kron(letter_0, letter_1, ..., letter_{n-1}).

Hamiltonians are sums of strings with complex coefficients. On
construction, duplicate strings are merged, exactly-zero coefficients
dropped, and terms sorted by (x-mask, z-mask); because distinct canonical
strings are linearly independent and each string is Hermitian, the sum is
Hermitian iff every merged coefficient is real, which is enforced within
1e-12 * sum_i |alpha_i|.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

DENSE_LIMIT = 12  # qubits; 2^12 x 2^12 complex is the largest dense matrix built

_LETTER_TO_XZ = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_XZ_TO_LETTER = {v: k for k, v in _LETTER_TO_XZ.items()}

# letter(x1,z1) * letter(x2,z2) = i**_PHASE[x1,z1,x2,z2] * letter(x1^x2, z1^z2)
_PHASE = np.zeros((2, 2, 2, 2), dtype=np.int64)
_PHASE[1, 0, 1, 1] = 1   # X*Y = iZ
_PHASE[1, 0, 0, 1] = 3   # X*Z = -iY
_PHASE[1, 1, 1, 0] = 3   # Y*X = -iZ
_PHASE[1, 1, 0, 1] = 1   # Y*Z = iX
_PHASE[0, 1, 1, 0] = 1   # Z*X = iY
_PHASE[0, 1, 1, 1] = 3   # Z*Y = -iX

_I_POW = (1.0 + 0j, 1j, -1.0 + 0j, -1j)


class PauliError(ValueError):
    pass


def _parity_vec(idx: np.ndarray, mask: int) -> np.ndarray:
    """Parity of popcount(idx & mask), vectorized, for uint64 index arrays."""
    return (np.bitwise_count(idx & np.uint64(mask)) & np.uint64(1)).astype(np.uint64)


@dataclass(frozen=True)
class PauliString:
    """Single Pauli string i**phase * P(x, z) on n qubits."""

    n: int
    x: int
    z: int
    phase: int = 0  # power of i, mod 4

    def __post_init__(self):
        if self.n < 1:
            raise PauliError("need at least one qubit")
        top = 1 << self.n
        if not (0 <= self.x < top and 0 <= self.z < top):
            raise PauliError("mask outside qubit register")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        x = z = 0
        n = len(label)
        for q, ch in enumerate(label):
            try:
                xb, zb = _LETTER_TO_XZ[ch]
            except KeyError:
                raise PauliError(f"invalid Pauli letter {ch!r} in {label!r}") from None
            bit = 1 << (n - 1 - q)
            x |= xb * bit
            z |= zb * bit
        return cls(n, x, z)

    @property
    def label(self) -> str:
        out = []
        for q in range(self.n):
            bit = 1 << (self.n - 1 - q)
            out.append(_XZ_TO_LETTER[(int(bool(self.x & bit)), int(bool(self.z & bit)))])
        return "".join(out)

    @property
    def weight(self) -> int:
        """Number of non-identity letters."""
        return int(self.x | self.z).bit_count()

    def coefficient(self) -> complex:
        """Scalar i**phase carried by the string."""
        return _I_POW[self.phase]

    def apply(self, psi: np.ndarray) -> np.ndarray:
        """Action on a statevector: (P psi)[b] = phi(b^x) psi[b^x].

        phi(b) = i**(phase + #Y) * (-1)**popcount(z & b). Chunked so the
        index scratch stays bounded for large registers.
        """
        dim = 1 << self.n
        if psi.shape != (dim,):
            raise PauliError("statevector length != 2^n")
        out = np.empty(dim, dtype=np.complex128)
        scale = _I_POW[(self.phase + int(self.x & self.z).bit_count()) % 4]
        chunk = 1 << 20
        for lo in range(0, dim, chunk):
            hi = min(lo + chunk, dim)
            src = np.arange(lo, hi, dtype=np.uint64) ^ np.uint64(self.x)
            sign = 1.0 - 2.0 * _parity_vec(src, self.z).astype(np.float64)
            out[lo:hi] = scale * sign * psi[src]
        return out

    def dense(self, limit: int = DENSE_LIMIT) -> np.ndarray:
        if self.n > limit:
            raise PauliError(f"dense matrix refused above {limit} qubits")
        dim = 1 << self.n
        idx = np.arange(dim, dtype=np.uint64)
        scale = _I_POW[(self.phase + int(self.x & self.z).bit_count()) % 4]
        sign = 1.0 - 2.0 * _parity_vec(idx, self.z).astype(np.float64)
        m = np.zeros((dim, dim), dtype=np.complex128)
        m[idx ^ np.uint64(self.x), idx] = scale * sign
        return m


def product(a: PauliString, b: PauliString) -> PauliString:
    """Operator product a*b; the phase lands in the result's i-power."""
    if a.n != b.n:
        raise PauliError("qubit counts differ")
    ph = a.phase + b.phase
    both = a.x | a.z | b.x | b.z
    q = both
    while q:
        bit = q & -q
        ph += _PHASE[
            int(bool(a.x & bit)), int(bool(a.z & bit)),
            int(bool(b.x & bit)), int(bool(b.z & bit)),
        ]
        q ^= bit
    return PauliString(a.n, a.x ^ b.x, a.z ^ b.z, ph % 4)


def _as_term_map(obj) -> tuple[int, dict[tuple[int, int], complex]]:
    """(n, {(x,z): coeff}) view of a Hamiltonian or a bare PauliString."""
    if isinstance(obj, PauliString):
        return obj.n, {(obj.x, obj.z): obj.coefficient()}
    return obj.n_qubits, {(x, z): c for x, z, c in obj.terms}


def commutator_norm(a, h) -> float:
    """Coefficient 1-norm of [a, h]; upper-bounds its max matrix norm.

    Accepts PauliString or Hamiltonian on either side. The commutator is
    expanded symbolically in the canonical string basis.
    """
    na, ta = _as_term_map(a)
    nb, tb = _as_term_map(h)
    if na != nb:
        raise PauliError("qubit counts differ")
    acc: dict[tuple[int, int], complex] = {}
    for (xa, za), ca in ta.items():
        pa = PauliString(na, xa, za)
        for (xb, zb), cb in tb.items():
            pb = PauliString(na, xb, zb)
            ab = product(pa, pb)
            ba = product(pb, pa)
            # strings either commute or anticommute; [A,B] = (i^p - i^q) P
            coeff = ca * cb * (ab.coefficient() - ba.coefficient())
            if coeff != 0:
                key = (ab.x, ab.z)
                acc[key] = acc.get(key, 0j) + coeff
    return float(sum(abs(c) for c in acc.values()))


def commutes(a, h, tol: float = 1e-12) -> bool:
    """True iff the 1-norm of [a, h] is <= tol scaled by the operand norms."""
    _, ta = _as_term_map(a)
    _, tb = _as_term_map(h)
    scale = max(1.0, sum(abs(c) for c in ta.values()) * sum(abs(c) for c in tb.values()))
    return commutator_norm(a, h) <= tol * scale


@dataclass(frozen=True)
class Hamiltonian:
    """Hermitian sum of Pauli strings, terms canonically ordered.

    terms: tuple of (x_mask, z_mask, coeff); coeffs are real up to the
    Hermiticity tolerance but kept complex for round trips.
    """

    n_qubits: int
    terms: tuple = ()

    @classmethod
    def from_terms(cls, n_qubits: int, terms) -> "Hamiltonian":
        """Build from (label-or-PauliString, coeff) pairs; merges, sorts, checks."""
        acc: dict[tuple[int, int], complex] = {}
        for op, coeff in terms:
            coeff = complex(coeff)
            if math.isnan(coeff.real) or math.isnan(coeff.imag):
                raise PauliError("NaN coefficient")
            if isinstance(op, str):
                op = PauliString.from_label(op)
            if op.n != n_qubits:
                raise PauliError(f"term on {op.n} qubits in {n_qubits}-qubit operator")
            coeff *= op.coefficient()
            key = (op.x, op.z)
            acc[key] = acc.get(key, 0j) + coeff
        merged = tuple(
            (x, z, c) for (x, z), c in sorted(acc.items()) if c != 0
        )
        norm1 = sum(abs(c) for _, _, c in merged)
        worst = max((abs(c.imag) for _, _, c in merged), default=0.0)
        if worst > 1e-12 * max(norm1, 1.0):
            raise PauliError(
                f"non-Hermitian sum: imaginary coefficient {worst:.3e} "
                f"exceeds 1e-12 * {norm1:.3e}"
            )
        return cls(n_qubits, merged)

    @property
    def norm1(self) -> float:
        """Coefficient 1-norm sum_i |alpha_i|; upper-bounds the spectral range."""
        return float(sum(abs(c) for _, _, c in self.terms))

    def strings(self):
        for x, z, c in self.terms:
            yield PauliString(self.n_qubits, x, z), c

    def labeled_terms(self) -> list[tuple[str, complex]]:
        return [(p.label, c) for p, c in self.strings()]

    def dense(self, limit: int = DENSE_LIMIT) -> np.ndarray:
        if self.n_qubits > limit:
            raise PauliError(
                f"dense matrix refused: {self.n_qubits} qubits > limit {limit}"
            )
        dim = 1 << self.n_qubits
        idx = np.arange(dim, dtype=np.uint64)
        m = np.zeros((dim, dim), dtype=np.complex128)
        for x, z, c in self.terms:
            scale = c * _I_POW[int(x & z).bit_count() % 4]
            sign = 1.0 - 2.0 * _parity_vec(idx, z).astype(np.float64)
            m[idx ^ np.uint64(x), idx] += scale * sign
        return m

    def apply(self, psi: np.ndarray) -> np.ndarray:
        out = np.zeros_like(psi, dtype=np.complex128)
        for p, c in self.strings():
            out += c * p.apply(psi)
        return out

    def shifted(self, c: float) -> "Hamiltonian":
        """H + c*I."""
        return Hamiltonian.from_terms(
            self.n_qubits, list(self.labeled_terms()) + [("I" * self.n_qubits, c)]
        )

    def to_dict(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "terms": [
                {"coeff": [c.real, c.imag], "pauli": p.label}
                for p, c in self.strings()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Hamiltonian":
        try:
            n = int(data["n_qubits"])
            raw = data["terms"]
        except (KeyError, TypeError, ValueError) as exc:
            raise PauliError(f"malformed Hamiltonian document: {exc}") from None
        terms = []
        for entry in raw:
            try:
                re, im = entry["coeff"]
                label = entry["pauli"]
            except (KeyError, TypeError, ValueError) as exc:
                raise PauliError(f"malformed term {entry!r}: {exc}") from None
            if len(label) != n:
                raise PauliError(f"term {label!r} length != n_qubits {n}")
            terms.append((label, complex(float(re), float(im))))
        return cls.from_terms(n, terms)


def save_hamiltonian(h: Hamiltonian, path) -> None:
    with open(path, "w") as fh:
        json.dump(h.to_dict(), fh, indent=1)
        fh.write("\n")


def load_hamiltonian(path) -> Hamiltonian:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise PauliError(f"invalid JSON in {path}: {exc}") from None
    return Hamiltonian.from_dict(data)


def heisenberg_chain(
    n_sites: int, J: float = 1.0, h: float = 1.0, periodic: bool = False
) -> Hamiltonian:
    """-J sum_i (X_i X_{i+1} + Y_i Y_{i+1} + Z_i Z_{i+1}) - h sum_i Z_i."""
    if n_sites < 2:
        raise PauliError("chain needs at least 2 sites")
    bonds = [(i, i + 1) for i in range(n_sites - 1)]
    if periodic:
        bonds.append((n_sites - 1, 0))
    terms = []
    for i, j in bonds:
        for p in "XYZ":
            label = "".join(p if q in (i, j) else "I" for q in range(n_sites))
            terms.append((label, -J))
    for i in range(n_sites):
        label = "".join("Z" if q == i else "I" for q in range(n_sites))
        terms.append((label, -h))
    return Hamiltonian.from_terms(n_sites, terms)


@dataclass(frozen=True, eq=False)
class Observable:
    """Measured operator O in the correlation kernel.

    kind "identity": O = 1. kind "projector": O = |ref><ref| with ref the
    scan's initial state unless an explicit state is attached. kind
    "pauli_sum": O = sum_i alpha_i P_i with real alpha (checked).
    """

    kind: str
    terms: Hamiltonian | None = None
    state: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in ("identity", "projector", "pauli_sum"):
            raise PauliError(f"unknown observable kind {self.kind!r}")
        if self.kind == "pauli_sum":
            if self.terms is None:
                raise PauliError("pauli_sum observable needs terms")
            # Hamiltonian construction already enforced Hermiticity
        if self.state is not None:
            norm = np.linalg.norm(self.state)
            if abs(norm - 1.0) > 1e-10:
                raise PauliError("observable reference state not normalized")
