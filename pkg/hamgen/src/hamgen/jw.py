"""Jordan-Wigner mapping from the spin-orbital Hamiltonian to Pauli
strings, plus a dense matrix builder used for cross-checks and for
exponentiating excitation generators.

Spin-orbital order is blocked: qubits 0..n-1 carry the alpha spatial
orbitals, qubits n..2n-1 the beta ones. Qubit k is the k-th character
of a label string; in basis-state indices qubit 0 is the most
significant bit, matching the scanner's file formats.

Pauli terms are held as (x_mask, z_mask) pairs meaning the product
X^x Z^z in that order; Y = i X Z absorbs a phase of -i per Y when
rendered as a label.
"""

from __future__ import annotations

import numpy as np

from .scf import SCFResult


def spin_orbital_integrals(res: SCFResult):
    """h_pq and physicists' <pq|rs> over 2n blocked spin orbitals."""
    n = res.n_spatial
    m = 2 * n
    ca, cb = res.mo_coeff_a, res.mo_coeff_b

    h_a = ca.T @ res.h_core @ ca
    h_b = cb.T @ res.h_core @ cb
    h_so = np.zeros((m, m))
    h_so[:n, :n] = h_a
    h_so[n:, n:] = h_b

    def chem(c1, c2):
        return np.einsum(
            "pqrs,pi,qj,rk,sl->ijkl", res.eri, c1, c1, c2, c2, optimize=True
        )

    g_aa = chem(ca, ca)
    g_bb = chem(cb, cb)
    g_ab = chem(ca, cb)

    g_chem = np.zeros((m, m, m, m))
    g_chem[:n, :n, :n, :n] = g_aa
    g_chem[n:, n:, n:, n:] = g_bb
    g_chem[:n, :n, n:, n:] = g_ab
    g_chem[n:, n:, :n, :n] = g_ab.transpose(2, 3, 0, 1)
    # physicists' <pq|rs> = (pr|qs)
    g_phys = g_chem.transpose(0, 2, 1, 3).copy()
    return h_so, g_phys


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _ladder(p: int, dagger: bool):
    """JW image of a_p (or a_p^dagger): two (coeff, x, z) terms."""
    chain = (1 << p) - 1
    x = 1 << p
    sign = 0.5 if dagger else -0.5
    return [(0.5, x, chain), (sign, x, chain | x)]


def _mul(t1, t2):
    c1, x1, z1 = t1
    c2, x2, z2 = t2
    c = c1 * c2
    if _popcount(z1 & x2) % 2:
        c = -c
    return (c, x1 ^ x2, z1 ^ z2)


def _accumulate(acc: dict, coeff, ops) -> None:
    """acc += coeff * product(ops), ops a list of JW ladder term lists."""
    frontier = [(coeff, 0, 0)]
    for op in ops:
        nxt = []
        for t in frontier:
            for u in op:
                nxt.append(_mul(t, u))
        frontier = nxt
    for c, x, z in frontier:
        key = (x, z)
        acc[key] = acc.get(key, 0.0) + c


def map_hamiltonian(res: SCFResult, *, tol: float = 1e-12) -> dict:
    """Qubit Hamiltonian {(x_mask, z_mask): coeff}. Nuclear repulsion is
    folded into the identity term so the ground eigenvalue is the total
    energy."""
    h_so, g_phys = spin_orbital_integrals(res)
    acc: dict = {(0, 0): complex(res.e_nuclear)}

    for p, q in zip(*np.nonzero(np.abs(h_so) > tol)):
        _accumulate(
            acc, h_so[p, q], [_ladder(int(p), True), _ladder(int(q), False)]
        )

    idx = np.argwhere(np.abs(g_phys) > tol)
    for p, q, r, s in idx:
        if p == q or r == s:
            continue  # a_p+ a_q+ / a_s a_r vanish on equal indices
        _accumulate(
            acc,
            0.5 * g_phys[p, q, r, s],
            [
                _ladder(int(p), True),
                _ladder(int(q), True),
                _ladder(int(s), False),
                _ladder(int(r), False),
            ],
        )

    out = {}
    for key, c in acc.items():
        if abs(c) <= 1e-10:
            continue
        if abs(c.imag) > 1e-9:
            raise AssertionError(
                f"non-Hermitian accumulation at {key}: {c!r}"
            )
        out[key] = c.real
    return out


def rotation_generator(i: int, j: int) -> dict:
    """JW image of a_i a_j^dagger - a_j a_i^dagger (anti-Hermitian)."""
    acc: dict = {}
    _accumulate(acc, 1.0, [_ladder(i, False), _ladder(j, True)])
    _accumulate(acc, -1.0, [_ladder(j, False), _ladder(i, True)])
    return {k: c for k, c in acc.items() if abs(c) > 1e-12}


def masks_to_label(x: int, z: int, n_qubits: int) -> tuple[str, complex]:
    """Label string (qubit 0 first) and the phase factor that turns
    X^x Z^z into the labelled Pauli product."""
    chars = []
    phase = 1.0 + 0.0j
    for k in range(n_qubits):
        xb = (x >> k) & 1
        zb = (z >> k) & 1
        if xb and zb:
            chars.append("Y")
            phase *= -1.0j
        elif xb:
            chars.append("X")
        elif zb:
            chars.append("Z")
        else:
            chars.append("I")
    return "".join(chars), phase


def operator_labels(op: dict, n_qubits: int) -> list[tuple[str, complex]]:
    out = []
    for (x, z), c in sorted(op.items()):
        label, phase = masks_to_label(x, z, n_qubits)
        out.append((label, c * phase))
    return out


_PAREVEN = None


def _parity(arr: np.ndarray) -> np.ndarray:
    """Bit parity of each element of a uint64 array."""
    v = arr.copy()
    for shift in (32, 16, 8, 4, 2, 1):
        v ^= v >> shift
    return (v & 1).astype(np.int64)


def labels_to_dense(terms, n_qubits: int) -> np.ndarray:
    """Dense matrix from (label, coeff) pairs; qubit 0 is the most
    significant index bit. Hard cap keeps this off the big systems."""
    if n_qubits > 14:
        raise ValueError(f"dense build refused for {n_qubits} qubits")
    dim = 1 << n_qubits
    cols = np.arange(dim, dtype=np.uint64)
    mat = np.zeros((dim, dim), dtype=complex)
    for label, coeff in terms:
        x_idx = 0
        z_idx = 0
        n_y = 0
        for k, ch in enumerate(label):
            bit = 1 << (n_qubits - 1 - k)
            if ch == "X":
                x_idx |= bit
            elif ch == "Z":
                z_idx |= bit
            elif ch == "Y":
                x_idx |= bit
                z_idx |= bit
                n_y += 1
            elif ch != "I":
                raise ValueError(f"bad label {label!r}")
        signs = 1.0 - 2.0 * _parity(cols & np.uint64(z_idx))
        vals = coeff * (1.0j**n_y) * signs
        rows = cols ^ np.uint64(x_idx)
        mat[rows, cols] += vals
    return mat


def operator_to_dense(op: dict, n_qubits: int) -> np.ndarray:
    return labels_to_dense(operator_labels(op, n_qubits), n_qubits)


def hf_bitstring(n_spatial: int, n_alpha: int, n_beta: int) -> str:
    alpha = "1" * n_alpha + "0" * (n_spatial - n_alpha)
    beta = "1" * n_beta + "0" * (n_spatial - n_beta)
    return alpha + beta
