"""Unrestricted Hartree-Fock with Pulay DIIS. Closed shells relax to
the restricted solution; open shells take separate alpha/beta Fock
operators. Integrals are computed once here and carried in the result
so the correlation step reuses them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .integrals import (
    eri_tensor,
    kinetic_matrix,
    nuclear_matrix,
    nuclear_repulsion,
    overlap_matrix,
)


class SCFError(RuntimeError):
    pass


@dataclass
class SCFResult:
    e_total: float
    e_nuclear: float
    mo_coeff_a: np.ndarray
    mo_coeff_b: np.ndarray
    mo_energy_a: np.ndarray
    mo_energy_b: np.ndarray
    n_alpha: int
    n_beta: int
    h_core: np.ndarray
    overlap: np.ndarray
    eri: np.ndarray
    n_iter: int

    @property
    def n_spatial(self) -> int:
        return self.h_core.shape[0]


def _orthogonalizer(s: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(s)
    if vals.min() < 1e-8:
        raise SCFError(f"near-singular overlap, min eigenvalue {vals.min():.3e}")
    return vecs @ np.diag(vals**-0.5) @ vecs.T


def _fock(h, eri, d_total, d_spin):
    j = np.einsum("pqrs,rs->pq", eri, d_total)
    k = np.einsum("prqs,rs->pq", eri, d_spin)
    return h + j - k


def _diis_extrapolate(focks, errs):
    m = len(focks)
    b = -np.ones((m + 1, m + 1))
    b[m, m] = 0.0
    for i in range(m):
        for j in range(m):
            b[i, j] = np.vdot(errs[i], errs[j])
    rhs = np.zeros(m + 1)
    rhs[m] = -1.0
    try:
        coeff = np.linalg.solve(b, rhs)[:m]
    except np.linalg.LinAlgError:
        return focks[-1]
    out = np.zeros_like(focks[-1])
    for c, f in zip(coeff, focks):
        out += c * f
    return out


def run_uhf(
    aos,
    nuclei,
    n_alpha: int,
    n_beta: int,
    *,
    max_iter: int = 300,
    conv_tol: float = 1e-10,
    diis_size: int = 8,
) -> SCFResult:
    s = overlap_matrix(aos)
    h = kinetic_matrix(aos) + nuclear_matrix(aos, nuclei)
    eri = eri_tensor(aos)
    e_nuc = nuclear_repulsion(nuclei)
    x = _orthogonalizer(s)

    def solve(f):
        e, c_prime = np.linalg.eigh(x.T @ f @ x)
        return e, x @ c_prime

    # core guess
    eps_a, c_a = solve(h)
    eps_b, c_b = eps_a.copy(), c_a.copy()

    history: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []
    e_old = 0.0
    for it in range(1, max_iter + 1):
        d_a = c_a[:, :n_alpha] @ c_a[:, :n_alpha].T
        d_b = c_b[:, :n_beta] @ c_b[:, :n_beta].T
        d_t = d_a + d_b
        f_a = _fock(h, eri, d_t, d_a)
        f_b = _fock(h, eri, d_t, d_b)

        e_elec = 0.5 * (
            np.vdot(d_t, h) + np.vdot(d_a, f_a) + np.vdot(d_b, f_b)
        )
        err_a = x.T @ (f_a @ d_a @ s - s @ d_a @ f_a) @ x
        err_b = x.T @ (f_b @ d_b @ s - s @ d_b @ f_b) @ x
        err = np.concatenate([err_a.ravel(), err_b.ravel()])

        if max(abs(err).max(), abs(e_elec - e_old)) < conv_tol and it > 2:
            return SCFResult(
                e_total=e_elec + e_nuc,
                e_nuclear=e_nuc,
                mo_coeff_a=c_a,
                mo_coeff_b=c_b,
                mo_energy_a=eps_a,
                mo_energy_b=eps_b,
                n_alpha=n_alpha,
                n_beta=n_beta,
                h_core=h,
                overlap=s,
                eri=eri,
                n_iter=it,
            )
        e_old = e_elec

        history.append((f_a, f_b, err))
        if len(history) > diis_size:
            history.pop(0)
        if len(history) >= 2:
            errs = [e for _, _, e in history]
            f_a = _diis_extrapolate([fa for fa, _, _ in history], errs)
            f_b = _diis_extrapolate([fb for _, fb, _ in history], errs)
        eps_a, c_a = solve(f_a)
        eps_b, c_b = solve(f_b)

    raise SCFError(f"UHF did not converge in {max_iter} iterations")


def spin_squared(result: SCFResult) -> float:
    """<S^2> of the UHF determinant; exact-spin value plus contamination."""
    c_occ_a = result.mo_coeff_a[:, : result.n_alpha]
    c_occ_b = result.mo_coeff_b[:, : result.n_beta]
    ov = c_occ_a.T @ result.overlap @ c_occ_b
    sz = 0.5 * (result.n_alpha - result.n_beta)
    return sz * (sz + 1.0) + result.n_beta - float(np.sum(ov**2))
