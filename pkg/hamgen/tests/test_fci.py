"""Exact-diagonalization oracles. The H2 case is solved by hand in this
file (a symmetry-reduced 2x2 problem) and must agree with the package
to near machine precision; the chain energies are frozen reference
values the fixtures are later required to reproduce."""

import numpy as np
import pytest

from hamgen.basis import build_basis
from hamgen.fci import (
    cisd_ground_energy,
    build_hamiltonian,
    fci_ground_energy,
    fci_ground_energy_sparse,
    mo_integrals,
    occupation_strings,
)
from hamgen.scf import run_uhf


def _h2_result(r_ang=0.74):
    aos, nuclei = build_basis(
        [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, r_ang))], "sto-3g"
    )
    return run_uhf(aos, nuclei, 1, 1)


def test_h2_two_by_two_ci_oracle():
    # In a minimal basis the sigma_g ground state only mixes with the
    # doubly excited determinant (the single has u symmetry), so the
    # exact ground energy is the lowest eigenvalue of a 2x2 matrix
    # assembled straight from the MO integrals.
    res = _h2_result()
    (h_a, _), (g_aa, _, g_ab) = mo_integrals(res)
    h11 = 2 * h_a[0, 0] + g_ab[0, 0, 0, 0]
    h22 = 2 * h_a[1, 1] + g_ab[1, 1, 1, 1]
    h12 = g_ab[0, 1, 0, 1]
    two = np.array([[h11, h12], [h12, h22]])
    want = np.linalg.eigvalsh(two)[0] + res.e_nuclear
    got = fci_ground_energy(res)
    assert got == pytest.approx(want, abs=1e-10)


def test_h2_equilibrium_energy_anchor():
    res = _h2_result(0.74)
    assert fci_ground_energy(res) == pytest.approx(-1.137284, abs=1e-3)


def test_h4_chain_energy_anchor():
    spacing = 0.89
    geometry = [("H", (0.0, 0.0, k * spacing)) for k in range(4)]
    aos, nuclei = build_basis(geometry, "sto-3g")
    res = run_uhf(aos, nuclei, 2, 2)
    assert fci_ground_energy(res) == pytest.approx(-2.180501, abs=1e-3)


def test_determinant_space_dimensions():
    assert len(occupation_strings(2, 1)) == 2
    assert len(occupation_strings(4, 2)) == 6
    assert len(occupation_strings(6, 2)) == 15

    res = _h2_result()
    h, g = mo_integrals(res)
    ham, dets = build_hamiltonian(h, g, 2, 1, 1)
    assert ham.shape == (4, 4)
    assert len(dets) == 4
    assert np.allclose(ham, ham.T, atol=1e-12)


def test_fci_below_scf():
    res = _h2_result(1.1)
    assert fci_ground_energy(res) < res.e_total - 1e-4


def test_sparse_path_matches_dense():
    geometry = [("H", (0.0, 0.0, 0.89 * k)) for k in range(4)]
    aos, nuclei = build_basis(geometry, "sto-3g")
    res = run_uhf(aos, nuclei, 2, 2)
    dense = fci_ground_energy(res)
    sparse = fci_ground_energy_sparse(res)
    assert sparse == pytest.approx(dense, abs=1e-9)

    aos, nuclei = build_basis(
        [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 1.2651))], "sto-3g"
    )
    res = run_uhf(aos, nuclei, 2, 2)
    dense = fci_ground_energy(res)
    assert fci_ground_energy_sparse(res) == pytest.approx(dense, abs=1e-9)

    # freezing the Li 1s must stay variational and close to the full answer
    frozen = fci_ground_energy_sparse(res, n_frozen=1)
    assert frozen >= dense - 1e-10
    assert frozen == pytest.approx(dense, abs=5e-3)


def test_frozen_everything_reduces_to_scf():
    # with both H2 electrons frozen no active space remains, so the
    # "correlated" energy must equal the mean-field total exactly
    res = _h2_result()
    assert fci_ground_energy_sparse(res, n_frozen=1) == pytest.approx(
        res.e_total, abs=1e-10
    )


def test_cisd_exact_for_two_electrons_variational_above_fci():
    res = _h2_result()
    assert cisd_ground_energy(res) == pytest.approx(
        fci_ground_energy(res), abs=1e-10
    )

    geometry = [("H", (0.0, 0.0, 0.89 * k)) for k in range(4)]
    aos, nuclei = build_basis(geometry, "sto-3g")
    res4 = run_uhf(aos, nuclei, 2, 2)
    e_fci = fci_ground_energy(res4)
    e_cisd = cisd_ground_energy(res4)
    assert e_fci - 1e-10 <= e_cisd < res4.e_total
    assert e_cisd == pytest.approx(e_fci, abs=5e-3)
