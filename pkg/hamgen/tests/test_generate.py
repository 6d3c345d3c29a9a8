"""Emission pipeline checks: MoleculeSpec invariants, file schemas,
round-trip ground energies through this package's own dense builder,
and the CLI. The published reference values appear here as frozen
numbers."""

import json

import numpy as np
import pytest

from hamgen.generate import (
    generate,
    hamiltonian_payload,
    main,
    prepare_excited_initial,
    write_manifest,
)
from hamgen.jw import labels_to_dense
from hamgen.molecules import (
    CATALOG,
    ExcitationSpec,
    MoleculeError,
    MoleculeSpec,
    get_molecule,
)


def test_molecule_spec_invariants():
    with pytest.raises(MoleculeError):
        MoleculeSpec(name="x", geometry=(), basis="sto-3g")
    with pytest.raises(MoleculeError):
        MoleculeSpec(
            name="x", geometry=(("H", (0, 0, 0)),), basis="cc-pvtz"
        )
    with pytest.raises(MoleculeError):
        # one electron cannot form a triplet
        MoleculeSpec(
            name="x",
            geometry=(("H", (0, 0, 0)),),
            basis="sto-3g",
            multiplicity=3,
        )

    nh = get_molecule("NH")
    assert nh.n_electrons == 8
    assert (nh.n_alpha, nh.n_beta) == (5, 3)
    h2 = get_molecule("h2")
    assert (h2.n_alpha, h2.n_beta) == (1, 1)

    with pytest.raises(MoleculeError):
        get_molecule("h3")


def test_excitation_spec_validation():
    with pytest.raises(MoleculeError):
        ExcitationSpec("bad", p=3, q=3).validate(8)
    with pytest.raises(MoleculeError):
        ExcitationSpec("bad", p=8, q=4).validate(8)
    ExcitationSpec("ok", p=7, q=4).validate(8)

    # catalog entries must be valid for their own molecule
    h4 = get_molecule("h4")
    for exc in h4.excitations:
        exc.validate(4 * 2)


def test_generate_h2_files_and_reference(tmp_path):
    meta = generate(get_molecule("h2"), tmp_path)
    assert meta["n_qubits"] == 4
    assert meta["hf_bitstring"] == "1010"
    assert meta["reference_level"] == "fci"
    assert meta["reference_energy"] == pytest.approx(-1.137284, abs=1e-3)
    assert meta["mapping"] == "jordan-wigner"
    assert meta["nuclear_repulsion_handling"].startswith("folded")

    payload = json.loads((tmp_path / "h2_sto3g.json").read_text())
    assert payload["n_qubits"] == 4
    terms = [(t["pauli"], t["coeff"][0] + 1j * t["coeff"][1])
             for t in payload["terms"]]
    assert all(len(lb) == 4 and set(lb) <= set("IXYZ") for lb, _ in terms)
    assert all(c.imag == 0.0 for _, c in terms)

    # round trip: the emitted file's ground eigenvalue is the reference
    dense = labels_to_dense(terms, 4)
    assert np.allclose(dense, dense.conj().T, atol=1e-12)
    e0 = np.linalg.eigvalsh(dense)[0]
    assert e0 == pytest.approx(meta["reference_energy"], abs=1e-9)

    saved_meta = json.loads((tmp_path / "h2_sto3g_meta.json").read_text())
    assert saved_meta == meta


def test_identity_excitation_leaves_hf_unchanged(tmp_path):
    path = tmp_path / "state.json"
    state = prepare_excited_initial([], "1010", path)
    want = np.zeros(16)
    want[int("1010", 2)] = 1.0
    assert np.allclose(state, want, atol=1e-15)
    data = json.loads(path.read_text())
    assert len(data) == 16
    assert data[int("1010", 2)] == [1.0, 0.0]


def test_u1_state_normalized_and_rotated(tmp_path):
    spec = get_molecule("h4")
    res, n_q, _ = hamiltonian_payload(spec)
    assert n_q == 8
    path = tmp_path / "u1.json"
    state = prepare_excited_initial(
        [ExcitationSpec("u1", p=7, q=4)], "11001100", path
    )
    assert np.linalg.norm(state) == pytest.approx(1.0, abs=1e-10)
    hf = np.zeros(256)
    hf[int("11001100", 2)] = 1.0
    # the rotation moves real weight out of the reference determinant
    assert abs(state @ hf) < 1.0 - 1e-3
    data = json.loads(path.read_text())
    assert len(data) == 256
    norm = sum(re * re + im * im for re, im in data)
    assert norm == pytest.approx(1.0, abs=1e-10)


def test_manifest_schema(tmp_path):
    metas = [generate(get_molecule("h2"), tmp_path)]
    path = write_manifest(metas, tmp_path)
    entries = json.loads(path.read_text())
    assert len(entries) == 1
    assert set(entries[0]) == {
        "molecule", "basis", "file", "reference_energy", "hf_bitstring",
    }
    assert entries[0]["file"] == "h2_sto3g.json"


def test_cli_main(tmp_path, capsys):
    assert main(["h2", "--out-dir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "h2: 4 qubits" in out
    assert (tmp_path / "manifest.json").exists()

    assert main(["kryptonite", "--out-dir", str(tmp_path)]) == 2


def test_catalog_covers_required_molecules():
    assert set(CATALOG) == {"h2", "h4", "lih", "nh", "ch2"}
