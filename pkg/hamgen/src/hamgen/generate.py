"""Fixture emission: qubit Hamiltonian JSON, excited-state amplitude
files, per-molecule metadata, and a manifest. File formats follow the
scanner's contracts: term records {"pauli", "coeff": [re, im]} with
qubit 0 as the leftmost label character, and amplitude files as a JSON
list of 2^n [re, im] pairs indexed by the basis bitstring read as a
binary integer."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np
from scipy.linalg import expm

from .basis import BasisError, build_basis
from .fci import cisd_ground_energy, fci_ground_energy
from .jw import (
    hf_bitstring,
    map_hamiltonian,
    operator_labels,
    operator_to_dense,
    rotation_generator,
)
from .molecules import CATALOG, MoleculeError, MoleculeSpec, get_molecule
from .scf import SCFError, run_uhf

# dense diagonalization (and dense expm) refuse above this qubit count
DENSE_QUBIT_LIMIT = 12

ORBITAL_ORDER = (
    "blocked spin orbitals: qubits 0..n-1 are the alpha spatial orbitals "
    "in AO-derived MO order, qubits n..2n-1 the beta ones; qubit 0 is the "
    "leftmost character of every Pauli label and the most significant "
    "amplitude-index bit"
)


def _file_stem(spec: MoleculeSpec) -> str:
    return f"{spec.name}_{spec.basis.replace('-', '')}"


def hamiltonian_payload(spec: MoleculeSpec):
    """SCF + mapping for one molecule. Returns (scf result, n_qubits,
    sorted label/coefficient pairs)."""
    aos, nuclei = build_basis(spec.geometry, spec.basis)
    res = run_uhf(aos, nuclei, spec.n_alpha, spec.n_beta)
    n_q = 2 * res.n_spatial
    labels = operator_labels(map_hamiltonian(res), n_q)
    bad = max(abs(c.imag) for _, c in labels)
    if bad > 1e-9:
        raise SCFError(f"{spec.name}: non-Hermitian mapped term ({bad:.2e})")
    return res, n_q, labels


def prepare_excited_initial(excitations, hf_bits: str, out_path) -> np.ndarray:
    """Amplitude file for (prod of exp generators) |HF>. An empty
    excitation list writes the unchanged reference state."""
    n_q = len(hf_bits)
    state = np.zeros(1 << n_q, dtype=complex)
    state[int(hf_bits, 2)] = 1.0
    for exc in excitations:
        exc.validate(n_q)
        gen = operator_to_dense(rotation_generator(exc.p, exc.q), n_q)
        state = expm(gen) @ state
    norm = np.linalg.norm(state)
    if abs(norm - 1.0) > 1e-10:
        raise MoleculeError(f"excited state norm drifted to {norm!r}")
    payload = [[float(z.real), float(z.imag)] for z in state]
    Path(out_path).write_text(json.dumps(payload))
    return state


def generate(spec: MoleculeSpec, out_dir) -> dict:
    """Write Hamiltonian + metadata (+ any excited-state files) for one
    molecule; returns the metadata dict, which includes file names."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    res, n_q, labels = hamiltonian_payload(spec)

    stem = _file_stem(spec)
    ham_name = f"{stem}.json"
    ham = {
        "n_qubits": n_q,
        "terms": [
            {"pauli": lb, "coeff": [float(c.real), 0.0]} for lb, c in labels
        ],
    }
    (out / ham_name).write_text(json.dumps(ham))

    if n_q <= DENSE_QUBIT_LIMIT:
        reference_energy = fci_ground_energy(res)
        reference_level = "fci"
    else:
        reference_energy = cisd_ground_energy(res)
        reference_level = "cisd"

    bits = hf_bitstring(res.n_spatial, res.n_alpha, res.n_beta)
    state_files = {}
    for exc in spec.excitations:
        name = f"{stem}_{exc.name}_state.json"
        prepare_excited_initial([exc], bits, out / name)
        state_files[exc.name] = name

    meta = {
        "molecule": spec.name,
        "basis": spec.basis,
        "geometry": [[el, list(xyz)] for el, xyz in spec.geometry],
        "charge": spec.charge,
        "multiplicity": spec.multiplicity,
        "n_electrons": spec.n_electrons,
        "n_alpha": res.n_alpha,
        "n_beta": res.n_beta,
        "n_qubits": n_q,
        "n_terms": len(labels),
        "mapping": "jordan-wigner",
        "orbital_order": ORBITAL_ORDER,
        "hf_bitstring": bits,
        "nuclear_repulsion": res.e_nuclear,
        "nuclear_repulsion_handling": "folded into the identity coefficient",
        "scf_energy": res.e_total,
        "scf_iterations": res.n_iter,
        "reference_energy": reference_energy,
        "reference_level": reference_level,
        "files": {"hamiltonian": ham_name, "states": state_files},
    }
    (out / f"{stem}_meta.json").write_text(json.dumps(meta, indent=1))
    return meta


def write_manifest(metas, out_dir) -> Path:
    entries = [
        {
            "molecule": m["molecule"],
            "basis": m["basis"],
            "file": m["files"]["hamiltonian"],
            "reference_energy": m["reference_energy"],
            "hf_bitstring": m["hf_bitstring"],
        }
        for m in metas
    ]
    path = Path(out_dir) / "manifest.json"
    path.write_text(json.dumps(entries, indent=1))
    return path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hamgen",
        description="generate molecular qubit-Hamiltonian fixtures",
    )
    parser.add_argument(
        "molecules",
        nargs="*",
        default=sorted(CATALOG),
        help="molecule names (default: all)",
    )
    parser.add_argument("--out-dir", default="fixtures")
    args = parser.parse_args(argv)

    try:
        specs = [get_molecule(name) for name in args.molecules]
    except MoleculeError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2

    metas = []
    for spec in specs:
        try:
            meta = generate(spec, args.out_dir)
        except (MoleculeError, BasisError) as err:
            print(f"error: {err}", file=sys.stderr)
            return 2
        except SCFError as err:
            print(f"toolchain failure: {err}", file=sys.stderr)
            return 3
        metas.append(meta)
        print(
            f"{meta['molecule']}: {meta['n_qubits']} qubits, "
            f"{meta['n_terms']} terms, {meta['reference_level']} "
            f"reference {meta['reference_energy']:.6f}"
        )
    write_manifest(metas, args.out_dir)
    return 0


if __name__ == "__main__":
    sys.exit(main())
