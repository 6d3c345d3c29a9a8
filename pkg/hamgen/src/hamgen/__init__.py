"""Molecular qubit-Hamiltonian generator: Gaussian integrals, UHF,
determinant FCI, and a Jordan-Wigner mapper emitting the scanner's
Hamiltonian and amplitude file formats."""

__all__ = ["basis", "integrals", "scf", "fci", "jw", "molecules", "generate"]
