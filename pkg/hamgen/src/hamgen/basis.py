"""Contracted Gaussian basis data and AO expansion.

Cartesian s/p functions only, which covers the supported element/basis
combinations. Published exponents and contraction coefficients assume
normalized primitives; contractions are renormalized after assembly so
every AO has unit self-overlap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

ANGSTROM_TO_BOHR = 1.8897259886


class BasisError(ValueError):
    pass


# shell := (kind, exponents, s-coefficients, p-coefficients)
_SHELLS = {
    ("H", "sto-3g"): [
        ("S", [3.425250914, 0.6239137298, 0.1688554040],
         [0.1543289673, 0.5353281423, 0.4446345422], None),
    ],
    ("Li", "sto-3g"): [
        ("S", [16.11957475, 2.936200663, 0.7946504870],
         [0.1543289673, 0.5353281423, 0.4446345422], None),
        ("SP", [0.6362897469, 0.1478600533, 0.0480886784],
         [-0.09996722919, 0.3995128261, 0.7001154689],
         [0.1559162750, 0.6076837186, 0.3919573931]),
    ],
    ("H", "6-31g"): [
        ("S", [18.73113696, 2.825394365, 0.6401216923],
         [0.03349460434, 0.2347269535, 0.8137573261], None),
        ("S", [0.1612777588], [1.0], None),
    ],
    ("C", "6-31g"): [
        ("S", [3047.524880, 457.3695180, 103.9486850, 29.21015530,
               9.286662960, 3.163926960],
         [0.001834737132, 0.01403732281, 0.06884262226, 0.2321844432,
          0.4679413484, 0.3623119853], None),
        ("SP", [7.868272350, 1.881288540, 0.5442492580],
         [-0.1193324198, -0.1608541517, 1.143456438],
         [0.06899906659, 0.3164239610, 0.7443082909]),
        ("SP", [0.1687144782], [1.0], [1.0]),
    ],
    ("N", "6-31g"): [
        ("S", [4173.511460, 627.4579110, 142.9020930, 40.23432930,
               12.82021290, 4.390437010],
         [0.001834772160, 0.01399462700, 0.06858655181, 0.2322408730,
          0.4690699481, 0.3604551991], None),
        ("SP", [11.62636186, 2.716279807, 0.7722183966],
         [-0.1149611817, -0.1691174786, 1.145851947],
         [0.06757974388, 0.3239072959, 0.7408951398]),
        ("SP", [0.2120314975], [1.0], [1.0]),
    ],
}

_CHARGES = {"H": 1, "Li": 3, "C": 6, "N": 7}


def nuclear_charge(element: str) -> int:
    try:
        return _CHARGES[element]
    except KeyError:
        raise BasisError(f"unsupported element {element!r}") from None


def _primitive_norm(alpha: float, l: tuple[int, int, int]) -> float:
    # double-factorial form, valid for any Cartesian power
    lx, ly, lz = l
    total = lx + ly + lz
    df = 1.0
    for m in (lx, ly, lz):
        for k in range(2 * m - 1, 0, -2):
            df *= k
    return (
        (2 * alpha / math.pi) ** 0.75
        * (4 * alpha) ** (total / 2)
        / math.sqrt(df)
    )


@dataclass(frozen=True)
class ContractedGaussian:
    center: tuple[float, float, float]
    powers: tuple[int, int, int]
    exponents: tuple[float, ...]
    coefficients: tuple[float, ...]  # include primitive norms and renorm

    @property
    def n_primitives(self) -> int:
        return len(self.exponents)


def _self_overlap(exps, coeffs, powers) -> float:
    # 1D Hermite base case is enough: same center, same powers
    from .integrals import primitive_overlap

    total = 0.0
    zero = (0.0, 0.0, 0.0)
    for a, ca in zip(exps, coeffs):
        for b, cb in zip(exps, coeffs):
            total += ca * cb * primitive_overlap(a, zero, powers, b, zero, powers)
    return total


def _contract(center, powers, exps, raw_coeffs) -> ContractedGaussian:
    coeffs = [c * _primitive_norm(a, powers) for a, c in zip(exps, raw_coeffs)]
    norm = _self_overlap(exps, coeffs, powers)
    coeffs = [c / math.sqrt(norm) for c in coeffs]
    return ContractedGaussian(
        center=tuple(center),
        powers=tuple(powers),
        exponents=tuple(exps),
        coefficients=tuple(coeffs),
    )


def build_basis(geometry, basis: str):
    """(AO list, nuclei) for a geometry given in angstrom.

    Nuclei come back as (charge, xyz) with coordinates in bohr, ready
    for the integral routines. AO order: atoms as given; shells as
    tabulated; SP shells expand to s, px, py, pz. This order defines
    the spatial-orbital indexing that all downstream metadata refers to.
    """
    aos = []
    nuclei = []
    for element, xyz in geometry:
        key = (element, basis)
        if key not in _SHELLS:
            raise BasisError(f"no {basis!r} data for element {element!r}")
        center = tuple(c * ANGSTROM_TO_BOHR for c in xyz)
        nuclei.append((float(nuclear_charge(element)), center))
        for kind, exps, s_coeffs, p_coeffs in _SHELLS[key]:
            aos.append(_contract(center, (0, 0, 0), exps, s_coeffs))
            if kind == "SP":
                for powers in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                    aos.append(_contract(center, powers, exps, p_coeffs))
    return aos, nuclei
