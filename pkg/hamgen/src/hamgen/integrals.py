"""McMurchie-Davidson one- and two-electron integrals over Cartesian
Gaussians. Angular momenta up to p appear in the supported bases; the
recursions are general but only exercised to the orders the kinetic
ladder needs (l + 2).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammainc, gammaln


def boys(m_max: int, x: float) -> np.ndarray:
    """F_0(x) .. F_m_max(x); downward recursion off the regularized
    lower incomplete gamma."""
    out = np.empty(m_max + 1)
    if x < 1e-13:
        for m in range(m_max + 1):
            out[m] = 1.0 / (2 * m + 1)
        return out
    s = m_max + 0.5
    # F_m(x) = Gamma(m+1/2) P(m+1/2, x) / (2 x^(m+1/2))
    out[m_max] = (
        math.exp(gammaln(s) - s * math.log(x)) * gammainc(s, x) / 2.0
    )
    ex = math.exp(-x)
    for m in range(m_max, 0, -1):
        out[m - 1] = (2 * x * out[m] + ex) / (2 * m - 1)
    return out


def hermite_e(i: int, j: int, t: int, q_dist: float, a: float, b: float) -> float:
    """1D Hermite expansion coefficient E_t^{ij}; q_dist = A - B."""
    p = a + b
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return math.exp(-(a * b / p) * q_dist * q_dist)
    if i > 0:
        return (
            hermite_e(i - 1, j, t - 1, q_dist, a, b) / (2 * p)
            - (b * q_dist / p) * hermite_e(i - 1, j, t, q_dist, a, b)
            + (t + 1) * hermite_e(i - 1, j, t + 1, q_dist, a, b)
        )
    return (
        hermite_e(i, j - 1, t - 1, q_dist, a, b) / (2 * p)
        + (a * q_dist / p) * hermite_e(i, j - 1, t, q_dist, a, b)
        + (t + 1) * hermite_e(i, j - 1, t + 1, q_dist, a, b)
    )


def hermite_r(t: int, u: int, v: int, n: int, p: float, pc, boys_table) -> float:
    """Hermite Coulomb auxiliary R^n_{tuv} on the table of Boys values."""
    if t < 0 or u < 0 or v < 0:
        return 0.0
    if t == u == v == 0:
        return (-2.0 * p) ** n * boys_table[n]
    if t > 0:
        return (t - 1) * hermite_r(t - 2, u, v, n + 1, p, pc, boys_table) + pc[
            0
        ] * hermite_r(t - 1, u, v, n + 1, p, pc, boys_table)
    if u > 0:
        return (u - 1) * hermite_r(t, u - 2, v, n + 1, p, pc, boys_table) + pc[
            1
        ] * hermite_r(t, u - 1, v, n + 1, p, pc, boys_table)
    return (v - 1) * hermite_r(t, u, v - 2, n + 1, p, pc, boys_table) + pc[
        2
    ] * hermite_r(t, u, v - 1, n + 1, p, pc, boys_table)


def primitive_overlap(a, ax, la, b, bx, lb) -> float:
    p = a + b
    val = (math.pi / p) ** 1.5
    for k in range(3):
        val *= hermite_e(la[k], lb[k], 0, ax[k] - bx[k], a, b)
    return val


def primitive_kinetic(a, ax, la, b, bx, lb) -> float:
    # 1D ladder: T1d = -2 b^2 S(i, j+2) + b(2j+1) S(i, j) - j(j-1)/2 S(i, j-2)
    p = a + b
    pref = (math.pi / p) ** 1.5
    s1 = [hermite_e(la[k], lb[k], 0, ax[k] - bx[k], a, b) for k in range(3)]
    total = 0.0
    for k in range(3):
        j = lb[k]
        up = hermite_e(la[k], j + 2, 0, ax[k] - bx[k], a, b)
        t1d = -2.0 * b * b * up + b * (2 * j + 1) * s1[k]
        if j >= 2:
            down = hermite_e(la[k], j - 2, 0, ax[k] - bx[k], a, b)
            t1d -= 0.5 * j * (j - 1) * down
        others = 1.0
        for m in range(3):
            if m != k:
                others *= s1[m]
        total += t1d * others
    return pref * total


def primitive_nuclear(a, ax, la, b, bx, lb, cx) -> float:
    """Attraction to a unit charge at cx (multiply by -Z outside)."""
    p = a + b
    px = tuple((a * ax[k] + b * bx[k]) / p for k in range(3))
    pc = tuple(px[k] - cx[k] for k in range(3))
    l_total = sum(la) + sum(lb)
    table = boys(l_total, p * (pc[0] ** 2 + pc[1] ** 2 + pc[2] ** 2))
    total = 0.0
    for t in range(la[0] + lb[0] + 1):
        e0 = hermite_e(la[0], lb[0], t, ax[0] - bx[0], a, b)
        if e0 == 0.0:
            continue
        for u in range(la[1] + lb[1] + 1):
            e1 = hermite_e(la[1], lb[1], u, ax[1] - bx[1], a, b)
            if e1 == 0.0:
                continue
            for v in range(la[2] + lb[2] + 1):
                e2 = hermite_e(la[2], lb[2], v, ax[2] - bx[2], a, b)
                if e2 == 0.0:
                    continue
                total += e0 * e1 * e2 * hermite_r(t, u, v, 0, p, pc, table)
    return 2.0 * math.pi / p * total


def primitive_eri(a, ax, la, b, bx, lb, c, cx, lc, d, dx, ld) -> float:
    p = a + b
    q = c + d
    rho = p * q / (p + q)
    px = tuple((a * ax[k] + b * bx[k]) / p for k in range(3))
    qx = tuple((c * cx[k] + d * dx[k]) / q for k in range(3))
    pq = tuple(px[k] - qx[k] for k in range(3))
    l_total = sum(la) + sum(lb) + sum(lc) + sum(ld)
    table = boys(l_total, rho * (pq[0] ** 2 + pq[1] ** 2 + pq[2] ** 2))
    e_bra = [
        [
            hermite_e(la[k], lb[k], t, ax[k] - bx[k], a, b)
            for t in range(la[k] + lb[k] + 1)
        ]
        for k in range(3)
    ]
    e_ket = [
        [
            hermite_e(lc[k], ld[k], s, cx[k] - dx[k], c, d)
            for s in range(lc[k] + ld[k] + 1)
        ]
        for k in range(3)
    ]
    total = 0.0
    for t, et in enumerate(e_bra[0]):
        if et == 0.0:
            continue
        for u, eu in enumerate(e_bra[1]):
            if eu == 0.0:
                continue
            for v, ev in enumerate(e_bra[2]):
                if ev == 0.0:
                    continue
                for tt, ett in enumerate(e_ket[0]):
                    if ett == 0.0:
                        continue
                    for uu, euu in enumerate(e_ket[1]):
                        if euu == 0.0:
                            continue
                        for vv, evv in enumerate(e_ket[2]):
                            if evv == 0.0:
                                continue
                            sign = -1.0 if (tt + uu + vv) % 2 else 1.0
                            total += (
                                et * eu * ev * ett * euu * evv * sign
                                * hermite_r(
                                    t + tt, u + uu, v + vv, 0, rho, pq, table
                                )
                            )
    return total * 2.0 * math.pi**2.5 / (p * q * math.sqrt(p + q))


def _contracted(fn, bra, ket, *extra):
    total = 0.0
    for a, ca in zip(bra.exponents, bra.coefficients):
        for b, cb in zip(ket.exponents, ket.coefficients):
            total += ca * cb * fn(
                a, bra.center, bra.powers, b, ket.center, ket.powers, *extra
            )
    return total


def overlap_matrix(aos) -> np.ndarray:
    n = len(aos)
    s = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            s[i, j] = s[j, i] = _contracted(primitive_overlap, aos[i], aos[j])
    return s


def kinetic_matrix(aos) -> np.ndarray:
    n = len(aos)
    t = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            t[i, j] = t[j, i] = _contracted(primitive_kinetic, aos[i], aos[j])
    return t


def nuclear_matrix(aos, nuclei) -> np.ndarray:
    """nuclei: list of (charge, xyz in bohr)."""
    n = len(aos)
    v = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            total = 0.0
            for charge, cx in nuclei:
                total -= charge * _contracted(
                    primitive_nuclear, aos[i], aos[j], cx
                )
            v[i, j] = v[j, i] = total
    return v


def eri_tensor(aos) -> np.ndarray:
    """Chemists' notation (ij|kl), 8-fold symmetry exploited."""
    n = len(aos)
    eri = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(i + 1):
            for k in range(i + 1):
                l_top = j if k == i else k
                for l in range(l_top + 1):
                    total = 0.0
                    ao_i, ao_j, ao_k, ao_l = aos[i], aos[j], aos[k], aos[l]
                    for a, ca in zip(ao_i.exponents, ao_i.coefficients):
                        for b, cb in zip(ao_j.exponents, ao_j.coefficients):
                            cab = ca * cb
                            for c, cc in zip(ao_k.exponents, ao_k.coefficients):
                                for d, cd in zip(ao_l.exponents, ao_l.coefficients):
                                    total += cab * cc * cd * primitive_eri(
                                        a, ao_i.center, ao_i.powers,
                                        b, ao_j.center, ao_j.powers,
                                        c, ao_k.center, ao_k.powers,
                                        d, ao_l.center, ao_l.powers,
                                    )
                    for p, q, r, s in (
                        (i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
                        (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i),
                    ):
                        eri[p, q, r, s] = total
    return eri


def nuclear_repulsion(nuclei) -> float:
    total = 0.0
    for i, (zi, xi) in enumerate(nuclei):
        for zj, xj in nuclei[:i]:
            total += zi * zj / math.dist(xi, xj)
    return total
