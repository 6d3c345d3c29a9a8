"""Determinant FCI in the UHF molecular-orbital basis. Bitmask strings
per spin, Slater-Condon matrix elements, dense diagonalization. Sized
for the small systems whose exact energies go into the metadata; the
large open-shell cases never enter here."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .scf import SCFResult


def mo_integrals(res: SCFResult):
    """One- and two-electron integrals in the spin-resolved MO basis:
    (h_a, h_b), (g_aa, g_bb, g_ab) with chemists' (pq|rs)."""
    ca, cb = res.mo_coeff_a, res.mo_coeff_b

    def one(c):
        return c.T @ res.h_core @ c

    def two(c1, c2):
        return np.einsum(
            "pqrs,pi,qj,rk,sl->ijkl", res.eri, c1, c1, c2, c2, optimize=True
        )

    return (one(ca), one(cb)), (two(ca, ca), two(cb, cb), two(ca, cb))


def occupation_strings(n_orb: int, n_occ: int) -> list[int]:
    """All n_occ-electron bitmasks over n_orb orbitals, orbital 0 = LSB."""
    out = []
    for occ in combinations(range(n_orb), n_occ):
        mask = 0
        for i in occ:
            mask |= 1 << i
        out.append(mask)
    return out


def _occ(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _phase(mask: int, i: int, a: int) -> float:
    """Sign of moving one electron i -> a inside mask (i occupied)."""
    lo, hi = (i, a) if i < a else (a, i)
    between = mask & (((1 << hi) - 1) ^ ((1 << (lo + 1)) - 1))
    return -1.0 if bin(between).count("1") % 2 else 1.0


def _single_diff(m1: int, m2: int) -> tuple[int, int]:
    """(hole in m1, particle in m2) for a single excitation."""
    return _occ(m1 & ~m2)[0], _occ(m2 & ~m1)[0]


def build_ci_matrix(h, g, dets):
    """Dense CI matrix over an arbitrary determinant list
    [(mask_a, mask_b)] via the Slater-Condon rules."""
    h_a, h_b = h
    g_aa, g_bb, g_ab = g
    dim = len(dets)
    ham = np.zeros((dim, dim))

    def diagonal(ma, mb):
        occ_a, occ_b = _occ(ma), _occ(mb)
        e = sum(h_a[i, i] for i in occ_a) + sum(h_b[i, i] for i in occ_b)
        for i in occ_a:
            for j in occ_a:
                e += 0.5 * (g_aa[i, i, j, j] - g_aa[i, j, j, i])
        for i in occ_b:
            for j in occ_b:
                e += 0.5 * (g_bb[i, i, j, j] - g_bb[i, j, j, i])
        for i in occ_a:
            for j in occ_b:
                e += g_ab[i, i, j, j]
        return e

    def single(h_1, g_same, ma, na, other_occ, g_cross, cross_first):
        i, a = _single_diff(ma, na)
        val = h_1[i, a]
        for j in _occ(ma & na):
            val += g_same[i, a, j, j] - g_same[i, j, j, a]
        for j in other_occ:
            if cross_first:
                val += g_cross[i, a, j, j]
            else:
                val += g_cross[j, j, i, a]
        return val * _phase(ma, i, a)

    def double_same(g_same, ma, na):
        i, j = _occ(ma & ~na)
        a, b = _occ(na & ~ma)
        sign = _phase(ma, i, a)
        mid = ma ^ (1 << i) ^ (1 << a)
        sign *= _phase(mid, j, b)
        return sign * (g_same[i, a, j, b] - g_same[i, b, j, a])

    for p in range(dim):
        ma, mb = dets[p]
        ham[p, p] = diagonal(ma, mb)
        for q in range(p + 1, dim):
            na, nb = dets[q]
            da = bin(ma ^ na).count("1") // 2
            db = bin(mb ^ nb).count("1") // 2
            if da + db > 2:
                continue
            if da == 1 and db == 0:
                val = single(h_a, g_aa, ma, na, _occ(mb), g_ab, True)
            elif da == 0 and db == 1:
                val = single(h_b, g_bb, mb, nb, _occ(ma), g_ab, False)
            elif da == 2 and db == 0:
                val = double_same(g_aa, ma, na)
            elif da == 0 and db == 2:
                val = double_same(g_bb, mb, nb)
            elif da == 1 and db == 1:
                i, a = _single_diff(ma, na)
                j, b = _single_diff(mb, nb)
                val = g_ab[i, a, j, b] * _phase(ma, i, a) * _phase(mb, j, b)
            else:
                continue
            ham[p, q] = ham[q, p] = val

    return ham


def build_hamiltonian(h, g, n_orb: int, n_a: int, n_b: int):
    """Dense FCI matrix and its determinant list [(mask_a, mask_b)]."""
    dets = [
        (sa, sb)
        for sa in occupation_strings(n_orb, n_a)
        for sb in occupation_strings(n_orb, n_b)
    ]
    return build_ci_matrix(h, g, dets), dets


def fci_ground_energy(res: SCFResult) -> float:
    """Lowest total energy (electronic + nuclear) in the full CI space."""
    h, g = mo_integrals(res)
    ham, _ = build_hamiltonian(h, g, res.n_spatial, res.n_alpha, res.n_beta)
    return float(np.linalg.eigvalsh(ham)[0]) + res.e_nuclear


def _excited_strings(mask: int, n_orb: int, level: int) -> list[int]:
    """All strings exactly `level` hole-particle moves away from mask."""
    occ = _occ(mask)
    virt = [a for a in range(n_orb) if not mask & (1 << a)]
    out = []
    for holes in combinations(occ, level):
        for parts in combinations(virt, level):
            m = mask
            for i in holes:
                m ^= 1 << i
            for a in parts:
                m |= 1 << a
            out.append(m)
    return out


def cisd_determinants(n_orb: int, n_a: int, n_b: int):
    """Reference plus all determinants within two total excitations."""
    hf_a = (1 << n_a) - 1
    hf_b = (1 << n_b) - 1
    by_level_a = [_excited_strings(hf_a, n_orb, k) for k in range(3)]
    by_level_b = [_excited_strings(hf_b, n_orb, k) for k in range(3)]
    dets = []
    for ka in range(3):
        for kb in range(3 - ka):
            for sa in by_level_a[ka]:
                for sb in by_level_b[kb]:
                    dets.append((sa, sb))
    return dets


def cisd_ground_energy(res: SCFResult) -> float:
    """Singles-and-doubles CI total energy from the UHF reference; for
    two-electron systems this coincides with full CI."""
    h, g = mo_integrals(res)
    dets = cisd_determinants(res.n_spatial, res.n_alpha, res.n_beta)
    ham = build_ci_matrix(h, g, dets)
    return float(np.linalg.eigvalsh(ham)[0]) + res.e_nuclear


def frozen_core_reduction(h, g, n_frozen: int):
    """Fold the lowest n_frozen doubly occupied orbitals of each spin
    into an effective one-body operator. Returns ((h_a, h_b),
    (g_aa, g_bb, g_ab), e_core) over the active orbitals."""
    h_a, h_b = h
    g_aa, g_bb, g_ab = g
    k = n_frozen
    if k == 0:
        return h, g, 0.0

    core = range(k)
    e_core = sum(h_a[c, c] + h_b[c, c] for c in core)
    for c in core:
        for d in core:
            e_core += 0.5 * (g_aa[c, c, d, d] - g_aa[c, d, d, c])
            e_core += 0.5 * (g_bb[c, c, d, d] - g_bb[c, d, d, c])
            e_core += g_ab[c, c, d, d]

    ha_eff = h_a.copy()
    hb_eff = h_b.copy()
    for c in core:
        ha_eff += g_aa[:, :, c, c] - g_aa[:, c, c, :]
        ha_eff += g_ab[:, :, c, c]
        hb_eff += g_bb[:, :, c, c] - g_bb[:, c, c, :]
        hb_eff += g_ab[c, c, :, :]

    sl = slice(k, None)
    return (
        (ha_eff[sl, sl], hb_eff[sl, sl]),
        (g_aa[sl, sl, sl, sl], g_bb[sl, sl, sl, sl], g_ab[sl, sl, sl, sl]),
        float(e_core),
    )


def _occupancy_matrix(strings, n_orb):
    occ = np.zeros((len(strings), n_orb))
    for p, mask in enumerate(strings):
        for i in _occ(mask):
            occ[p, i] = 1.0
    return occ


def _single_lists(strings, n_orb, index):
    """All single excitations from every string: arrays
    (from, to, hole, particle, phase, base-less common part)."""
    frm, to, hole, part, phase = [], [], [], [], []
    for p, mask in enumerate(strings):
        occ = _occ(mask)
        for i in occ:
            for a in range(n_orb):
                if mask & (1 << a):
                    continue
                nxt = mask ^ (1 << i) ^ (1 << a)
                frm.append(p)
                to.append(index[nxt])
                hole.append(i)
                part.append(a)
                phase.append(_phase(mask, i, a))
    return (
        np.array(frm, dtype=np.int64),
        np.array(to, dtype=np.int64),
        np.array(hole, dtype=np.int64),
        np.array(part, dtype=np.int64),
        np.array(phase),
    )


def _sparse_blocks(h_1, g_same, g_cross, strings, n_orb, index, cross_first):
    """Same-spin single and double excitation triples plus the data the
    cross terms need. g_cross is indexed with this spin's pair first
    when cross_first, second otherwise."""
    frm, to, hole, part, phase = _single_lists(strings, n_orb, index)

    base = h_1[hole, part].astype(float)
    # sum over common occupied j of (ia|jj) - (ij|ja)
    jmat = g_same[:, :, np.arange(n_orb), np.arange(n_orb)]  # (i, a, j)
    kmat = np.transpose(g_same, (0, 3, 1, 2))[
        :, :, np.arange(n_orb), np.arange(n_orb)
    ]  # (i, a, j) <- (i j | j a)
    occm = _occupancy_matrix(strings, n_orb)
    for p in range(len(frm)):
        i, a, s = hole[p], part[p], frm[p]
        row = occm[s].copy()
        row[i] = 0.0
        base[p] += float((jmat[i, a] - kmat[i, a]) @ row)

    if cross_first:
        crossvec = g_cross[hole, part][:, np.arange(g_cross.shape[2]),
                                       np.arange(g_cross.shape[3])]
    else:
        diag = g_cross[np.arange(g_cross.shape[0]), np.arange(g_cross.shape[1])]
        crossvec = diag[:, hole, part].T
    singles = (frm, to, hole, part, phase, base, crossvec)

    dfrm, dto, dval = [], [], []
    for p, mask in enumerate(strings):
        occ = _occ(mask)
        virt = [a for a in range(n_orb) if not mask & (1 << a)]
        for ii in range(len(occ)):
            for jj in range(ii + 1, len(occ)):
                i, j = occ[ii], occ[jj]
                for aa in range(len(virt)):
                    for bb in range(aa + 1, len(virt)):
                        a, b = virt[aa], virt[bb]
                        sgn = _phase(mask, i, a)
                        mid = mask ^ (1 << i) ^ (1 << a)
                        sgn *= _phase(mid, j, b)
                        nxt = mid ^ (1 << j) ^ (1 << b)
                        dfrm.append(p)
                        dto.append(index[nxt])
                        dval.append(
                            sgn * (g_same[i, a, j, b] - g_same[i, b, j, a])
                        )
    doubles = (
        np.array(dfrm, dtype=np.int64),
        np.array(dto, dtype=np.int64),
        np.array(dval),
    )
    return singles, doubles, occm


def build_hamiltonian_sparse(h, g, n_orb: int, n_a: int, n_b: int):
    """CSR FCI matrix over (alpha string x beta string) determinants.
    Same physics as build_hamiltonian, organized for large counts."""
    from scipy.sparse import coo_matrix

    h_a, h_b = h
    g_aa, g_bb, g_ab = g
    strings_a = occupation_strings(n_orb, n_a)
    strings_b = occupation_strings(n_orb, n_b)
    idx_a = {m: p for p, m in enumerate(strings_a)}
    idx_b = {m: p for p, m in enumerate(strings_b)}
    na, nb = len(strings_a), len(strings_b)
    dim = na * nb

    sing_a, dbl_a, occ_a = _sparse_blocks(
        h_a, g_aa, g_ab, strings_a, n_orb, idx_a, cross_first=True
    )
    sing_b, dbl_b, occ_b = _sparse_blocks(
        h_b, g_bb, g_ab, strings_b, n_orb, idx_b, cross_first=False
    )

    rows, cols, vals = [], [], []
    rng_b = np.arange(nb, dtype=np.int64)
    rng_a = np.arange(na, dtype=np.int64)

    # diagonal
    j_aa = np.einsum("iijj->ij", g_aa) - np.einsum("ijji->ij", g_aa)
    j_bb = np.einsum("iijj->ij", g_bb) - np.einsum("ijji->ij", g_bb)
    j_ab = np.einsum("iijj->ij", g_ab)
    e_a = occ_a @ np.diag(h_a) + 0.5 * np.einsum(
        "pi,ij,pj->p", occ_a, j_aa, occ_a
    )
    e_b = occ_b @ np.diag(h_b) + 0.5 * np.einsum(
        "pi,ij,pj->p", occ_b, j_bb, occ_b
    )
    diag = (
        e_a[:, None] + e_b[None, :] + occ_a @ j_ab @ occ_b.T
    ).ravel()
    rows.append(np.arange(dim, dtype=np.int64))
    cols.append(np.arange(dim, dtype=np.int64))
    vals.append(diag)

    # alpha singles (beta spectator), value varies with the beta string
    frm, to, _, _, phase, base, crossvec = sing_a
    if len(frm):
        v = phase[:, None] * (base[:, None] + crossvec @ occ_b.T)
        rows.append((frm[:, None] * nb + rng_b[None, :]).ravel())
        cols.append((to[:, None] * nb + rng_b[None, :]).ravel())
        vals.append(v.ravel())

    # beta singles (alpha spectator)
    frm, to, _, _, phase, base, crossvec = sing_b
    if len(frm):
        v = phase[:, None] * (base[:, None] + crossvec @ occ_a.T)
        rows.append((rng_a[None, :] * nb + frm[:, None]).ravel())
        cols.append((rng_a[None, :] * nb + to[:, None]).ravel())
        vals.append(v.ravel())

    # same-spin doubles, spectator-independent
    dfrm, dto, dval = dbl_a
    if len(dfrm):
        rows.append((dfrm[:, None] * nb + rng_b[None, :]).ravel())
        cols.append((dto[:, None] * nb + rng_b[None, :]).ravel())
        vals.append(np.repeat(dval, nb))
    dfrm, dto, dval = dbl_b
    if len(dfrm):
        rows.append((rng_a[None, :] * nb + dfrm[:, None]).ravel())
        cols.append((rng_a[None, :] * nb + dto[:, None]).ravel())
        vals.append(np.broadcast_to(dval[:, None], (len(dval), na)).ravel())

    # opposite-spin doubles: alpha single x beta single
    frm_a, to_a, hole_a, part_a, ph_a = sing_a[:5]
    frm_b, to_b, hole_b, part_b, ph_b = sing_b[:5]
    if len(frm_a) and len(frm_b):
        v = (
            ph_a[:, None]
            * ph_b[None, :]
            * g_ab[hole_a[:, None], part_a[:, None],
                   hole_b[None, :], part_b[None, :]]
        )
        rows.append((frm_a[:, None] * nb + frm_b[None, :]).ravel())
        cols.append((to_a[:, None] * nb + to_b[None, :]).ravel())
        vals.append(v.ravel())

    mat = coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim),
    ).tocsr()
    dets = [(sa, sb) for sa in strings_a for sb in strings_b]
    return mat, dets


def fci_ground_energy_sparse(res: SCFResult, *, n_frozen: int = 0) -> float:
    """Lowest total energy via sparse diagonalization, optionally with
    the deepest n_frozen orbitals of each spin kept doubly occupied."""
    from scipy.sparse.linalg import eigsh

    h, g = mo_integrals(res)
    h, g, e_core = frozen_core_reduction(h, g, n_frozen)
    n_orb = res.n_spatial - n_frozen
    n_a = res.n_alpha - n_frozen
    n_b = res.n_beta - n_frozen
    if min(n_a, n_b) < 0:
        raise ValueError("frozen core exceeds occupation")
    if n_a + n_b == 0:
        return e_core + res.e_nuclear
    mat, _ = build_hamiltonian_sparse(h, g, n_orb, n_a, n_b)
    if mat.shape[0] == 1:
        e0 = mat[0, 0]
    else:
        e0 = eigsh(mat, k=1, which="SA", return_eigenvectors=False)[0]
    return float(e0) + e_core + res.e_nuclear
