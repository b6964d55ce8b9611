#!/usr/bin/env python3
"""Generate the bundled FCIDUMP fixtures (STO-3G, RHF canonical orbitals).

Self-contained McMurchie-Davidson integrals over s/p Gaussians, RHF with
DIIS, optional frozen-core reduction, FCIDUMP output in chemists' (pq|rs)
notation with 8-fold symmetry, and a determinant-level FCI solve whose
energy is recorded in a sidecar .meta.json next to each fixture.

Usage: python3 scripts/make_fixtures.py [outdir]
"""

import itertools
import json
import math
import os
import sys

import numpy as np
from scipy.special import hyp1f1

ANGSTROM_PER_BOHR = 0.529177210903  # CODATA 2018

# STO-3G: contraction coefficients for normalized primitives.
STO3G = {
    "H": [("S", [3.425250914, 0.6239137298, 0.1688554040],
           [0.1543289673, 0.5353281423, 0.4446345422])],
    "Be": [("S", [30.16787069, 5.495115306, 1.487192653],
            [0.1543289673, 0.5353281423, 0.4446345422]),
           ("SP", [1.314833110, 0.3055389383, 0.09937074560],
            [-0.09996722919, 0.3995128261, 0.7001154689],
            [0.1559162750, 0.6076837186, 0.3919573931])],
    "B": [("S", [48.79111318, 8.887362172, 2.405267040],
           [0.1543289673, 0.5353281423, 0.4446345422]),
          ("SP", [2.236956142, 0.5198204999, 0.1690617600],
           [-0.09996722919, 0.3995128261, 0.7001154689],
           [0.1559162750, 0.6076837186, 0.3919573931])],
}
CHARGE = {"H": 1, "Be": 4, "B": 5}


def primitive_norm(alpha, lmn):
    l, m, n = lmn
    L = l + m + n
    df = lambda k: math.prod(range(k, 0, -2)) if k > 0 else 1
    return ((2 * alpha / math.pi) ** 0.75 * (4 * alpha) ** (L / 2.0)
            / math.sqrt(df(2 * l - 1) * df(2 * m - 1) * df(2 * n - 1)))


class Cgf:
    """Contracted Cartesian Gaussian."""

    def __init__(self, center, lmn, exps, coefs):
        self.center = np.asarray(center, float)
        self.lmn = lmn
        self.exps = list(exps)
        self.coefs = [c * primitive_norm(a, lmn) for a, c in zip(exps, coefs)]
        # renormalize the contracted function
        s = overlap_cgf_raw(self, self)
        self.coefs = [c / math.sqrt(s) for c in self.coefs]


def hermite_E(i, j, t, Qx, a, b):
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return math.exp(-q * Qx * Qx)
    if j == 0:
        return (hermite_E(i - 1, j, t - 1, Qx, a, b) / (2 * p)
                - q * Qx / a * hermite_E(i - 1, j, t, Qx, a, b)
                + (t + 1) * hermite_E(i - 1, j, t + 1, Qx, a, b))
    return (hermite_E(i, j - 1, t - 1, Qx, a, b) / (2 * p)
            + q * Qx / b * hermite_E(i, j - 1, t, Qx, a, b)
            + (t + 1) * hermite_E(i, j - 1, t + 1, Qx, a, b))


def overlap_prim(a, lmn1, A, b, lmn2, B):
    s = 1.0
    for k in range(3):
        s *= hermite_E(lmn1[k], lmn2[k], 0, A[k] - B[k], a, b)
    return s * (math.pi / (a + b)) ** 1.5


def overlap_cgf_raw(f1, f2):
    return sum(c1 * c2 * overlap_prim(a1, f1.lmn, f1.center, a2, f2.lmn, f2.center)
               for a1, c1 in zip(f1.exps, f1.coefs)
               for a2, c2 in zip(f2.exps, f2.coefs))


def kinetic_prim(a, lmn1, A, b, lmn2, B):
    l2, m2, n2 = lmn2
    term = b * (2 * (l2 + m2 + n2) + 3) * overlap_prim(a, lmn1, A, b, lmn2, B)
    term += -2 * b * b * (
        overlap_prim(a, lmn1, A, b, (l2 + 2, m2, n2), B)
        + overlap_prim(a, lmn1, A, b, (l2, m2 + 2, n2), B)
        + overlap_prim(a, lmn1, A, b, (l2, m2, n2 + 2), B))
    term += -0.5 * (
        l2 * (l2 - 1) * overlap_prim(a, lmn1, A, b, (l2 - 2, m2, n2), B)
        + m2 * (m2 - 1) * overlap_prim(a, lmn1, A, b, (l2, m2 - 2, n2), B)
        + n2 * (n2 - 1) * overlap_prim(a, lmn1, A, b, (l2, m2, n2 - 2), B))
    return term


def boys(m, T):
    return hyp1f1(m + 0.5, m + 1.5, -T) / (2.0 * m + 1.0)


def hermite_R(t, u, v, n, p, PC):
    T = p * (PC[0] ** 2 + PC[1] ** 2 + PC[2] ** 2)
    if t == u == v == 0:
        return (-2 * p) ** n * boys(n, T)
    if t > 0:
        val = 0.0
        if t > 1:
            val += (t - 1) * hermite_R(t - 2, u, v, n + 1, p, PC)
        return val + PC[0] * hermite_R(t - 1, u, v, n + 1, p, PC)
    if u > 0:
        val = 0.0
        if u > 1:
            val += (u - 1) * hermite_R(t, u - 2, v, n + 1, p, PC)
        return val + PC[1] * hermite_R(t, u - 1, v, n + 1, p, PC)
    val = 0.0
    if v > 1:
        val += (v - 1) * hermite_R(t, u, v - 2, n + 1, p, PC)
    return val + PC[2] * hermite_R(t, u, v - 1, n + 1, p, PC)


def nuclear_prim(a, lmn1, A, b, lmn2, B, C):
    p = a + b
    P = (a * A + b * B) / p
    val = 0.0
    for t in range(lmn1[0] + lmn2[0] + 1):
        for u in range(lmn1[1] + lmn2[1] + 1):
            for v in range(lmn1[2] + lmn2[2] + 1):
                e = (hermite_E(lmn1[0], lmn2[0], t, A[0] - B[0], a, b)
                     * hermite_E(lmn1[1], lmn2[1], u, A[1] - B[1], a, b)
                     * hermite_E(lmn1[2], lmn2[2], v, A[2] - B[2], a, b))
                val += e * hermite_R(t, u, v, 0, p, P - C)
    return 2 * math.pi / p * val


def eri_prim(a, lmn1, A, b, lmn2, B, c, lmn3, C, d, lmn4, D):
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    P = (a * A + b * B) / p
    Q = (c * C + d * D) / q
    val = 0.0
    for t in range(lmn1[0] + lmn2[0] + 1):
        for u in range(lmn1[1] + lmn2[1] + 1):
            for v in range(lmn1[2] + lmn2[2] + 1):
                e1 = (hermite_E(lmn1[0], lmn2[0], t, A[0] - B[0], a, b)
                      * hermite_E(lmn1[1], lmn2[1], u, A[1] - B[1], a, b)
                      * hermite_E(lmn1[2], lmn2[2], v, A[2] - B[2], a, b))
                if e1 == 0.0:
                    continue
                for tt in range(lmn3[0] + lmn4[0] + 1):
                    for uu in range(lmn3[1] + lmn4[1] + 1):
                        for vv in range(lmn3[2] + lmn4[2] + 1):
                            e2 = (hermite_E(lmn3[0], lmn4[0], tt, C[0] - D[0], c, d)
                                  * hermite_E(lmn3[1], lmn4[1], uu, C[1] - D[1], c, d)
                                  * hermite_E(lmn3[2], lmn4[2], vv, C[2] - D[2], c, d))
                            if e2 == 0.0:
                                continue
                            val += (e1 * e2 * (-1) ** (tt + uu + vv)
                                    * hermite_R(t + tt, u + uu, v + vv, 0,
                                                alpha, P - Q))
    return val * 2 * math.pi ** 2.5 / (p * q * math.sqrt(p + q))


def contract(fn, f1, f2, *rest):
    fs = (f1, f2) + rest
    total = 0.0
    for prims in itertools.product(*[list(zip(f.exps, f.coefs)) for f in fs]):
        coef = math.prod(c for _, c in prims)
        args = []
        for (a, _), f in zip(prims, fs):
            args += [a, f.lmn, f.center]
        total += coef * fn(*args)
    return total


def build_basis(atoms):
    basis = []
    for sym, pos in atoms:
        for shell in STO3G[sym]:
            if shell[0] == "S":
                _, exps, cs = shell
                basis.append(Cgf(pos, (0, 0, 0), exps, cs))
            else:
                _, exps, cs, cp = shell
                basis.append(Cgf(pos, (0, 0, 0), exps, cs))
                for lmn in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
                    basis.append(Cgf(pos, lmn, exps, cp))
    return basis


def integrals(atoms):
    basis = build_basis(atoms)
    n = len(basis)
    S = np.zeros((n, n))
    T = np.zeros((n, n))
    V = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            S[i, j] = S[j, i] = contract(overlap_prim, basis[i], basis[j])
            T[i, j] = T[j, i] = contract(kinetic_prim, basis[i], basis[j])
            v = 0.0
            for sym, pos in atoms:
                v -= CHARGE[sym] * contract(
                    lambda a, l1, A, b, l2, B: nuclear_prim(a, l1, A, b, l2, B,
                                                            np.asarray(pos)),
                    basis[i], basis[j])
            V[i, j] = V[j, i] = v
    eri = np.zeros((n, n, n, n))
    done = set()
    for p in range(n):
        for q in range(p + 1):
            for r in range(n):
                for s in range(r + 1):
                    if (min(p * n + q, r * n + s), max(p * n + q, r * n + s)) in done:
                        continue
                    done.add((min(p * n + q, r * n + s), max(p * n + q, r * n + s)))
                    val = contract(eri_prim, basis[p], basis[q], basis[r], basis[s])
                    for (a, b), (c, d) in itertools.product([(p, q), (q, p)],
                                                            [(r, s), (s, r)]):
                        eri[a, b, c, d] = val
                        eri[c, d, a, b] = val
    e_nuc = 0.0
    for (s1, p1), (s2, p2) in itertools.combinations(atoms, 2):
        e_nuc += CHARGE[s1] * CHARGE[s2] / np.linalg.norm(np.asarray(p1) - np.asarray(p2))
    return S, T + V, eri, e_nuc


def rhf(S, hcore, eri, e_nuc, n_occ, max_iter=200, tol=1e-12):
    n = S.shape[0]
    s_eval, s_evec = np.linalg.eigh(S)
    X = s_evec @ np.diag(s_eval ** -0.5) @ s_evec.T
    D = np.zeros((n, n))
    F = hcore.copy()
    energy = 0.0
    errs, focks = [], []
    for it in range(max_iter):
        J = np.einsum("pqrs,rs->pq", eri, D)
        K = np.einsum("prqs,rs->pq", eri, D)
        F = hcore + 2 * J - K
        err = X.T @ (F @ D @ S - S @ D @ F) @ X
        errs.append(err)
        focks.append(F)
        if len(errs) > 8:
            errs.pop(0)
            focks.pop(0)
        if len(errs) > 1:
            m = len(errs)
            B = -np.ones((m + 1, m + 1))
            B[m, m] = 0.0
            for i in range(m):
                for j in range(m):
                    B[i, j] = np.sum(errs[i] * errs[j])
            rhs = np.zeros(m + 1)
            rhs[m] = -1.0
            try:
                c = np.linalg.solve(B, rhs)[:m]
                F = sum(ci * fi for ci, fi in zip(c, focks))
            except np.linalg.LinAlgError:
                pass
        Fp = X.T @ F @ X
        mo_e, Cp = np.linalg.eigh(Fp)
        C = X @ Cp
        D = C[:, :n_occ] @ C[:, :n_occ].T
        e_new = np.sum(D * (hcore + F)) + e_nuc
        if abs(e_new - energy) < tol and it > 2:
            energy = e_new
            break
        energy = e_new
    # canonical orbital energies from the converged Fock
    J = np.einsum("pqrs,rs->pq", eri, D)
    K = np.einsum("prqs,rs->pq", eri, D)
    F = hcore + 2 * J - K
    Fp = X.T @ F @ X
    mo_e, Cp = np.linalg.eigh(Fp)
    C = X @ Cp
    energy = np.sum((C[:, :n_occ] @ C[:, :n_occ].T) * (hcore + F)) + e_nuc
    return energy, mo_e, C


def mo_transform(hcore, eri, C):
    h_mo = C.T @ hcore @ C
    g = np.einsum("pi,pqrs->iqrs", C, eri)
    g = np.einsum("qj,iqrs->ijrs", C, g)
    g = np.einsum("rk,ijrs->ijks", C, g)
    g = np.einsum("sl,ijks->ijkl", C, g)
    return h_mo, g


def freeze_core(h_mo, g_mo, e_nuc, n_core):
    nc = n_core
    e_core = e_nuc
    for c in range(nc):
        e_core += 2 * h_mo[c, c]
        for c2 in range(nc):
            e_core += 2 * g_mo[c, c, c2, c2] - g_mo[c, c2, c2, c]
    n = h_mo.shape[0]
    h_eff = h_mo[nc:, nc:].copy()
    for p in range(nc, n):
        for q in range(nc, n):
            for c in range(nc):
                h_eff[p - nc, q - nc] += 2 * g_mo[p, q, c, c] - g_mo[p, c, c, q]
    return h_eff, g_mo[nc:, nc:, nc:, nc:].copy(), e_core


def write_fcidump(path, h1, g, e_core, n_elec, ms2=0):
    n = h1.shape[0]
    with open(path, "w") as f:
        f.write(f"&FCIDUMP NORB={n},NELEC={n_elec},MS2={ms2},\n")
        f.write(" ORBSYM=" + "1," * n + "\n ISYM=1,\n&END\n")
        for p in range(n):
            for q in range(p + 1):
                for r in range(p + 1):
                    smax = q if r == p else r
                    for s in range(smax + 1):
                        v = g[p, q, r, s]
                        if abs(v) > 1e-14:
                            f.write(f" {v:23.16E} {p+1:3d} {q+1:3d} {r+1:3d} {s+1:3d}\n")
        for p in range(n):
            for q in range(p + 1):
                if abs(h1[p, q]) > 1e-14:
                    f.write(f" {h1[p, q]:23.16E} {p+1:3d} {q+1:3d}   0   0\n")
        f.write(f" {e_core:23.16E}   0   0   0   0\n")


def fci_energy(h1, g, e_core, n_elec):
    """Determinant FCI in the (interleaved) spinorbital basis; small cases only."""
    n = h1.shape[0]
    n_so = 2 * n
    na = nb = n_elec // 2

    def so_h(p, q):
        return h1[p // 2, q // 2] if (p % 2) == (q % 2) else 0.0

    def so_v(p, q, r, s):
        d1 = g[p // 2, r // 2, q // 2, s // 2] if (p % 2 == r % 2 and q % 2 == s % 2) else 0.0
        d2 = g[p // 2, s // 2, q // 2, r // 2] if (p % 2 == s % 2 and q % 2 == r % 2) else 0.0
        return d1 - d2

    dets = []
    for occa in itertools.combinations(range(0, n_so, 2), na):
        for occb in itertools.combinations(range(1, n_so, 2), nb):
            m = 0
            for o in occa + occb:
                m |= 1 << o
            dets.append(m)
    dets.sort()
    idx = {d: i for i, d in enumerate(dets)}
    dim = len(dets)

    def aops(det, p, create):
        mask = 1 << p
        if create == bool(det & mask):
            return None
        sign = (-1) ** bin(det & (mask - 1)).count("1")
        return det ^ mask, sign

    H = np.zeros((dim, dim))
    for d in dets:
        occ = [p for p in range(n_so) if d >> p & 1]
        e = e_core + sum(so_h(p, p) for p in occ)
        e += 0.5 * sum(so_v(p, q, p, q) for p in occ for q in occ)
        H[idx[d], idx[d]] = e
        for i in occ:
            for a in range(n_so):
                if d >> a & 1 or (a % 2) != (i % 2):
                    continue
                r1 = aops(d, i, False)
                d1, s1 = r1
                d2, s2 = aops(d1, a, True)
                elem = so_h(a, i) + sum(so_v(a, k, i, k) for k in occ if k != i)
                H[idx[d2], idx[d]] += s1 * s2 * elem
        for i, j in itertools.combinations(occ, 2):
            virt = [p for p in range(n_so) if not (d >> p & 1)]
            for a, b in itertools.combinations(virt, 2):
                if (a % 2) + (b % 2) != (i % 2) + (j % 2):
                    continue
                dt, s = d, 1
                ok = True
                for p, cr in [(i, False), (j, False), (b, True), (a, True)]:
                    r = aops(dt, p, cr)
                    if r is None:
                        ok = False
                        break
                    dt, sg = r
                    s *= sg
                if ok:
                    H[idx[dt], idx[d]] += s * so_v(a, b, i, j)
    w = np.linalg.eigvalsh(H)
    return float(w[0]), dim


SYSTEMS = {
    "h2": {
        "atoms": lambda r: [("H", (0, 0, 0)), ("H", (0, 0, r))],
        "geoms": [0.735],
        "n_core": 0,
        "note": "R = H-H distance",
    },
    "h4": {
        "atoms": lambda r: [("H", (0, 0, i * r)) for i in range(4)],
        "geoms": [0.75, 1.00, 1.25, 1.50, 1.75, 2.00],
        "n_core": 0,
        "note": "linear chain, R = nearest-neighbour spacing",
    },
    "bh": {
        "atoms": lambda r: [("B", (0, 0, 0)), ("H", (0, 0, r))],
        "geoms": [1.00, 1.30, 1.60, 2.00, 2.40, 2.80],
        "n_core": 1,
        "note": "R = B-H distance, B 1s frozen",
    },
    "beh2": {
        "atoms": lambda r: [("H", (0, 0, -r)), ("Be", (0, 0, 0)), ("H", (0, 0, r))],
        "geoms": [1.00, 1.25, 1.50, 1.75, 2.00, 2.25, 2.50],
        "n_core": 1,
        "note": "linear symmetric, R = Be-H distance, Be 1s frozen",
    },
}


def main():
    outroot = sys.argv[1] if len(sys.argv) > 1 else "data"
    for name, spec in SYSTEMS.items():
        outdir = os.path.join(outroot, name)
        os.makedirs(outdir, exist_ok=True)
        for r in spec["geoms"]:
            # geometry specified in angstrom, integrals evaluated in bohr
            atoms = [(s, tuple(np.asarray(p, float) / ANGSTROM_PER_BOHR))
                     for s, p in spec["atoms"](r)]
            n_elec_tot = sum(CHARGE[s] for s, _ in atoms)
            n_occ = n_elec_tot // 2
            S, hcore, eri, e_nuc = integrals(atoms)
            e_scf, mo_e, C = rhf(S, hcore, eri, e_nuc, n_occ)
            h_mo, g_mo = mo_transform(hcore, eri, C)
            nc = spec["n_core"]
            h_eff, g_act, e_core = freeze_core(h_mo, g_mo, e_nuc, nc)
            n_act_elec = n_elec_tot - 2 * nc
            tag = f"{name}_{r:.3f}"
            path = os.path.join(outdir, tag + ".fcidump")
            write_fcidump(path, h_eff, g_act, e_core, n_act_elec)
            e_fci, dim = fci_energy(h_eff, g_act, e_core, n_act_elec)
            n_act = h_eff.shape[0]
            occ_act = n_act_elec // 2
            meta = {
                "system": name,
                "geometry_angstrom": {"R": r, "note": spec["note"]},
                "basis": "STO-3G",
                "generator": "scripts/make_fixtures.py (McMurchie-Davidson, RHF+DIIS)",
                "numpy": np.__version__,
                "angstrom_per_bohr": ANGSTROM_PER_BOHR,
                "scf_conv_tol": 1e-12,
                "n_frozen_core": nc,
                "n_active_spatial": n_act,
                "n_active_electrons": n_act_elec,
                "e_nuclear_repulsion": e_nuc,
                "e_core_folded": e_core,
                "e_rhf_total": e_scf,
                "e_fci_total": e_fci,
                "fci_dim_sector": dim,
                "mo_energy_active": [float(x) for x in mo_e[nc:]],
                "homo_spatial_active": occ_act - 1,
                "lumo_spatial_active": occ_act,
                "homo_spinorbitals_interleaved": [2 * (occ_act - 1), 2 * (occ_act - 1) + 1],
                "lumo_spinorbitals_interleaved": [2 * occ_act, 2 * occ_act + 1],
            }
            with open(os.path.join(outdir, tag + ".meta.json"), "w") as f:
                json.dump(meta, f, indent=2)
            print(f"{tag}: E_RHF={e_scf:.10f}  E_FCI={e_fci:.10f}  "
                  f"corr={e_fci - e_scf:+.6f}  dim={dim}")


if __name__ == "__main__":
    main()
