"""Independent oracles kept deliberately separate from the package code.

* dense GF(2) Gaussian elimination for homology of finite complexes,
  working on explicit boundary matrices between graded pieces;
* two-bridge Alexander polynomials from the classical alternating-sum
  formula on the fraction (Minkus), cross-checking the models' graded
  Euler characteristics;
* brute-force enumeration of (i,j)-plane translates for hat-vertex counts.
"""

from __future__ import annotations

from fractions import Fraction

from floercone.algebra import FilteredComplex


# -- dense GF(2) homology -----------------------------------------------------


def gf2_matrix_rank(rows: list[list[int]]) -> int:
    work = [int("".join(str(b) for b in row[::-1]) or "0", 2) for row in rows]
    rank = 0
    for col in range(max((len(r) for r in rows), default=0)):
        bit = 1 << col
        pivot = None
        for i in range(rank, len(work)):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for i in range(len(work)):
            if i != rank and work[i] & bit:
                work[i] ^= work[rank]
        rank += 1
    return rank


def dense_homology_by_maslov(c: FilteredComplex) -> dict[Fraction, int]:
    """Homology ranks of a finite GF(2) complex (all entries U-power 0),
    graded by Maslov, via dense rank computations per graded piece."""
    assert all(k == 0 for _, _, k in c.entries()), "dense oracle wants U-power-0 entries"
    by_m: dict[Fraction, list[str]] = {}
    for g in c.generators:
        by_m.setdefault(Fraction(g.maslov), []).append(g.name)
    ranks: dict[Fraction, int] = {}
    for m, names in by_m.items():
        below = by_m.get(m - 1, [])
        above = by_m.get(m + 1, [])
        idx = {n: j for j, n in enumerate(below)}
        out_rows = []
        for n in names:
            row = [0] * len(below)
            for tgt in c.differential.get(n, {}):
                row[idx[tgt]] = 1
            out_rows.append(row)
        rank_out = gf2_matrix_rank(out_rows) if below else 0
        idx2 = {n: j for j, n in enumerate(names)}
        in_rows = []
        for n in above:
            row = [0] * len(names)
            for tgt in c.differential.get(n, {}):
                if tgt in idx2:
                    row[idx2[tgt]] = 1
            in_rows.append(row)
        rank_in = gf2_matrix_rank(in_rows) if above else 0
        h = len(names) - rank_out - rank_in
        if h:
            ranks[m] = h
    return ranks


# -- two-bridge Alexander polynomial ------------------------------------------


def two_bridge_alexander(alpha: int, beta: int) -> dict[int, int]:
    """Alexander polynomial of the two-bridge knot of fraction alpha/beta,
    normalized symmetric, via Delta = sum_i (-1)^i t^(sum_{j<=i} eps_j) with
    eps_j = (-1)^floor(j*beta/alpha) and beta taken odd mod 2*alpha."""
    assert alpha % 2 == 1 and alpha > 0
    b = beta % (2 * alpha)
    if b % 2 == 0:
        b += alpha
    poly: dict[int, int] = {}
    exp = 0
    sign = 1
    poly[0] = 1
    for j in range(1, alpha):
        exp += (-1) ** ((j * b) // alpha)
        sign = -sign
        poly[exp] = poly.get(exp, 0) + sign
    # symmetrize: shift so that coefficients satisfy a_k = a_{-k}
    lo, hi = min(poly), max(poly)
    shift = -(lo + hi) // 2
    assert (lo + hi) % 2 == 0
    out = {a + shift: coef for a, coef in poly.items() if coef}
    # overall sign convention: positive leading coefficient away from 0
    top = max(out)
    if out[top] < 0:
        out = {a: -coef for a, coef in out.items()}
    return out


def twist_knot_alexander(n: int) -> dict[int, int]:
    """Oracle for the twist-knot family: two-bridge fraction (2n+1)/(n+1)."""
    return two_bridge_alexander(2 * n + 1, n + 1)


# -- translate enumeration -----------------------------------------------------


def enumerate_hat_A_elements(c: FilteredComplex, s: int, span: int = 20) -> list[tuple[str, int]]:
    """Brute force: translates U^k g with max(-k, A - k - s) = 0."""
    out = []
    for g in c.generators:
        for k in range(-span, span + 1):
            if max(-k, g.alexander - k - s) == 0:
                out.append((g.name, k))
    return out


def enumerate_hat_B_elements(c: FilteredComplex, span: int = 20) -> list[tuple[str, int]]:
    """Brute force: translates U^k g with i = -k = 0."""
    return [(g.name, 0) for g in c.generators]
