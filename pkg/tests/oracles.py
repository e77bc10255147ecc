"""Independent dense oracles for the exact-algebra and homology tests.

Everything here is deliberately naive: Gaussian elimination over Fractions
for ranks, determinant expansion over minors for invariant factors.  None of
it shares code with the package's sparse kernel.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd


def dense_rank(dense):
    """Row reduction over Q."""
    mat = [[Fraction(v) for v in row] for row in dense]
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if mat[r][c]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for r in range(rows):
            if r != rank and mat[r][c]:
                f = mat[r][c] / mat[rank][c]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def dense_rank_mod(dense, p):
    mat = [[v % p for v in row] for row in dense]
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if mat[r][c] % p), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][c], -1, p)
        mat[rank] = [(v * inv) % p for v in mat[rank]]
        for r in range(rows):
            if r != rank and mat[r][c]:
                f = mat[r][c]
                mat[r] = [(a - f * b) % p for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def det_int(mat):
    """Bareiss-free fraction determinant of a small integer matrix."""
    n = len(mat)
    mat = [[Fraction(v) for v in row] for row in mat]
    sign = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if mat[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            sign = -sign
        for r in range(c + 1, n):
            f = mat[r][c] / mat[c][c]
            mat[r] = [a - f * b for a, b in zip(mat[r], mat[c])]
    out = Fraction(sign)
    for i in range(n):
        out *= mat[i][i]
    assert out.denominator == 1
    return int(out)


def invariant_factors_by_minors(dense):
    """d_1 | d_2 | ... via gcds of k x k minors."""
    rows = len(dense)
    cols = len(dense[0]) if rows else 0
    factors = []
    prev = 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rsel in combinations(range(rows), k):
            for csel in combinations(range(cols), k):
                sub = [[dense[i][j] for j in csel] for i in rsel]
                g = gcd(g, abs(det_int(sub)))
            if g == 1:
                break
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors
