"""Exact integer/rational linear algebra on small dense matrices."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

Matrix = List[List[int]]


def bareiss_det(M: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination; exact for integer matrices."""
    n = len(M)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rational_det(M: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(M)
    a = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                for j in range(c, n):
                    a[r][j] -= f * a[c][j]
    return det


def matmul(A: Matrix, B: Matrix) -> Matrix:
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(m)) for j in range(p)] for i in range(n)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matrix_powers(A: Matrix, dmax: int) -> List[Matrix]:
    out = [identity(len(A))]
    for _ in range(dmax):
        out.append(matmul(out[-1], A))
    return out


def charpoly_faddeev(A: Matrix) -> List[int]:
    """det(tI - A) in ascending powers, by Faddeev-LeVerrier with exact integer division."""
    n = len(A)
    c = [0] * (n + 1)
    c[n] = 1
    M = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        AM = matmul(A, M) if k > 1 else [[0] * n for _ in range(n)]
        M = [[AM[i][j] + (c[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        AMk = matmul(A, M)
        tr = sum(AMk[i][i] for i in range(n))
        assert tr % k == 0
        c[n - k] = -tr // k
    return c


def laplacian_minor_det(n: int, arcs, root: int) -> int:
    """Arborescences oriented towards ``root`` (Matrix-Tree on the out-degree Laplacian).

    For balanced digraphs this equals the count oriented away from the root.
    """
    L = [[0] * (n + 1) for _ in range(n + 1)]
    for a, b in arcs:
        L[a][a] += 1
        L[a][b] -= 1
    verts = sorted({v for arc in arcs for v in arc} - {root})
    return bareiss_det([[L[i][j] for j in verts] for i in verts])


def interpolate(xs: Sequence[int], ys: Sequence) -> List[Fraction]:
    """Ascending coefficients of the polynomial through the points (Lagrange)."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for a in range(len(basis) - 1):
                basis[a] -= xs[j] * basis[a + 1]
            denom *= xs[i] - xs[j]
        for a in range(n):
            coeffs[a] += Fraction(ys[i]) / denom * basis[a]
    return coeffs


def poly_divmod(num: Sequence[Fraction], den: Sequence[Fraction]):
    """Exact long division of ascending-coefficient polynomials."""
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    r = list(num)
    for i in range(len(num) - len(den), -1, -1):
        c = r[i + len(den) - 1] / den[-1]
        q[i] = c
        for j, d in enumerate(den):
            r[i + j] -= c * d
    while r and r[-1] == 0:
        r.pop()
    return q, r
