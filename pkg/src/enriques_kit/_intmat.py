"""Exact integer and rational matrix routines.

Matrices are plain lists of rows. Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def bilinear(gram: Sequence[Sequence[int]], x: Sequence[int], y: Sequence[int]) -> int:
    return sum(xi * sum(g * yj for g, yj in zip(row, y)) for xi, row in zip(x, gram) if xi)


def congruence(gram: Sequence[Sequence], basis_cols: Sequence[Sequence]) -> list[list]:
    """Gram matrix of the vectors ``basis_cols`` (each a coordinate vector)."""
    return [[bilinear(gram, u, v) for v in basis_cols] for u in basis_cols]


def columns(a: Sequence[Sequence]) -> list[list]:
    return transpose(a)


def from_columns(cols: Sequence[Sequence]) -> list[list]:
    return transpose(cols)


def determinant(a: Sequence[Sequence]) -> Fraction | int:
    """Bareiss fraction-free elimination; exact for integer input."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rational_inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, V)`` with ``U @ a @ V == D`` and ``U``, ``V`` unimodular.

    The pivot is always the nonzero entry of least absolute value in the
    remaining block, so the output is deterministic. Diagonal entries are
    nonnegative and each divides the next.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    A = [list(map(int, row)) for row in a]
    U = identity(m)
    V = identity(n)
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < best[0]):
                    best = (abs(A[i][j]), i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            A[t], A[pi] = A[pi], A[t]
            U[t], U[pi] = U[pi], U[t]
        if pj != t:
            for row in A:
                row[t], row[pj] = row[pj], row[t]
            for row in V:
                row[t], row[pj] = row[pj], row[t]
        p = A[t][t]
        clean = True
        for i in range(t + 1, m):
            q = A[i][t] // p
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                U[i] = [x - q * y for x, y in zip(U[i], U[t])]
            if A[i][t]:
                clean = False
        for j in range(t + 1, n):
            q = A[t][j] // p
            if q:
                for row in A:
                    row[j] -= q * row[t]
                for row in V:
                    row[j] -= q * row[t]
            if A[t][j]:
                clean = False
        if not clean:
            continue
        bad = next(
            (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
            None,
        )
        if bad is not None:
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
            U[t] = [x + y for x, y in zip(U[t], U[bad])]
            continue
        if p < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


def integer_kernel(a: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Basis (as coordinate vectors) of ``{x in Z^n : a x = 0}``.

    The basis spans a saturated sublattice: it comes from the trailing columns
    of a unimodular transform.
    """
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    if not a:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    D, _, V = smith_normal_form(a)
    rank = sum(1 for i in range(min(len(D), n)) if D[i][i] != 0)
    basis = [[V[i][j] for i in range(n)] for j in range(rank, n)]
    return hermite_rows(basis)


def hermite_rows(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of a full-row-rank integer matrix.

    Used to give sublattice bases a canonical, usually small, shape.
    """
    H = [list(r) for r in rows]
    k = len(H)
    if k == 0:
        return []
    n = len(H[0])
    r = 0
    for c in range(n):
        if r == k:
            break
        while True:
            nz = [i for i in range(r, k) if H[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[i0] = H[i0], H[r]
            done = True
            for i in range(r + 1, k):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                    if H[i][c]:
                        done = False
            if done:
                break
        if r < k and H[r][c] != 0:
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
            for i in range(r):
                q = H[i][c] // H[r][c]
                if q:
                    H[i] = [x - q * y for x, y in zip(H[i], H[r])]
            r += 1
    return H


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def gf2_left_kernel(a: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of ``{e in F_2^m : e^T a = 0 mod 2}`` for an ``m x n`` matrix."""
    m = len(a)
    n = len(a[0]) if m else 0
    # rows of the augmented system: transpose(a) | I is wrong orientation;
    # solve a^T e = 0 by eliminating on a^T.
    rows = [[a[i][j] & 1 for i in range(m)] for j in range(n)]
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(n):
            if i != r and rows[i][c]:
                rows[i] = [x ^ y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for f in free:
        e = [0] * m
        e[f] = 1
        for i, pc in enumerate(pivots):
            if rows[i][f]:
                e[pc] = 1
        basis.append(e)
    return basis
