"""Dense linear algebra over F and over F[t].

A FieldMatrix is a list of rows of field encodings; a PolyMatrix is a list
of rows of polynomials (see :mod:`chroma.poly`).
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from . import poly as P
from .field import FieldCtx

FieldMatrix = list[list[int]]
PolyMatrix = list[list[P.Poly]]


def shape(M) -> tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def transpose(M):
    return [list(col) for col in zip(*M)]


def matmul(F: FieldCtx, A: FieldMatrix, B: FieldMatrix) -> FieldMatrix:
    out = []
    for row in A:
        new = []
        for col in zip(*B):
            acc = 0
            for x, y in zip(row, col):
                acc = F.add(acc, F.mul(x, y))
            new.append(acc)
        out.append(new)
    return out


def vecmat(F: FieldCtx, v, M: FieldMatrix) -> list[int]:
    return matmul(F, [list(v)], M)[0] if M else []


def rref(F: FieldCtx, M: FieldMatrix) -> tuple[FieldMatrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivot choice: first nonzero entry scanning down the column.
    """
    A = [list(r) for r in M]
    rows, cols = shape(A)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = next((i for i in range(r, rows) if A[i][c]), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, x) for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F: FieldCtx, M: FieldMatrix) -> int:
    return len(rref(F, M)[1])


def _null_space(F: FieldCtx, M: FieldMatrix, ncols: int) -> list[list[int]]:
    """Basis of {v : M v = 0}, one vector per free column (free entry = 1)."""
    R, pivots = rref(F, M) if M else ([], [])
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, pc in zip(R, pivots):
            v[pc] = F.neg(row[free])
        basis.append(v)
    return basis


def left_kernel(F: FieldCtx, M: FieldMatrix) -> list[list[int]]:
    """Basis of {c : c M = 0}; empty iff M has full row rank."""
    rows, cols = shape(M)
    if cols == 0:
        return [[int(i == j) for j in range(rows)] for i in range(rows)]
    return _null_space(F, transpose(M), rows)


def det(F: FieldCtx, M: FieldMatrix) -> int:
    n, m = shape(M)
    if n != m:
        raise ValueError(f"determinant of a non-square {n}x{m} matrix")
    A = [list(r) for r in M]
    d = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if A[i][c]), None)
        if pr is None:
            return 0
        if pr != c:
            A[c], A[pr] = A[pr], A[c]
            d = F.neg(d)
        d = F.mul(d, A[c][c])
        inv = F.inv(A[c][c])
        for i in range(c + 1, n):
            if A[i][c]:
                f = F.mul(A[i][c], inv)
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[c])]
    return d


def det_poly(F: FieldCtx, M: PolyMatrix) -> P.Poly:
    """Determinant over F[t] by Laplace expansion along rows.

    Memoized on the set of remaining columns, so the cost is O(n 2^n)
    polynomial products instead of n!.
    """
    n, m = shape(M)
    if n != m:
        raise ValueError(f"determinant of a non-square {n}x{m} matrix")
    if n == 0:
        return P.ONE

    @lru_cache(maxsize=None)
    def minor(row: int, cols: tuple[int, ...]) -> P.Poly:
        if row == n:
            return P.ONE
        acc = P.ZERO
        for k, c in enumerate(cols):
            entry = M[row][c]
            if not entry:
                continue
            sub = minor(row + 1, cols[:k] + cols[k + 1:])
            term = P.mul(F, entry, sub)
            acc = P.sub(F, acc, term) if k % 2 else P.add(F, acc, term)
        return acc

    return minor(0, tuple(range(n)))


def submatrix(M, cols) -> list[list]:
    return [[row[c] for c in cols] for row in M]


def major_cofactors(F: FieldCtx, M: PolyMatrix) -> list[P.Poly]:
    """delta_0..delta_{m-n}: columns 0..n-2 together with column n-1+i."""
    n, m = shape(M)
    if n > m:
        raise ValueError(f"major cofactors need rows <= cols, got {n}x{m}")
    head = list(range(n - 1))
    return [det_poly(F, submatrix(M, head + [n - 1 + i])) for i in range(m - n + 1)]


def maximal_minors(F: FieldCtx, M: PolyMatrix) -> list[P.Poly]:
    """All n x n minors, column subsets in lexicographic order."""
    n, m = shape(M)
    if n > m:
        raise ValueError(f"maximal minors need rows <= cols, got {n}x{m}")
    return [det_poly(F, submatrix(M, cols)) for cols in itertools.combinations(range(m), n)]


def evaluate_matrix(F: FieldCtx, M: PolyMatrix, t: int) -> FieldMatrix:
    return [[P.evaluate(F, e, t) for e in row] for row in M]


def const_matrix(M: FieldMatrix) -> PolyMatrix:
    return [[P.const(x) for x in row] for row in M]
