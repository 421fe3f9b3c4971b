"""Exact Gaussian elimination over Q(w) for small dense systems."""
from __future__ import annotations

from .algebra import Coefficient


def rref(rows: list, ncols: int) -> tuple:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [[Coefficient.coerce(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: list, ncols: int) -> list:
    """Basis of {x : rows . x = 0}, each vector normalized by its free slot."""
    if not rows:
        return [[Coefficient(1 if i == j else 0) for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Coefficient(0)] * ncols
        x[f] = Coefficient(1)
        for row, p in zip(m, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def rank(rows: list, ncols: int) -> int:
    return len(rref(rows, ncols)[1]) if rows else 0
