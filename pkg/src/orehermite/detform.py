"""Quasideterminants, inverses over the skew field, and the Dieudonne determinant degree.

Matrices over the skew field are plain lists of lists of :class:`SkewFraction`.
Indices are 0-based throughout.
"""

from __future__ import annotations

from typing import Sequence

from .matrix import OreMatrix
from .scalar import NEG_INF
from .skewfrac import SkewFraction


class _Undefined:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "UNDEFINED"

    def __bool__(self):
        return False


UNDEFINED = _Undefined()

SkewMatrix = list


class SingularMatrixError(ArithmeticError):
    pass


def embed(A: OreMatrix) -> SkewMatrix:
    return [[SkewFraction.from_ore(e) for e in row] for row in A.rows]


def _square(M: Sequence[Sequence]) -> int:
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("quasideterminants need a square matrix")
    return n


def quasidet(M: SkewMatrix, p: int, q: int, memo: dict | None = None):
    """The (p, q) quasideterminant, or UNDEFINED.

    A summand whose inner quasideterminant is undefined or zero is skipped
    (a zero there cannot be inverted and only occurs when the minor is
    singular); if no summand survives the result is UNDEFINED.
    """
    n = _square(M)
    if not (0 <= p < n and 0 <= q < n):
        raise IndexError("quasideterminant index out of range")
    if memo is None:
        memo = {}
    return _qd(M, tuple(range(n)), tuple(range(n)), p, q, memo)


def _qd(M, rows: tuple, cols: tuple, p: int, q: int, memo: dict):
    key = (rows, cols, p, q)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if len(rows) == 1:
        val = M[p][q]
    else:
        sub_rows = tuple(r for r in rows if r != p)
        sub_cols = tuple(c for c in cols if c != q)
        val = M[p][q]
        used = False
        for i in sub_cols:
            a = M[p][i]
            for j in sub_rows:
                inner = _qd(M, sub_rows, sub_cols, j, i, memo)
                if inner is UNDEFINED or inner.is_zero():
                    continue
                used = True
                b = M[j][q]
                if a.is_zero() or b.is_zero():
                    continue
                val = val - a * inner.inv() * b
        if not used:
            val = UNDEFINED
    memo[key] = val
    return val


def quasidet_table(M: SkewMatrix) -> list:
    """All n^2 quasideterminants sharing one memo table."""
    n = _square(M)
    memo: dict = {}
    return [[quasidet(M, p, q, memo) for q in range(n)] for p in range(n)]


def _pivot_key(x: SkewFraction):
    return (x.degree(), x.num.deg_z() + x.den.deg_z())


def skew_inverse(M: SkewMatrix) -> SkewMatrix:
    """Gauss-Jordan inverse over the skew field (left row operations)."""
    n = _square(M)
    if n == 0:
        return []
    ring = M[0][0].ring
    zero, one = SkewFraction.zero(ring), SkewFraction.one(ring)
    A = [list(r) for r in M]
    B = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for c in range(n):
        cands = [r for r in range(c, n) if not A[r][c].is_zero()]
        if not cands:
            raise SingularMatrixError("matrix not invertible over skew field")
        p = min(cands, key=lambda r: _pivot_key(A[r][c]))
        A[c], A[p] = A[p], A[c]
        B[c], B[p] = B[p], B[c]
        piv_inv = A[c][c].inv()
        A[c] = [piv_inv * x if not x.is_zero() else x for x in A[c]]
        B[c] = [piv_inv * x if not x.is_zero() else x for x in B[c]]
        for r in range(n):
            if r == c or A[r][c].is_zero():
                continue
            f = A[r][c]
            A[r] = [x - f * y if not y.is_zero() else x for x, y in zip(A[r], A[c])]
            B[r] = [x - f * y if not y.is_zero() else x for x, y in zip(B[r], B[c])]
    return B


def skew_matmul(A: SkewMatrix, B: SkewMatrix) -> SkewMatrix:
    ring = A[0][0].ring
    zero = SkewFraction.zero(ring)
    out = []
    for i in range(len(A)):
        row = []
        for j in range(len(B[0])):
            acc = zero
            for k in range(len(B)):
                if not A[i][k].is_zero() and not B[k][j].is_zero():
                    acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def elimination_pivots(M: SkewMatrix) -> list:
    """Pivots u_1..u_r of Gaussian elimination with minimal-degree full pivoting."""
    n = _square(M)
    A = [list(r) for r in M]
    rows, cols = list(range(n)), list(range(n))
    pivots = []
    while rows:
        best = None
        for r in rows:
            for c in cols:
                x = A[r][c]
                if not x.is_zero():
                    k = _pivot_key(x)
                    if best is None or k < best[0]:
                        best = (k, r, c)
        if best is None:
            break
        _, pr, pc = best
        piv = A[pr][pc]
        pivots.append(piv)
        rows.remove(pr)
        cols.remove(pc)
        piv_inv = piv.inv()
        for r in rows:
            if A[r][pc].is_zero():
                continue
            f = A[r][pc] * piv_inv
            for c in cols:
                if not A[pr][c].is_zero():
                    A[r][c] = A[r][c] - f * A[pr][c]
            A[r][pc] = SkewFraction.zero(piv.ring)
    return pivots


def ddet_degree(M: SkewMatrix):
    """deg Ddet(M): sum of pivot degrees, -inf when M is singular."""
    n = _square(M)
    if n == 0:
        return 0
    pivots = elimination_pivots(M)
    if len(pivots) < n:
        return NEG_INF
    return sum(p.degree() for p in pivots)


def ddet_degree_ore(A: OreMatrix):
    """deg Ddet(A) for a polynomial matrix by Euclidean row elimination in the ring.

    Only swaps and ``row_i -= q * row_p`` are used (Ddet 1 each), so the
    determinantal degree is the sum of the diagonal degrees of the final
    triangular matrix.
    """
    n = A.nrows
    if n != A.ncols:
        raise ValueError("ddet_degree needs a square matrix")
    rows = A.copy_rows()
    total = 0
    for c in range(n):
        while True:
            live = [r for r in range(c, n) if not rows[r][c].is_zero()]
            if not live:
                return NEG_INF
            p = min(live, key=lambda r: (rows[r][c].degree, rows[r][c].deg_z()))
            rows[c], rows[p] = rows[p], rows[c]
            piv = rows[c][c]
            done = True
            for r in range(c + 1, n):
                x = rows[r][c]
                if x.is_zero():
                    continue
                q, rem = x.right_divmod(piv)
                rows[r] = [e - q * f if f else e for e, f in zip(rows[r], rows[c])]
                if not rem.is_zero():
                    done = False
            if done:
                break
        total += rows[c][c].degree
    return total


def is_unimodular(U: OreMatrix) -> bool:
    if U.nrows != U.ncols:
        return False
    return ddet_degree_ore(U) == 0
