"""Exact solving of x * M = b over Q(z) by fraction-free (Bareiss) elimination.

Each equation (a column of ``M``) is scaled into Z[z] first; scaling an
equation by a nonzero element of Q(z) leaves the solution set unchanged.
One elimination of the transposed system serves the rank test, the
consistency test and the solve.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Sequence

from flint import fmpq_poly, fmpz_poly

from .scalar import RatFun, rf_normalize

_FZERO = fmpz_poly([])


@dataclass
class LeftSolveResult:
    rank: int
    nunknowns: int
    consistent: list          # one flag per right-hand side
    solutions: list | None    # one list of RatFun per right-hand side, when unique and consistent

    @property
    def full_rank(self) -> bool:
        return self.rank == self.nunknowns

    @property
    def all_consistent(self) -> bool:
        return all(self.consistent)


def _scaled_equation(col: Sequence[RatFun], rhs: Sequence[RatFun]) -> list:
    """Clear denominators of one equation; returns fmpz_poly entries."""
    entries = list(col) + list(rhs)
    den = fmpq_poly([1])
    for e in entries:
        if not e.is_zero() and not e.den.is_one():
            den = den * (e.den // den.gcd(e.den))
    polys = []
    qden = 1
    for e in entries:
        if e.is_zero():
            polys.append(None)
            continue
        p = e.num * (den // e.den)
        polys.append(p)
        qden = lcm(qden, int(p.denom()))
    out = []
    for p in polys:
        if p is None:
            out.append(_FZERO)
        else:
            out.append(fmpz_poly((p * qden).numer()))
    return out


def _key(p: fmpz_poly):
    return (p.degree(), p.height_bits())


def solve_left(M: Sequence[Sequence[RatFun]], B: Sequence[Sequence[RatFun]]) -> LeftSolveResult:
    """Solve x * M = b for every row b of ``B``.

    ``M`` is N x C (N unknowns, C equations) and ``B`` is k x C.
    """
    N = len(M)
    C = len(M[0]) if N else len(B[0])
    k = len(B)
    rows = []
    for c in range(C):
        col = [M[i][c] for i in range(N)]
        rhs = [B[j][c] for j in range(k)]
        rows.append(_scaled_equation(col, rhs))

    width = N + k
    prev = fmpz_poly([1])
    r = 0
    pivcols = []
    for c in range(N):
        if r == len(rows):
            break
        cands = [i for i in range(r, len(rows)) if not rows[i][c].is_zero()]
        if not cands:
            continue
        p = min(cands, key=lambda i: _key(rows[i][c]))
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        a = prow[c]
        for i in range(r + 1, len(rows)):
            row = rows[i]
            b = row[c]
            if b.is_zero():
                if prev.is_one() and a.is_one():
                    continue
                for j in range(c + 1, width):
                    x = row[j]
                    if not x.is_zero():
                        row[j] = (a * x) // prev
            else:
                for j in range(c + 1, width):
                    x = row[j]
                    y = prow[j]
                    if y.is_zero():
                        if not x.is_zero():
                            row[j] = (a * x) // prev
                    elif x.is_zero():
                        row[j] = -(b * y) // prev
                    else:
                        row[j] = (a * x - b * y) // prev
                row[c] = _FZERO
        prev = a
        pivcols.append(c)
        r += 1

    rank = r
    consistent = [all(rows[i][N + j].is_zero() for i in range(rank, len(rows))) for j in range(k)]
    solutions = None
    if rank == N and all(consistent):
        det = rows[N - 1][N - 1] if N else fmpz_poly([1])
        solutions = []
        for j in range(k):
            y = [None] * N
            for i in range(N - 1, -1, -1):
                acc = det * rows[i][N + j]
                for t in range(i + 1, N):
                    if not rows[i][t].is_zero() and not y[t].is_zero():
                        acc = acc - rows[i][t] * y[t]
                q, rem = divmod(acc, rows[i][i])
                if not rem.is_zero():
                    raise ArithmeticError("inexact fraction-free back substitution")
                y[i] = q
            qdet = fmpq_poly(det)
            solutions.append([rf_normalize(fmpq_poly(yi), qdet) for yi in y])
    return LeftSolveResult(rank, N, consistent, solutions)
