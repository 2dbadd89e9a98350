"""Hermite forms of matrices of Ore polynomials.

Two independent routes:

* :func:`hermite_naive` - Euclidean elimination with 2x2 GCRD transforms
  followed by reduction of the entries above each pivot. Exponential in the
  worst case but simple; used as the cross-checking oracle.
* :func:`hermite_given_degrees` / :func:`find_degree_sequence` - for a square
  full-rank input, write ``T A = H`` as one linear system over Q(z) for a
  guessed vector of diagonal degrees and classify the guess from the rank and
  consistency of that system.

:func:`hermite` dispatches on shape and rank and always verifies its result.
"""

from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass, field
from typing import Sequence

from .detform import ddet_degree_ore, is_unimodular
from .euclid import gcrd_ext
from .linsolve import solve_left
from .matrix import OreMatrix
from .ore import OrePoly
from .scalar import NEG_INF, ONE, ZERO

log = logging.getLogger(__name__)


class HermiteError(ArithmeticError):
    """The linear-system route could not produce a verified Hermite form."""


@dataclass(frozen=True)
class HermitePair:
    H: OreMatrix
    U: OreMatrix


# ---------------------------------------------------------------------------
# shape predicates


def leading_columns(H: OreMatrix) -> list:
    """Column of the first nonzero entry of each row (None for zero rows)."""
    out = []
    for row in H.rows:
        out.append(next((j for j, e in enumerate(row) if not e.is_zero()), None))
    return out


def hermite_shape_checks(H: OreMatrix) -> dict:
    """Conditions (i)-(iv) of the row Hermite form, evaluated separately."""
    leads = leading_columns(H)
    r = sum(1 for c in leads if c is not None)
    zero_rows_last = all(c is not None for c in leads[:r]) and all(c is None for c in leads[r:])
    monic = all(H.rows[i][c].is_monic() for i, c in enumerate(leads) if c is not None)
    below = True
    above = True
    for i, c in enumerate(leads):
        if c is None:
            continue
        for k in range(i + 1, H.nrows):
            if not H.rows[k][c].is_zero():
                below = False
        dc = H.rows[i][c].degree
        for k in range(i):
            if not H.rows[k][c].is_zero() and H.rows[k][c].degree >= dc:
                above = False
    return {
        "zero_rows_last": zero_rows_last,
        "leading_monic": monic,
        "zeros_below_leading": below,
        "reduced_above_leading": above,
    }


def is_hermite(H: OreMatrix) -> bool:
    return all(hermite_shape_checks(H).values())


# ---------------------------------------------------------------------------
# naive elimination


def _combine(rows, i, j, u, v, s, t):
    ri, rj = rows[i], rows[j]
    rows[i] = [u * a + v * b for a, b in zip(ri, rj)]
    rows[j] = [s * a + t * b for a, b in zip(ri, rj)]


def _row_axpy(rows, i, q, k):
    """row_i -= q * row_k"""
    rows[i] = [a - q * b if b else a for a, b in zip(rows[i], rows[k])]


def triangularize(A: OreMatrix, track: bool = True):
    """Unimodular P with P A upper echelon (pivots monic, above-pivot entries unreduced).

    Returns (P, T, pivot_columns); P is None when ``track`` is false.
    """
    ring = A.ring
    m, n = A.shape
    T = A.copy_rows()
    P = OreMatrix.identity(ring, m).copy_rows() if track else None
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        live = [i for i in range(r, m) if not T[i][c].is_zero()]
        if not live:
            continue
        p = min(live, key=lambda i: (T[i][c].degree, T[i][c].deg_z()))
        if p != r:
            T[r], T[p] = T[p], T[r]
            if track:
                P[r], P[p] = P[p], P[r]
        for i in range(r + 1, m):
            if T[i][c].is_zero():
                continue
            cert = gcrd_ext(T[r][c], T[i][c])
            _combine(T, r, i, cert.u, cert.v, cert.s, cert.t)
            if track:
                _combine(P, r, i, cert.u, cert.v, cert.s, cert.t)
        lc = T[r][c].lc()
        if not lc.is_one():
            inv = lc.inv()
            T[r] = [e.scale_left(inv) for e in T[r]]
            if track:
                P[r] = [e.scale_left(inv) for e in P[r]]
        pivots.append(c)
        r += 1
    Pm = OreMatrix(P, ring, m) if track else None
    return Pm, OreMatrix(T, ring, n), pivots


def _reduce_above(T: list, U: list, pivots: Sequence[int]):
    for r, c in enumerate(pivots):
        piv = T[r][c]
        for i in range(r):
            e = T[i][c]
            if e.is_zero() or e.degree < piv.degree:
                continue
            q, _ = e.right_divmod(piv)
            _row_axpy(T, i, q, r)
            _row_axpy(U, i, q, r)


def hermite_naive(A: OreMatrix):
    """(HermitePair, rank) by Euclidean elimination."""
    P, T, pivots = triangularize(A)
    Trows, Urows = T.copy_rows(), P.copy_rows()
    _reduce_above(Trows, Urows, pivots)
    H = OreMatrix(Trows, A.ring, A.ncols)
    U = OreMatrix(Urows, A.ring, A.nrows)
    return HermitePair(H, U), len(pivots)


# ---------------------------------------------------------------------------
# linear-system route


@dataclass
class ReducedSystem:
    """``T_hat * A_tilde = G_tilde`` over Q(z).

    Rows of ``A_tilde`` are indexed by (i, k): the coefficient of D^k in T_{*i}.
    Columns are the retained (j, k) pairs, k >= d_j.
    """

    A_tilde: list
    G_tilde: list
    columns: list
    rho: int
    dmax: int
    degrees: tuple

    @property
    def nunknowns(self) -> int:
        return len(self.A_tilde)


def _dmax(A: OreMatrix) -> int:
    d = A.deg()
    return 0 if d == NEG_INF else d


def shifted_blocks(A: OreMatrix, rho: int):
    """blocks[i][j][k] = D^k * A_ij for k = 0..rho."""
    return [[A.rows[i][j].d_powers(rho) for j in range(A.ncols)] for i in range(A.nrows)]


def build_reduced_system(A: OreMatrix, d: Sequence[int], dmax: int | None = None, blocks=None,
                         rho: int | None = None) -> ReducedSystem:
    """``rho`` defaults to (n-1)*dmax + max(d); any smaller value that still
    bounds deg T can be passed explicitly."""
    n = A.nrows
    if A.ncols != n:
        raise ValueError("the linear-system route needs a square matrix")
    if len(d) != n or any(x < 0 for x in d):
        raise ValueError("degree sequence must have n non-negative entries")
    if dmax is None:
        dmax = _dmax(A)
    if rho is None:
        rho = (n - 1) * dmax + max(d)
    elif rho < 0:
        raise ValueError("rho must be non-negative")
    width = rho + dmax
    if blocks is None or len(blocks[0][0]) <= rho:
        blocks = shifted_blocks(A, rho)
    columns = [(j, k) for j in range(n) for k in range(d[j], width + 1)]
    A_tilde = []
    for i in range(n):
        for k in range(rho + 1):
            A_tilde.append([blocks[i][j][k].coeff(l) for (j, l) in columns])
    G_tilde = [[ONE if (j == i and l == d[i]) else ZERO for (j, l) in columns] for i in range(n)]
    return ReducedSystem(A_tilde, G_tilde, columns, rho, dmax, tuple(d))


class Outcome(enum.Enum):
    EXACT = "exact"
    STRICTLY_DOMINATES = "strictly_dominates"   # guess >= true degrees, guess != true
    NOT_DOMINATES = "not_dominates"             # guess is not >= true degrees


@dataclass(frozen=True)
class Trichotomy:
    outcome: Outcome
    pair: HermitePair | None = None

    @property
    def consistent(self) -> bool:
        return self.outcome is not Outcome.NOT_DOMINATES


def _assemble_T(A: OreMatrix, sol: list, rho: int) -> OreMatrix:
    n = A.nrows
    rows = []
    for i in range(n):
        x = sol[i]
        rows.append([OrePoly(x[j * (rho + 1):(j + 1) * (rho + 1)], A.ring) for j in range(n)])
    return OreMatrix(rows, A.ring, n)


def hermite_given_degrees(A: OreMatrix, d: Sequence[int], *, dmax: int | None = None, blocks=None,
                          rho: int | None = None, refine: bool = True) -> Trichotomy:
    """Classify the guess ``d`` against the true diagonal degrees of the Hermite form.

    Inconsistent system: ``d`` is not componentwise >= the true degrees.
    Consistent but not uniquely solvable: ``d`` strictly dominates them.
    Unique solution: ``d`` is exact and ``T`` is the unimodular multiplier.

    The second rule alone misreads guesses that exceed h in one slot and fall
    short in a later one. ``refine`` settles those with extra solves; the
    degree search turns it off because its probes never take that form.
    """
    sysm = build_reduced_system(A, d, dmax, blocks, rho)
    res = solve_left(sysm.A_tilde, sysm.G_tilde)
    if not res.all_consistent:
        return Trichotomy(Outcome.NOT_DOMINATES)
    if not res.full_rank:
        if not refine or _triangular_consistent(A, sysm, blocks):
            return Trichotomy(Outcome.STRICTLY_DOMINATES)
        return Trichotomy(Outcome.NOT_DOMINATES)
    U = _assemble_T(A, res.solutions, sysm.rho)
    H = U @ A
    if not is_hermite(H):
        # A unique solution of non-Hermite shape happens for guesses such as
        # (1,1,1) against (1,0,2): not dominating, yet not short on a prefix.
        # Over a full-rank A that can only mean the guess is not >= h.
        if ddet_degree_ore(A) == NEG_INF:
            raise HermiteError("rank deficiency or bad input")
        return Trichotomy(Outcome.NOT_DOMINATES)
    return Trichotomy(Outcome.EXACT, HermitePair(H, U))


def _triangular_consistent(A: OreMatrix, sysm: ReducedSystem, blocks) -> bool:
    """Is each row of T still solvable once (TA)_ij = 0 is imposed for all j < i?

    The retained columns leave the low coefficients below the diagonal free,
    so a consistent but underdetermined system may still stem from a guess
    that is not >= h. With the zeros enforced a solution is a Hermite-shaped
    set of lattice rows, which exists exactly when d >= h.
    """
    n, rho, d = A.nrows, sysm.rho, sysm.degrees
    if blocks is None or len(blocks[0][0]) <= rho:
        blocks = shifted_blocks(A, rho)
    for i in range(1, n):
        extra = [(j, l) for j in range(i) for l in range(d[j])]
        if not extra:
            continue
        M = [row + [blocks[r // (rho + 1)][j][r % (rho + 1)].coeff(l) for (j, l) in extra]
             for r, row in enumerate(sysm.A_tilde)]
        g = sysm.G_tilde[i] + [ZERO] * len(extra)
        if not solve_left(M, [g]).all_consistent:
            return False
    return True


@dataclass(frozen=True)
class DegreeSequence:
    d: tuple

    def __iter__(self):
        return iter(self.d)

    def __len__(self):
        return len(self.d)


def _search(A: OreMatrix):
    """Coordinate-wise binary search; returns (degrees, HermitePair).

    deg Ddet(A) equals h_1 + ... + h_n (U is unimodular and H triangular),
    so once a prefix is known every later h_j is at most what remains of
    that sum. This caps the bracket and the suffix below n*dmax, makes the
    last coordinate free, and flags singular input before any solve.
    """
    n = A.nrows
    dmax = _dmax(A)
    total = ddet_degree_ore(A)
    if total == NEG_INF:
        raise HermiteError("input is not of full rank")
    cap = n * dmax
    blocks = shifted_blocks(A, (n - 1) * dmax + min(cap, total))
    found = []
    probes = {}

    def probe(seq):
        seq = tuple(seq)
        if seq not in probes:
            probes[seq] = hermite_given_degrees(A, seq, dmax=dmax, blocks=blocks, refine=False)
            log.debug("probe %s -> %s", seq, probes[seq].outcome.value)
        return probes[seq]

    for k in range(n - 1):
        rest = total - sum(found)
        hi = min(cap, rest)
        suffix = [hi] * (n - k - 1)
        lo = 0
        # hi is a valid upper bound, so only probes below it are needed
        while lo < hi:
            mid = (lo + hi) // 2
            t = probe(found + [mid] + suffix)
            if t.outcome is Outcome.EXACT:
                return tuple(found + [mid] + suffix), t.pair
            if t.consistent:
                hi = mid
            else:
                lo = mid + 1
        found.append(lo)
    found.append(total - sum(found))
    t = probe(found)
    if t.outcome is not Outcome.EXACT:
        raise HermiteError("degree search ended without a unique solution")
    return tuple(found), t.pair


def find_degree_sequence(A: OreMatrix) -> DegreeSequence:
    if A.nrows != A.ncols:
        raise ValueError("degree search needs a square matrix")
    return DegreeSequence(_search(A)[0])


def hermite_square(A: OreMatrix) -> HermitePair:
    """Linear-system route for square full-rank input."""
    if A.nrows == 0:
        return HermitePair(A, A)
    return _search(A)[1]


# ---------------------------------------------------------------------------
# dispatcher


def _block_diag_identity(Uc: OreMatrix, m: int) -> OreMatrix:
    ring = Uc.ring
    r = Uc.nrows
    one, zero = OrePoly.one(ring), OrePoly.zero(ring)
    rows = [list(Uc.rows[i]) + [zero] * (m - r) for i in range(r)]
    rows += [[zero] * r + [one if j == i else zero for j in range(m - r)] for i in range(m - r)]
    return OreMatrix(rows, ring, m)


def hermite_wide(A: OreMatrix) -> HermitePair:
    """Full row rank, m < n: lexicographically first column set of full rank."""
    m, n = A.shape
    for cols in itertools.combinations(range(n), m):
        sub = A.columns(cols)
        _, _, piv = triangularize(sub, track=False)
        if len(piv) < m:
            continue
        U = hermite_square(sub).U
        H = U @ A
        if is_hermite(H):
            return HermitePair(H, U)
    raise HermiteError("no column subset yields a Hermite form; input is not of full row rank")


def _hermite_full_row_rank(A: OreMatrix) -> HermitePair:
    if A.nrows == A.ncols:
        return hermite_square(A)
    return hermite_wide(A)


def hermite(A: OreMatrix) -> HermitePair:
    """Hermite form H and unimodular U with U A = H, for any shape and rank."""
    m, n = A.shape
    pair = None
    if m == n and m > 0:
        try:
            pair = hermite_square(A)
        except HermiteError as exc:
            log.info("square linear-system route failed (%s); reducing rank first", exc)
    if pair is None:
        try:
            pair = _hermite_general(A)
        except HermiteError as exc:
            log.warning("linear-system route failed (%s); using naive elimination", exc)
            pair = hermite_naive(A)[0]
    report = verify_hermite(A, pair.H, pair.U)
    if not report.ok:
        log.warning("verification failed (%s); using naive elimination", report.failed())
        pair = hermite_naive(A)[0]
    return pair


def _hermite_general(A: OreMatrix) -> HermitePair:
    m, n = A.shape
    ring = A.ring
    if m == 0 or n == 0:
        return HermitePair(A, OreMatrix.identity(ring, m))
    P, T, piv = triangularize(A)
    r = len(piv)
    if r == 0:
        return HermitePair(OreMatrix.zeros(ring, m, n), OreMatrix.identity(ring, m))
    if r == m:
        return _hermite_full_row_rank(A)
    core = OreMatrix(T.rows[:r], ring, n)
    Uc = _hermite_full_row_rank(core).U
    U = _block_diag_identity(Uc, m) @ P
    return HermitePair(U @ A, U)


# ---------------------------------------------------------------------------
# verification


@dataclass
class VerificationReport:
    checks: dict = field(default_factory=dict)
    rank: int = 0
    diag_degrees: tuple = ()

    @property
    def ok(self) -> bool:
        return all(v is not False for v in self.checks.values())

    def failed(self) -> list:
        return [k for k, v in self.checks.items() if v is False]


def verify_hermite(A: OreMatrix, H: OreMatrix, U: OreMatrix) -> VerificationReport:
    """Check U A = H, the Hermite shape, unimodularity of U and the degree bounds.

    Degree bounds only apply to square full-rank input; they are reported as
    None otherwise.
    """
    rep = VerificationReport()
    m, n = A.shape
    conformable = U.shape == (m, m) and H.shape == (m, n)
    rep.checks["conformable"] = conformable
    if not conformable:
        return rep
    rep.checks["product"] = (U @ A) == H
    rep.checks.update(hermite_shape_checks(H))
    rep.checks["unimodular"] = is_unimodular(U)
    leads = leading_columns(H)
    rep.rank = sum(1 for c in leads if c is not None)
    rep.diag_degrees = tuple(H.rows[i][c].degree for i, c in enumerate(leads) if c is not None)
    square_full = m == n and rep.rank == n
    dmax = _dmax(A)
    if square_full:
        bound = n * dmax
        rep.checks["diag_degree_sum"] = sum(rep.diag_degrees) <= bound
        rep.checks["row_degree_sums"] = all(
            sum(e.degree for e in row if not e.is_zero()) <= bound for row in H.rows
        )
        rep.checks["u_degree"] = all(
            e.is_zero() or e.degree <= (n - 1) * dmax for row in U.rows for e in row
        )
    else:
        rep.checks["diag_degree_sum"] = None
        rep.checks["row_degree_sums"] = None
        rep.checks["u_degree"] = None
    return rep


# ---------------------------------------------------------------------------
# z-degree bound


def hadamard_z_bound(A: OreMatrix, d: Sequence[int]) -> int:
    """Explicit Cramer/Hadamard bound on deg_z of the coefficients of U and H.

    With every equation of the expanded system scaled into Q[z], the solution
    has numerators and denominators that are N x N minors (N unknowns), so
    their degree is at most N * e where e is the largest column degree; one
    further product with a column of the expanded matrix gives the bound for
    H. Returns (N + 1) * e.
    """
    n = A.nrows
    dmax = _dmax(A)
    rho = (n - 1) * dmax + max(d)
    blocks = shifted_blocks(A, rho)
    e = 0
    for j in range(n):
        for l in range(rho + dmax + 1):
            col = [blocks[i][j][k].coeff(l) for i in range(n) for k in range(rho + 1)]
            den = None
            for x in col:
                if not x.is_zero() and not x.den.is_one():
                    den = x.den if den is None else den * (x.den // den.gcd(x.den))
            degs = []
            for x in col:
                if x.is_zero():
                    continue
                nd = x.num.degree()
                if den is not None:
                    nd += den.degree() - x.den.degree()
                degs.append(nd)
            if degs:
                cdeg = max(max(degs), den.degree() if den is not None else 0)
                e = max(e, cdeg)
    N = n * (rho + 1)
    return (N + 1) * e
