import itertools
import random

import pytest

from corpus import RINGS, load, rand_full_rank, rand_matrix, rand_poly
from goldens import SAMPLE_A_H, SAMPLE_B_H, SAMPLE_B_T
from orehermite.detform import embed, is_unimodular, skew_inverse
from orehermite.euclid import gcrd_ext
from orehermite.hermite import (
    HermiteError, Outcome, build_reduced_system, find_degree_sequence, hadamard_z_bound, hermite,
    hermite_given_degrees, hermite_naive, is_hermite, leading_columns, verify_hermite,
)
from orehermite.matrix import OreMatrix
from orehermite.ore import OrePoly
from orehermite.scalar import ZERO, RatFun

DIFF = RINGS["differential"]


@pytest.fixture(scope="module")
def sample_a():
    return load("sample_a.txt")


@pytest.fixture(scope="module")
def sample_b():
    return load("sample_b.txt")


# fixed samples -----------------------------------------------------------


def test_sample_a(sample_a):
    assert sample_a[0, 0].degree == 2
    pair = hermite(sample_a)
    assert pair.H == SAMPLE_A_H
    assert find_degree_sequence(sample_a).d == (1, 1, 2)
    naive, rank = hermite_naive(sample_a)
    assert rank == 3 and naive.H == SAMPLE_A_H and naive.U == pair.U
    assert verify_hermite(sample_a, pair.H, pair.U).ok


def test_sample_b(sample_b):
    res = hermite_given_degrees(sample_b, (1, 0, 2))
    assert res.outcome is Outcome.EXACT
    assert res.pair.U == SAMPLE_B_T and res.pair.H == SAMPLE_B_H
    assert hermite_given_degrees(sample_b, (1, 0, 2), rho=2).pair.U == SAMPLE_B_T
    assert find_degree_sequence(sample_b).d == (1, 0, 2)
    assert hermite_naive(sample_b)[0].H == SAMPLE_B_H


def test_sample_b_reduced_system(sample_b):
    assert build_reduced_system(sample_b, (1, 0, 2)).rho == 4
    # rho = 2 is already enough once h is known
    s = build_reduced_system(sample_b, (1, 0, 2), rho=2)
    assert s.nunknowns == 9 and len(s.columns) == 9
    z = RatFun.z()
    first = [row[0] for row in s.A_tilde]
    assert s.columns[0] == (0, 1)
    assert first == [RatFun(1), z + 1, RatFun(2), z, z * z + z + 1, 4 * z + 2, -z, -z * z - z - 1, -4 * z - 2]
    assert s.G_tilde[1][s.columns.index((1, 0))] == 1
    assert s.G_tilde[2][s.columns.index((2, 2))] == 1


@pytest.mark.parametrize("d, outcome", [
    ((1, 0, 2), Outcome.EXACT),
    ((2, 1, 2), Outcome.STRICTLY_DOMINATES),
    ((0, 0, 2), Outcome.NOT_DOMINATES),
    ((1, 0, 1), Outcome.NOT_DOMINATES),
    ((1, 1, 1), Outcome.NOT_DOMINATES),     # unique solution of non-Hermite shape
    ((2, 2, 1), Outcome.NOT_DOMINATES),     # underdetermined, yet below h in the last slot
])
def test_trichotomy_examples(sample_b, d, outcome):
    assert hermite_given_degrees(sample_b, d).outcome is outcome


def test_trichotomy_sweep(sample_b):
    h = (1, 0, 2)
    for d in itertools.product(range(4), repeat=3):
        got = hermite_given_degrees(sample_b, d).outcome
        if d == h:
            assert got is Outcome.EXACT
        elif all(a >= b for a, b in zip(d, h)):
            assert got is Outcome.STRICTLY_DOMINATES, d
        else:
            assert got is Outcome.NOT_DOMINATES, d


def test_one_by_one():
    A = OreMatrix([[OrePoly.gen(DIFF)]], DIFF)
    res = hermite_given_degrees(A, (1,))
    assert res.outcome is Outcome.EXACT and res.pair.U == OreMatrix.identity(DIFF, 1)


# reduced system ----------------------------------------------------------


@pytest.mark.parametrize("name", ["differential", "shift", "custom"])
def test_reduced_system_matches_products(name):
    R = RINGS[name]
    rng = random.Random(12)
    for n in (1, 2, 3):
        A = rand_matrix(rng, R, n, n, d=2, e=1)
        d = tuple(rng.randint(0, 2) for _ in range(n))
        s = build_reduced_system(A, d)
        rho = s.rho
        x = [RatFun.from_coeffs([rng.randint(-2, 2), rng.randint(-2, 2)]) for _ in range(n * (rho + 1))]
        T = [OrePoly(x[j * (rho + 1):(j + 1) * (rho + 1)], R) for j in range(n)]
        prod = [sum((T[i] * A[i, j] for i in range(n)), OrePoly.zero(R)) for j in range(n)]
        for c, (j, l) in enumerate(s.columns):
            acc = ZERO
            for r in range(n * (rho + 1)):
                acc = acc + x[r] * s.A_tilde[r][c]
            assert acc == prod[j].coeff(l)


# oracle equivalence ------------------------------------------------------


@pytest.mark.parametrize("name", ["differential", "shift", "qshift"])
def test_square_against_naive(name):
    R = RINGS[name]
    rng = random.Random(21)
    for _ in range(6):
        A = rand_full_rank(rng, R, rng.randint(1, 3))
        p, (q, rank) = hermite(A), hermite_naive(A)
        assert rank == A.nrows
        assert p.H == q.H and p.U == q.U


@pytest.mark.parametrize("name", ["differential", "shift"])
def test_wide_against_naive(name):
    R = RINGS[name]
    rng = random.Random(22)
    for _ in range(4):
        A = rand_matrix(rng, R, 2, 4, d=1, e=1)
        p, (q, rank) = hermite(A), hermite_naive(A)
        assert rank == 2 and p.H == q.H and p.U == q.U


def test_wide_needs_later_columns():
    D, one, zero = OrePoly.gen(DIFF), OrePoly.one(DIFF), OrePoly.zero(DIFF)
    A = OreMatrix([[zero, D, one], [zero, D, D]], DIFF)
    p = hermite(A)
    assert p.H == hermite_naive(A)[0].H
    assert leading_columns(p.H) == [1, 2]


@pytest.mark.parametrize("shape", [(4, 2), (3, 3), (3, 4)])
def test_rank_deficient_and_tall(shape):
    rng = random.Random(23)
    m, n = shape
    for name in ("differential", "shift"):
        R = RINGS[name]
        A = rand_matrix(rng, R, m, n, d=1, e=1)
        if m <= n:
            # force a dependent last row
            c = rand_poly(rng, R, 1, 1)
            A = OreMatrix(A.rows[:-1] + [[c * a for a in A.rows[0]]], R)
        p, (q, rank) = hermite(A), hermite_naive(A)
        assert p.H == q.H
        assert verify_hermite(A, p.H, p.U).ok
        assert sum(1 for c in leading_columns(p.H) if c is not None) == rank
        assert rank < m


def test_trivial_shapes():
    I = OreMatrix.identity(DIFF, 3)
    p = hermite(I)
    assert p.H == I and p.U == I
    Z = OreMatrix.zeros(DIFF, 2, 3)
    p = hermite(Z)
    assert p.H == Z and p.U == OreMatrix.identity(DIFF, 2)
    assert hermite_naive(Z)[1] == 0


def test_singular_square_search_fails():
    D = OrePoly.gen(DIFF)
    A = OreMatrix([[D, D], [D, D]], DIFF)
    with pytest.raises(HermiteError):
        find_degree_sequence(A)
    p = hermite(A)
    assert p.H == hermite_naive(A)[0].H


def test_unimodular_times_diagonal():
    rng = random.Random(31)
    for name in ("differential", "shift"):
        R = RINGS[name]
        for n in (2, 3):
            U = OreMatrix.identity(R, n)
            for _ in range(2):
                i, j = rng.sample(range(n), 2)
                c = gcrd_ext(rand_poly(rng, R, 1, 1), rand_poly(rng, R, 1, 1))
                E = OreMatrix.identity(R, n).copy_rows()
                E[i][i], E[i][j], E[j][i], E[j][j] = c.u, c.v, c.s, c.t
                U = OreMatrix(E, R) @ U
            Dg = OreMatrix([[rand_poly(rng, R, 1, 1) if a == b else OrePoly.zero(R)
                             for b in range(n)] for a in range(n)], R)
            A = U @ Dg
            naive = hermite_naive(A)[0].H
            assert find_degree_sequence(A).d == tuple(naive[k, k].degree for k in range(n))


# invariants --------------------------------------------------------------


def test_idempotent_and_left_invariant(sample_a, sample_b):
    rng = random.Random(41)
    n = 3
    for A in (sample_a, sample_b):
        H = hermite(A).H
        assert hermite(H).H == H
        i, j = rng.sample(range(n), 2)
        c = gcrd_ext(rand_poly(rng, DIFF, 1, 0), rand_poly(rng, DIFF, 1, 0))
        E = OreMatrix.identity(DIFF, n).copy_rows()
        E[i][i], E[i][j], E[j][i], E[j][j] = c.u, c.v, c.s, c.t
        perm = list(range(n))
        rng.shuffle(perm)
        Pm = OreMatrix([OreMatrix.identity(DIFF, n).rows[k] for k in perm], DIFF) @ OreMatrix(E, DIFF)
        assert is_unimodular(Pm)
        assert hermite(Pm @ A).H == H


def test_inverse_of_hermite_has_nonpositive_degrees(sample_b, sample_a):
    for A in (sample_b, sample_a):
        inv = skew_inverse(embed(hermite(A).H))
        assert all(x.is_zero() or x.degree() <= 0 for row in inv for x in row)


def test_verify_reports(sample_a):
    p = hermite(sample_a)
    rep = verify_hermite(sample_a, p.H, p.U)
    assert rep.ok and rep.rank == 3 and rep.diag_degrees == (1, 1, 2)
    bad = verify_hermite(sample_a, sample_a, OreMatrix.identity(DIFF, 3))
    assert not bad.ok and not bad.checks["zeros_below_leading"]
    rows_ = p.H.copy_rows()
    rows_[0][1] = rows_[0][1] + OrePoly.gen(DIFF, 2)
    tampered = OreMatrix(rows_, DIFF)
    rep = verify_hermite(sample_a, tampered, p.U)
    assert rep.checks["reduced_above_leading"] is False
    assert rep.checks["product"] is False
    assert not is_hermite(tampered)
    nonsquare = verify_hermite(sample_a, p.H, OreMatrix.identity(DIFF, 2))
    assert nonsquare.checks == {"conformable": False}


def test_hadamard_bound(sample_b, sample_a):
    rng = random.Random(51)
    mats = [sample_b, sample_a] + [rand_full_rank(rng, RINGS["shift"], 3) for _ in range(2)]
    for A in mats:
        d = find_degree_sequence(A).d
        p = hermite(A)
        assert max(p.H.deg_z(), p.U.deg_z()) <= hadamard_z_bound(A, d)
