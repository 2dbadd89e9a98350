"""One check per acceptance criterion; each prints a PASS/FAIL line with its tolerance."""

import itertools
import random
import time

import pytest

from corpus import RINGS, load, rand_full_rank, rand_poly
from goldens import SAMPLE_A_H, SAMPLE_B_H, SAMPLE_B_T
from orehermite.detform import (
    UNDEFINED, ddet_degree_ore, embed, quasidet_table, skew_inverse, skew_matmul,
)
from orehermite.euclid import gcld_lcrm, gcrd_ext
from orehermite.hermite import (
    Outcome, find_degree_sequence, hadamard_z_bound, hermite, hermite_given_degrees, hermite_naive,
)
from orehermite.matrix import OreMatrix

H_B = (1, 0, 2)


def _corpus():
    """50 random full-rank square matrices per ring, n <= 3, deg_D <= 2, deg_z <= 2."""
    out = []
    for name in ("differential", "shift"):
        rng = random.Random(f"acceptance-{name}")
        for _ in range(50):
            n, d, e = rng.randint(1, 3), rng.randint(1, 2), rng.randint(1, 2)
            out.append((name, rand_full_rank(rng, RINGS[name], n, d, e)))
    return out


@pytest.fixture(scope="module")
def corpus():
    t = time.perf_counter()
    rows = []
    for name, A in _corpus():
        fast = hermite(A)
        slow, rank = hermite_naive(A)
        rows.append((name, A, fast, slow, rank))
    return rows, time.perf_counter() - t


def test_sample_a_golden(report):
    t = time.perf_counter()
    pair = hermite(load("sample_a.txt"))
    dt = time.perf_counter() - t
    ok = pair.H == SAMPLE_A_H
    bad = sum(1 for i in range(3) for j in range(3) if pair.H[i, j] != SAMPLE_A_H[i, j])
    report("sample A golden H", ok and dt < 10,
           f"{9 - bad}/9 entries equal (tol: exact), {dt:.2f}s (limit 10s)")


def test_example_golden(report):
    A = load("sample_b.txt")
    t = time.perf_counter()
    res = hermite_given_degrees(A, H_B)
    seq = find_degree_sequence(A).d
    dt = time.perf_counter() - t
    ok = (res.outcome is Outcome.EXACT and res.pair.U == SAMPLE_B_T and res.pair.H == SAMPLE_B_H
          and seq == H_B)
    report("sample B golden T, H, degree sequence", ok and dt < 10,
           f"outcome={res.outcome.value}, T exact={res.pair.U == SAMPLE_B_T}, H exact={res.pair.H == SAMPLE_B_H}, "
           f"sequence={seq} (tol: exact), {dt:.2f}s (limit 10s)")


def test_oracle_equivalence(report, corpus):
    rows, dt = corpus
    mism = [k for k, (_, _, p, q, _) in enumerate(rows) if p.H != q.H or p.U != q.U]
    per_ring = {n: sum(1 for r in rows if r[0] == n) for n in ("differential", "shift")}
    report("oracle equivalence", not mism and dt < 300,
           f"{len(rows) - len(mism)}/{len(rows)} equal {per_ring} (tol: exact), {dt:.1f}s (limit 300s)")


def test_trichotomy_sweep(report):
    A = load("sample_b.txt")
    t = time.perf_counter()
    wrong = []
    for d in itertools.product(range(4), repeat=3):
        got = hermite_given_degrees(A, d).outcome
        if d == H_B:
            want = Outcome.EXACT
        elif all(x >= y for x, y in zip(d, H_B)):
            want = Outcome.STRICTLY_DOMINATES
        else:
            want = Outcome.NOT_DOMINATES
        if got is not want:
            wrong.append(d)
    dt = time.perf_counter() - t
    report("trichotomy sweep", not wrong and dt < 300,
           f"{64 - len(wrong)}/64 classified (tol: exact), {dt:.1f}s (limit 300s)")


def test_degree_bounds(report, corpus):
    rows, _ = corpus
    violations = 0
    for _, A, pair, _, _ in rows:
        n = A.nrows
        dmax = max(A.deg(), 0)
        H, U = pair.H, pair.U
        diag = sum(H[i, i].degree for i in range(n))
        violations += diag > n * dmax
        violations += sum(
            sum(e.degree for e in row if not e.is_zero()) > n * dmax for row in H.rows
        )
        violations += sum(
            (not e.is_zero()) and e.degree > (n - 1) * dmax for row in U.rows for e in row
        )
        violations += ddet_degree_ore(U) != 0
    report("degree bounds", violations == 0,
           f"{violations} violations over {len(rows)} matrices (tol: 0)")


def test_quasideterminants(report):
    t = time.perf_counter()
    checked = violations = 0
    for name in ("differential", "shift"):
        rng = random.Random(f"quasidet-{name}")
        R = RINGS[name]
        for n in [2] * 12 + [3] * 4:
            A = rand_full_rank(rng, R, n, d=rng.randint(1, 2), e=1)
            d = A.deg()
            S = embed(A)
            inv = skew_inverse(S)
            I = embed(OreMatrix.identity(R, n))
            violations += skew_matmul(inv, S) != I
            for i, row in enumerate(quasidet_table(S)):
                for j, q in enumerate(row):
                    checked += 1
                    if q is UNDEFINED or q.is_zero():
                        violations += not inv[j][i].is_zero()
                        continue
                    violations += inv[j][i] != q.inv()
                    violations += not (-(n - 1) * d <= q.degree() <= n * d)
    dt = time.perf_counter() - t
    report("quasideterminant inverse entries and degree bounds", violations == 0 and dt < 300,
           f"{violations} violations over {checked} entries (tol: 0), {dt:.1f}s (limit 300s)")


def test_euclidean_identities(report):
    t = time.perf_counter()
    rng = random.Random("euclid")
    violations = 0
    for k in range(200):
        R = RINGS[("differential", "shift", "qshift")[k % 3]]
        a, b = rand_poly(rng, R, 3, 2, exact=True), rand_poly(rng, R, 3, 2, exact=True)
        if k % 2:
            h = rand_poly(rng, R, 1, 1, exact=True)
            a, b = (a * h, b * h) if k % 4 == 1 else (h * a, h * b)
        c = gcrd_ext(a, b)
        lclm = c.s * a
        violations += lclm.degree + c.g.degree != a.degree + b.degree
        violations += not (c.s * a + c.t * b).is_zero() or c.u * a + c.v * b != c.g
        g, m, _ = gcld_lcrm(a, b)
        violations += m.degree + g.degree != a.degree + b.degree
    dt = time.perf_counter() - t
    report("Euclidean degree identities", violations == 0 and dt < 60,
           f"{violations} violations over 200 pairs (tol: exact), {dt:.1f}s (limit 60s)")


def test_smoke_benchmark(report):
    rng = random.Random("smoke")
    A = rand_full_rank(rng, RINGS["differential"], 3, d=2, e=2)
    while A.deg() != 2:
        A = rand_full_rank(rng, RINGS["differential"], 3, d=2, e=2)
    t = time.perf_counter()
    pair = hermite(A)
    dt = time.perf_counter() - t
    h = tuple(pair.H[i, i].degree for i in range(3))
    bound = hadamard_z_bound(A, h)
    obs = max(pair.H.deg_z(), pair.U.deg_z())
    report("smoke benchmark n=3 d=2 e=2", dt < 60 and obs <= bound,
           f"{dt:.2f}s (limit 60s), observed deg_z {obs} <= bound {bound}")
