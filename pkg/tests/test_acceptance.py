"""Exit criteria, one test per criterion; the terminal summary prints PASS/FAIL per line.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""
import io
import json
import random
import time
from fractions import Fraction

import sympy

from uinvariants.action import adjoint_tuple, check_elementary_action, random_unitriangular
from uinvariants.canonical import (
    anti_triangular_signs,
    bring_to_section,
    genericity_report,
    reconstruct_section_single,
    recover_cross_minors,
)
from uinvariants.certify import certify_full_rank, certify_section_square, random_section_matrix
from uinvariants.cli import dump_tuple, main
from uinvariants.invariants import enumerate_generators, evaluate_invariants, index_pairs, p_pair, p_single
from uinvariants.linalg import Matrix, MatrixTuple, corner_D, minor_N
from uinvariants.scalars import FieldSpec

P = 2147483647
Q = FieldSpec.rational()
Fp = FieldSpec.prime(P)
CONFIGS = [(n, m) for n in range(1, 6) for m in range(1, 4)]


def _rational_matrix(rng, n):
    return Matrix([[Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(n)] for _ in range(n)], Q)


def _generic_tuple(n, m, field, rng):
    while True:
        T = MatrixTuple.random(n, m, field, rng)
        if genericity_report(T[1]).generic:
            return T


def test_criterion_1_displayed_formulas_n3():
    """Displayed n=3 expansions of P_33, P_23, P_32 agree at 25 random rational points."""
    start = time.perf_counter()
    rng = random.Random(1)
    for _ in range(25):
        X, Y = _rational_matrix(rng, 3), _rational_matrix(rng, 3)
        x = lambda i, j: X.entry(i, j)
        y = lambda i, j: Y.entry(i, j)
        p33 = x(3, 1) * y(1, 1) + x(3, 2) * y(2, 1) + x(3, 3) * y(3, 1)
        p23 = (x(2, 1) * x(3, 2) - x(2, 2) * x(3, 1)) * y(2, 1) + (x(2, 1) * x(3, 3) - x(2, 3) * x(3, 1)) * y(3, 1)
        p32 = x(3, 1) * (y(1, 1) * y(3, 2) - y(1, 2) * y(3, 1)) + x(3, 2) * (y(2, 1) * y(3, 2) - y(2, 2) * y(3, 1))
        assert p_pair(X, Y, 3, 3) == p33
        assert p_pair(X, Y, 2, 3) == p23
        assert p_pair(X, Y, 3, 2) == p32
        # corner minors of the same display
        assert corner_D(X, 3) == x(3, 1)
        assert corner_D(X, 2) == x(2, 1) * x(3, 2) - x(2, 2) * x(3, 1)
    assert time.perf_counter() - start < 1.0


def test_criterion_2_invariance_all_configs():
    """100 random (T, u) per (n <= 5, m <= 3) over Q and F_p: zero changed generators."""
    start = time.perf_counter()
    failures = 0
    for field in (Q, Fp):
        for n, m in CONFIGS:
            rng = random.Random(1000 * n + 10 * m + field.is_prime)
            for _ in range(100):
                T = MatrixTuple.random(n, m, field, rng)
                u = random_unitriangular(n, field, rng.getrandbits(64))
                failures += evaluate_invariants(adjoint_tuple(u, T)) != evaluate_invariants(T)
    elapsed = time.perf_counter() - start
    assert failures == 0
    assert elapsed < 30.0, f"{elapsed:.1f}s"


def test_criterion_3_elementary_action_rules():
    """Case table for every simple root on random matrices, n <= 5, Q and F_p."""
    failures = 0
    cases = 0
    for field in (Q, Fp):
        rng = random.Random(3 + field.is_prime)
        for n in range(2, 6):
            for _ in range(10):
                X, Y = Matrix.random(n, field, rng), Matrix.random(n, field, rng)
                for a in range(1, n):
                    report = check_elementary_action(X, Y, a, field.random(rng))
                    cases += len(report.cases)
                    failures += len(report.failures())
    assert cases > 0 and failures == 0


def test_criterion_4_generator_count():
    """|B| = m n^2 - n(n-1)/2 for n <= 6, m <= 4."""
    for n in range(1, 7):
        for m in range(1, 5):
            labels = enumerate_generators(n, m)
            assert len(set(labels)) == len(labels) == m * n * n - n * (n - 1) // 2
    assert len(enumerate_generators(3, 2)) == 15
    assert len(enumerate_generators(4, 3)) == 42


def test_criterion_5_independence_certificates():
    """Full-rank and square-section Jacobians at random F_p points, n <= 5, m <= 3."""
    start = time.perf_counter()
    for n, m in CONFIGS:
        size = m * n * n - n * (n - 1) // 2
        full = certify_full_rank(n, m, Fp, seed=n * 10 + m)
        square = certify_section_square(n, m, Fp, seed=n * 10 + m)
        assert full.passed and full.witness["rank"] == size, full.line()
        assert square.passed and square.witness["rank"] == size, square.line()
    elapsed = time.perf_counter() - start
    assert elapsed < 120.0, f"{elapsed:.1f}s"


def _symbolic_signs(n):
    S = sympy.Matrix(n, n, lambda i, j: sympy.Symbol(f"s{i + 1}_{j + 1}") if i + j + 2 >= n + 1 else 0)
    eps = {n + 1: 1}
    for k in range(1, n + 1):
        D = S.extract(list(range(k - 1, n)), list(range(n - k + 1))).det()
        eps[k] = int(sympy.cancel(D / sympy.Mul(*[S[r - 1, n - r] for r in range(k, n + 1)])))
    eta = {}
    for i, k in index_pairs(n):
        ip = n - i + 1
        M = S.extract(list(range(i - 1, n)), list(range(ip - 1)) + [k - 1]).det()
        D_next = S.extract(list(range(i, n)), list(range(ip - 1))).det() if i < n else 1
        eta[(i, k)] = int(sympy.cancel(M / (D_next * S[i - 1, k - 1])))
    return eps, eta


def test_criterion_6_section_identities():
    """Sign tables match symbolic determinants; identities hold on 100 section matrices, n <= 6."""
    for n in range(1, 7):
        eps, eta = anti_triangular_signs(n)
        assert (eps, eta) == _symbolic_signs(n)
        rng = random.Random(60 + n)
        for _ in range(100):
            S = random_section_matrix(n, Q, rng)
            for k in range(1, n + 1):
                assert all(minor_N(S, j, k) == 0 for j in range(1, k))
                prod = Fraction(1)
                for r in range(k, n + 1):
                    prod *= S.entry(r, n + 1 - r)
                assert corner_D(S, k) == eps[k] * prod
            for i, k in index_pairs(n):
                assert p_single(S, i, k) == eta[(i, k)] * corner_D(S, i + 1) * corner_D(S, k) * S.entry(i, k)


def test_criterion_7_canonical_form():
    """canon(Ad_u T) = canon(T), invariants preserved, and reconstruction = canon for m = 1."""
    rng = random.Random(7)
    shapes = [(n, m) for n in range(2, 6) for m in range(1, 4)]
    for trial in range(100):
        n, m = shapes[trial % len(shapes)]
        T = _generic_tuple(n, m, Q, rng)
        u = random_unitriangular(n, Q, rng.getrandbits(64))
        _, sec = bring_to_section(T)
        _, sec_u = bring_to_section(adjoint_tuple(u, T))
        assert sec == sec_u
        inv = evaluate_invariants(T)
        assert evaluate_invariants(sec.as_tuple()) == inv
        X = MatrixTuple([T[1]])
        assert reconstruct_section_single(evaluate_invariants(X)) == bring_to_section(X)[1].S


def test_criterion_8_cross_minor_recovery():
    """Back-substituted N_jk(Y) equal the directly computed minors, n <= 5."""
    for field in (Q, Fp):
        rng = random.Random(8 + field.is_prime)
        for n in range(1, 6):
            for _ in range(20):
                S = random_section_matrix(n, field, rng, generic=True)
                Y = Matrix.random(n, field, rng)
                dY = {k: corner_D(Y, k) for k in range(1, n + 1)}
                pXY = {(i, k): p_pair(S, Y, i, k) for i, k in index_pairs(n)}
                direct = {(j, k): minor_N(Y, j, k) for k in range(1, n + 1) for j in range(1, k)}
                assert recover_cross_minors(S, dY, pXY) == direct


def _equiv(tmp_path, T1, T2):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    dump_tuple(T1, str(a))
    dump_tuple(T2, str(b))
    out = io.StringIO()
    assert main(["equiv", str(a), str(b)], out) == 0
    return out.getvalue().splitlines()


def test_criterion_9_orbit_pipeline(tmp_path):
    """equiv finds a verified conjugator for (T, Ad_u T) and rejects 100 unrelated pairs over F_p."""
    rng = random.Random(9)
    for n, m in [(2, 1), (3, 2), (4, 3), (5, 2)]:
        for field in (Q, Fp):
            T = MatrixTuple.random(n, m, field, rng)
            u0 = random_unitriangular(n, field, rng.getrandbits(64))
            T2 = adjoint_tuple(u0, T)
            lines = _equiv(tmp_path, T, T2)
            assert lines[0] == "INVARIANTS_EQUAL yes"
            assert lines[1].startswith("CONJUGATE yes")
            rows = json.loads(lines[1].split(" ", 2)[2])
            u = Matrix.from_entries(rows, field)
            assert u @ T[1] == T2[1] @ u
            assert all(u @ X == X2 @ u for X, X2 in zip(T, T2))
    spurious = 0
    for trial in range(100):
        n, m = CONFIGS[trial % len(CONFIGS)]
        T1 = MatrixTuple.random(n, m, Fp, rng)
        T2 = MatrixTuple.random(n, m, Fp, rng)
        spurious += _equiv(tmp_path, T1, T2)[0] != "INVARIANTS_EQUAL no"
    assert spurious == 0
