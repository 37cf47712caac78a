import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from uinvariants.action import adjoint_tuple, random_unitriangular
from uinvariants.invariants import (
    GeneratorLabel,
    enumerate_generators,
    evaluate_generator,
    evaluate_invariants,
    generator_count,
    index_pairs,
    p_pair,
    p_single,
    parse_label,
)
from uinvariants.linalg import Matrix, MatrixTuple
from uinvariants.scalars import DEFAULT_PRIME, FieldSpec

Q = FieldSpec.rational()


def leibniz(rows):
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = (-1) ** sum(perm[a] > perm[b] for a in range(n) for b in range(a + 1, n))
        term = sign
        for r, c in enumerate(perm):
            term = term * rows[r][c]
        total = total + term
    return total


def brute_P(X, Y, i, k):
    """P_ik(X, Y) straight from the minor definitions, via Leibniz determinants."""
    n = len(X)
    ip = n - i + 1
    kp = n - k + 1
    total = 0
    for j in range(ip, k + 1):
        m_rows = range(i, n + 1)
        m_cols = list(range(1, ip)) + [j]
        n_rows = [j] + list(range(k + 1, n + 1))
        n_cols = range(1, kp + 1)
        M = leibniz([[X[r - 1][c - 1] for c in m_cols] for r in m_rows])
        N = leibniz([[Y[r - 1][c - 1] for c in n_cols] for r in n_rows])
        total += M * N
    return total


def test_p_pair_displayed_n3(rng):
    for _ in range(10):
        X = Matrix.random(3, Q, rng)
        Y = Matrix.random(3, Q, rng)
        x = lambda i, j: X.entry(i, j)
        y = lambda i, j: Y.entry(i, j)
        assert p_pair(X, Y, 3, 3) == x(3, 1) * y(1, 1) + x(3, 2) * y(2, 1) + x(3, 3) * y(3, 1)
        assert p_pair(X, Y, 2, 3) == (
            (x(2, 1) * x(3, 2) - x(2, 2) * x(3, 1)) * y(2, 1)
            + (x(2, 1) * x(3, 3) - x(2, 3) * x(3, 1)) * y(3, 1)
        )
        assert p_pair(X, Y, 3, 2) == (
            x(3, 1) * (y(1, 1) * y(3, 2) - y(1, 2) * y(3, 1))
            + x(3, 2) * (y(2, 1) * y(3, 2) - y(2, 2) * y(3, 1))
        )


@pytest.mark.parametrize("n", range(1, 6))
def test_p_pair_matches_brute_force(rng, n):
    X = Matrix.random(n, Q, rng)
    Y = Matrix.random(n, Q, rng)
    for i, k in index_pairs(n):
        assert p_pair(X, Y, i, k) == brute_P(X.rows, Y.rows, i, k)


def test_p_single_examples():
    X = Matrix.from_entries([[1, 2], [3, 4]], Q)
    assert brute_P(X.rows, X.rows, 2, 2) == 15
    assert p_single(X, 2, 2) == 15
    for n in range(2, 5):
        Z = Matrix.zeros(n, Q)
        assert all(p_single(Z, i, k) == 0 for i, k in index_pairs(n))


def test_p_single_exchange_matrix():
    J = Matrix.from_entries([[0, 0, 1], [0, 1, 0], [1, 0, 0]], Q)
    expected = brute_P(J.rows, J.rows, 3, 3)
    assert expected == 0
    assert p_single(J, 3, 3) == expected


def test_p_precondition():
    X = Matrix.identity(3, Q)
    with pytest.raises(ValueError):
        p_single(X, 1, 3)  # 1' = 3, not < 3
    with pytest.raises(ValueError):
        p_pair(X, Matrix.identity(2, Q), 3, 3)


def brute_pairs(n):
    return {(i, k) for i in range(1, n + 1) for k in range(1, n + 1) if n - i + 1 < k}


def test_enumerate_examples():
    labels = enumerate_generators(3, 1)
    assert len(labels) == 6
    assert {(lab.i, lab.k) for lab in labels if lab.family == "P"} == {(2, 3), (3, 2), (3, 3)}
    assert sum(lab.family == "D" for lab in labels) == 3
    assert len(enumerate_generators(3, 2)) == 15
    assert enumerate_generators(1, 1) == [GeneratorLabel("D", 1, 1)]


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("m", range(1, 5))
def test_generator_count(n, m):
    labels = enumerate_generators(n, m)
    expected = m * n * n - n * (n - 1) // 2
    assert len(labels) == generator_count(n, m) == expected
    assert len(set(labels)) == expected
    assert set(index_pairs(n)) == brute_pairs(n)


def test_canonical_order():
    labels = enumerate_generators(3, 2)
    assert [str(lab) for lab in labels] == [
        "D[1,1]", "D[1,2]", "D[1,3]", "D[2,1]", "D[2,2]", "D[2,3]",
        "P[1,(3,2)]", "P[1,(3,3)]", "P[1,(2,3)]",
        "P[2,(3,2)]", "P[2,(3,3)]", "P[2,(2,3)]",
        "PX[1,2,(3,2)]", "PX[1,2,(3,3)]", "PX[1,2,(2,3)]",
    ]
    # the order on pairs: (a,b) before (a1,b1) iff b < b1, or b == b1 and a > a1
    pairs = index_pairs(5)
    for (a, b), (a1, b1) in zip(pairs, pairs[1:]):
        assert b < b1 or (b == b1 and a > a1)


def test_label_text_round_trip():
    for lab in enumerate_generators(4, 3):
        assert parse_label(str(lab)) == lab
    with pytest.raises(ValueError):
        parse_label("Q[1,1]")
    with pytest.raises(ValueError):
        GeneratorLabel("PX", 1, 3, 3)


def test_evaluate_example():
    inv = evaluate_invariants(MatrixTuple([Matrix.from_entries([[1, 2], [3, 4]], Q)]))
    assert inv.as_dict() == {"P[1,(2,2)]": 15, "D[1,1]": -2, "D[1,2]": 3}
    assert inv["P[1,(2,2)]"] == 15


def test_evaluate_zero_tuple(field):
    T = MatrixTuple([Matrix.zeros(3, field)] * 2)
    assert all(v == 0 for v in evaluate_invariants(T).values)


@pytest.mark.parametrize("n,m", [(2, 2), (3, 3), (4, 2)])
def test_evaluate_agrees_with_single_generators(rng, field, n, m):
    T = MatrixTuple.random(n, m, field, rng)
    inv = evaluate_invariants(T)
    for lab, v in inv:
        assert evaluate_generator(T, lab) == v


@pytest.mark.parametrize("p", [101, DEFAULT_PRIME])
def test_evaluation_commutes_with_reduction(rng, p):
    F = FieldSpec.prime(p)
    for n, m in [(2, 2), (3, 2), (4, 3)]:
        T = MatrixTuple(
            Matrix([[Fraction(rng.randint(-50, 50), rng.choice([1, 2, 3, 7])) for _ in range(n)]
                    for _ in range(n)], Q)
            for _ in range(m)
        )
        over_q = evaluate_invariants(T)
        over_p = evaluate_invariants(T.to_field(F))
        assert [F(v) for v in over_q.values] == list(over_p.values)


@settings(max_examples=30, deadline=None)
@given(
    n=st.integers(1, 4),
    m=st.integers(1, 3),
    seed=st.integers(0, 2**32),
)
def test_u_invariance_property(n, m, seed):
    rng = random.Random(seed)
    T = MatrixTuple.random(n, m, Q, rng)
    u = random_unitriangular(n, Q, rng.getrandbits(64))
    assert evaluate_invariants(adjoint_tuple(u, T)) == evaluate_invariants(T)


@pytest.mark.parametrize("n", range(2, 5))
def test_permutation_conjugation_changes_values(rng, n):
    perm = list(range(n))[::-1]
    P = Matrix([[Fraction(int(perm[r] == c)) for c in range(n)] for r in range(n)], Q)
    for _ in range(5):
        T = MatrixTuple.random(n, 2, Q, rng)
        conj = MatrixTuple(P @ X @ P.transpose() for X in T)  # P^-1 = P^T
        assert evaluate_invariants(conj) != evaluate_invariants(T)
