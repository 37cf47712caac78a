"""Replayable certificates for invariance, independence and the section identities.

Every certificate is a deterministic function of its parameters and seed. The
Jacobian certificates differentiate the ordinary evaluation code by lifting one
coordinate at a time to a dual number, so derivatives are exact.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Callable

from .action import adjoint_tuple, check_elementary_action, random_unitriangular
from .canonical import anti_triangular_signs
from .invariants import evaluate_invariants, generator_count, index_pairs, p_single
from .linalg import Matrix, MatrixTuple, corner_D, minor_N, rank
from .scalars import DEFAULT_PRIME, Dual, FieldSpec

DEFAULT_RETRIES = 3


class CertificateKind(Enum):
    INVARIANCE = "Invariance"
    FULL_RANK = "FullRank"
    SECTION_SQUARE = "SectionSquare"
    ACTION_RULES = "ActionRules"
    SECTION_IDENTITIES = "SectionIdentities"


@dataclass
class Certificate:
    kind: CertificateKind
    params: dict
    passed: bool
    witness: dict = dc_field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def line(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        witness = " ".join(f"{k}={v}" for k, v in self.witness.items()) or "-"
        return f"{self.kind.value} {params} {self.verdict} witness: {witness}"

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "params": {k: str(v) for k, v in self.params.items()},
            "verdict": self.verdict,
            "witness": {k: str(v) for k, v in self.witness.items()},
        }


def _params(n, field, seed, m=None, **extra):
    params = {"n": n}
    if m is not None:
        params["m"] = m
    params.update(field=str(field), seed=seed, **extra)
    return params


def random_section_matrix(n: int, field: FieldSpec, rng, generic: bool = False, bound: int = 10) -> Matrix:
    """Random matrix vanishing strictly above the anti-diagonal.

    With ``generic=True`` the anti-diagonal entries are redrawn until nonzero,
    which makes every corner minor nonzero.
    """
    rows = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n - 1 - i, n):
            x = field.random(rng, bound)
            while generic and j == n - 1 - i and not x:
                x = field.random(rng, bound)
            rows[i][j] = x
    return Matrix(rows, field)


# -- invariance ---------------------------------------------------------------


def certify_invariance(
    n: int,
    m: int,
    field: FieldSpec,
    seed: int,
    trials: int = 100,
    *,
    evaluate: Callable = evaluate_invariants,
    draw_u: Callable = random_unitriangular,
) -> Certificate:
    """Every generator is unchanged by ``Ad_u`` on ``trials`` random ``(T, u)``.

    ``evaluate`` and ``draw_u`` are injectable so that negative controls can
    swap in a broken generator or a trivial group element.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = random.Random(seed)
    params = _params(n, field, seed, m=m, trials=trials)
    for trial in range(trials):
        T = MatrixTuple.random(n, m, field, rng)
        u = draw_u(n, field, rng.getrandbits(64))
        before = evaluate(T)
        after = evaluate(adjoint_tuple(u, T))
        for lab, x, y in zip(before.labels, before.values, after.values):
            if x != y:
                return Certificate(
                    CertificateKind.INVARIANCE, params, False,
                    {"trial": trial, "label": lab, "before": x, "after": y},
                )
    return Certificate(CertificateKind.INVARIANCE, params, True, {"checked": trials * len(before)})


# -- Jacobians ------------------------------------------------------------------


def all_coordinates(n: int, m: int) -> list[tuple[int, int, int]]:
    return [(ell, r, c) for ell in range(1, m + 1) for r in range(1, n + 1) for c in range(1, n + 1)]


def section_coordinates(n: int, m: int) -> list[tuple[int, int, int]]:
    """Free coordinates of the section: ``(1, r, c)`` with ``r + c >= n + 1``, and all of ``X_2..X_m``."""
    first = [(1, r, c) for r in range(1, n + 1) for c in range(1, n + 1) if r + c >= n + 1]
    return first + [(ell, r, c) for ell in range(2, m + 1) for r in range(1, n + 1) for c in range(1, n + 1)]


def jacobian(T: MatrixTuple, coords, evaluate: Callable = evaluate_invariants) -> list[list]:
    """Exact Jacobian of all generators with respect to ``coords`` at ``T``.

    Row ``r`` is the generator ``r`` in canonical order; column ``c`` is the
    partial derivative along ``coords[c] = (ell, row, col)``.
    """
    F = T.field
    columns = []
    for ell, r, c in coords:
        X = T[ell]
        lifted = X.replace(r, c, Dual(X.entry(r, c), F.one))
        comps = list(T.components)
        comps[ell - 1] = lifted
        values = evaluate(MatrixTuple(comps)).values
        columns.append([v.inf if isinstance(v, Dual) else F.zero for v in values])
    return [list(row) for row in zip(*columns)]


def _require_prime(field: FieldSpec):
    if not field.is_prime:
        raise ValueError("Jacobian certificates run over a prime field")


def certify_full_rank(
    n: int, m: int, field: FieldSpec | None = None, seed: int = 0, retries: int = DEFAULT_RETRIES
) -> Certificate:
    """The ``|B| x m n^2`` Jacobian has rank ``|B|`` at a random point.

    Full rank at one point proves algebraic independence; a deficient point
    proves nothing, so up to ``retries`` fresh points are tried.
    """
    field = field or FieldSpec.prime(DEFAULT_PRIME)
    _require_prime(field)
    rng = random.Random(seed)
    size = generator_count(n, m)
    coords = all_coordinates(n, m)
    params = _params(n, field, seed, m=m)
    best = -1
    for attempt in range(retries):
        T = MatrixTuple.random(n, m, field, rng)
        r = rank(jacobian(T, coords))
        best = max(best, r)
        if r == size:
            return Certificate(CertificateKind.FULL_RANK, params, True,
                               {"rank": r, "shape": f"{size}x{len(coords)}", "attempt": attempt})
    return Certificate(CertificateKind.FULL_RANK, params, False,
                       {"rank": best, "shape": f"{size}x{len(coords)}", "attempts": retries})


def certify_section_square(
    n: int, m: int, field: FieldSpec | None = None, seed: int = 0, retries: int = DEFAULT_RETRIES
) -> Certificate:
    """The generator map restricted to the section has a nonsingular square Jacobian."""
    field = field or FieldSpec.prime(DEFAULT_PRIME)
    _require_prime(field)
    rng = random.Random(seed)
    size = generator_count(n, m)
    coords = section_coordinates(n, m)
    assert len(coords) == size
    params = _params(n, field, seed, m=m)
    best = -1
    for attempt in range(retries):
        S = random_section_matrix(n, field, rng, generic=True)
        T = MatrixTuple([S] + [Matrix.random(n, field, rng) for _ in range(m - 1)])
        r = rank(jacobian(T, coords))
        best = max(best, r)
        if r == size:
            return Certificate(CertificateKind.SECTION_SQUARE, params, True,
                               {"rank": r, "shape": f"{size}x{size}", "attempt": attempt})
    return Certificate(CertificateKind.SECTION_SQUARE, params, False,
                       {"rank": best, "shape": f"{size}x{size}", "attempts": retries})


# -- identities on the section and the elementary action -------------------------


def certify_section_identities(n: int, field: FieldSpec, seed: int, trials: int = 100) -> Certificate:
    """On random section matrices: ``N_jk = 0`` for ``j < k``, the corner-minor
    product formula, and ``P_ik = eta D_{i+1} D_k s_ik``."""
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = random.Random(seed)
    eps, eta = anti_triangular_signs(n)
    params = _params(n, field, seed, trials=trials)

    def fail(trial, what, where):
        return Certificate(CertificateKind.SECTION_IDENTITIES, params, False,
                           {"trial": trial, "identity": what, "at": where})

    for trial in range(trials):
        S = random_section_matrix(n, field, rng)
        for k in range(1, n + 1):
            for j in range(1, k):
                if minor_N(S, j, k):
                    return fail(trial, "N_vanishes", (j, k))
        for k in range(1, n + 1):
            prod = field.one
            for r in range(k, n + 1):
                prod = prod * S.entry(r, n + 1 - r)
            if corner_D(S, k) != eps[k] * prod:
                return fail(trial, "D_product", k)
        for i, k in index_pairs(n):
            rhs = eta[(i, k)] * corner_D(S, i + 1) * corner_D(S, k) * S.entry(i, k)
            if p_single(S, i, k) != rhs:
                return fail(trial, "P_area", (i, k))
    return Certificate(CertificateKind.SECTION_IDENTITIES, params, True, {"trials": trials})


def certify_action_rules(
    n: int, field: FieldSpec, seed: int, trials: int = 20, *, t=None, convention: str = "inverse"
) -> Certificate:
    """Elementary-action case table for every simple root on random matrices.

    ``t`` fixes the group parameter (random per root otherwise).
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = random.Random(seed)
    params = _params(n, field, seed, trials=trials)
    if convention != "inverse":
        params["convention"] = convention
    checked = 0
    for trial in range(trials):
        X = Matrix.random(n, field, rng)
        Y = Matrix.random(n, field, rng)
        for a in range(1, n):
            ta = field(t) if t is not None else field.random(rng)
            report = check_elementary_action(X, Y, a, ta, convention)
            checked += len(report.cases)
            bad = report.failures()
            if bad:
                return Certificate(CertificateKind.ACTION_RULES, params, False,
                                   {"trial": trial, "a": a, "t": ta, "case": f"{bad[0].family}{bad[0].indices}"})
    return Certificate(CertificateKind.ACTION_RULES, params, True, {"cases": checked})


# -- suites ------------------------------------------------------------------------


def certify_all(n: int, m: int, p: int = DEFAULT_PRIME, seed: int = 0, trials: int = 100) -> list[Certificate]:
    """The five certificates for one configuration.

    Invariance, the section identities and the action rules run over Q; the
    Jacobian certificates over F_p.
    """
    Q, Fp = FieldSpec.rational(), FieldSpec.prime(p)
    return [
        certify_invariance(n, m, Q, seed, trials),
        certify_full_rank(n, m, Fp, seed),
        certify_section_square(n, m, Fp, seed),
        certify_action_rules(n, Q, seed, max(1, trials // 5)),
        certify_section_identities(n, Q, seed, trials),
    ]


def run_suite(max_n: int = 5, max_m: int = 3, p: int = DEFAULT_PRIME, seed: int = 0, trials: int = 20):
    """Desk-scale sweep over every ``n <= max_n``, ``m <= max_m``; yields certificates."""
    Q, Fp = FieldSpec.rational(), FieldSpec.prime(p)
    for n in range(1, max_n + 1):
        yield certify_section_identities(n, Q, seed, trials)
        if n >= 2:
            yield certify_action_rules(n, Q, seed, max(1, trials // 5))
        for m in range(1, max_m + 1):
            yield certify_invariance(n, m, Q, seed, trials)
            yield certify_invariance(n, m, Fp, seed, trials)
            yield certify_full_rank(n, m, Fp, seed)
            yield certify_section_square(n, m, Fp, seed)
