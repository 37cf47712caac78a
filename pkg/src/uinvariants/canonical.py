"""Section representatives of generic orbits and the triangular recoveries on it.

The section is the set of tuples whose first component vanishes strictly above
the anti-diagonal (``s_ij = 0`` for ``i + j <= n``). A tuple is generic when the
corner minors ``D_2, ..., D_n`` of its first component are nonzero; then exactly
one unitriangular ``u`` moves it into the section.
"""
from __future__ import annotations

from dataclasses import dataclass

from .action import UnitriangularMatrix, adjoint_tuple
from .invariants import InvariantVector, index_pairs
from .linalg import Matrix, MatrixTuple, corner_D, index_prime, minor_M, solve


@dataclass(frozen=True)
class GenericityReport:
    flags: dict[int, bool]  # k -> D_k(X_1) != 0, for k in [2, n]

    @property
    def generic(self) -> bool:
        return all(self.flags.values())

    def lines(self) -> list[str]:
        return [f"D[{k}] {'nonzero' if ok else 'ZERO'}" for k, ok in sorted(self.flags.items())]


class GenericityError(ValueError):
    def __init__(self, report: GenericityReport, message: str | None = None):
        bad = [k for k, ok in sorted(report.flags.items()) if not ok]
        super().__init__(message or f"tuple is not generic: D_k(X_1) vanishes for k in {bad}")
        self.report = report


@dataclass(frozen=True)
class SectionTuple:
    S: Matrix
    rest: tuple[Matrix, ...] = ()

    def __post_init__(self):
        if not is_section_shape(self.S):
            raise ValueError("first component is not in section shape")

    def as_tuple(self) -> MatrixTuple:
        return MatrixTuple((self.S, *self.rest))


def is_section_shape(X: Matrix) -> bool:
    n = X.n
    return all(not X.rows[i][j] for i in range(n) for j in range(n) if i + j + 2 <= n)


def genericity_report(X: Matrix) -> GenericityReport:
    return GenericityReport({k: bool(corner_D(X, k)) for k in range(2, X.n + 1)})


def bring_to_section(T: MatrixTuple) -> tuple[UnitriangularMatrix, SectionTuple]:
    """The unique ``u`` with ``Ad_u T`` in the section, and that section tuple."""
    X = T[1]
    report = genericity_report(X)
    if not report.generic:
        raise GenericityError(report)
    n, F = X.n, X.field
    upper = {}
    for i in range(n - 1, 0, -1):
        # row i of u X must vanish on columns [1, n-i]; the system matrix is the
        # transpose of rows [i+1, n] x columns [1, n-i] of X, determinant D_{i+1}
        unknowns = range(i + 1, n + 1)
        cols = range(1, n - i + 1)
        A = [[X.entry(r, c) for r in unknowns] for c in cols]
        b = [-X.entry(i, c) for c in cols]
        x = solve(A, b, F.zero)
        for r, v in zip(unknowns, x):
            upper[(i, r)] = v
    u = UnitriangularMatrix.from_upper(n, F, upper)
    conj = adjoint_tuple(u, T)
    return u, SectionTuple(conj[1], conj.components[1:])


def anti_triangular_signs(n: int) -> tuple[dict[int, int], dict[tuple[int, int], int]]:
    """Sign tables for section matrices under this library's minor conventions.

    ``eps[k]``: ``D_k(S) = eps[k] * prod_{r=k}^{n} s_{r,r'}`` (``eps[n+1] = 1``).
    ``eta[(i, k)]``: ``M_ik(S) = eta[(i, k)] * D_{i+1}(S) * s_ik`` for ``i' < k``.
    """
    eps = {}
    for k in range(1, n + 2):
        d = n - k + 1
        eps[k] = -1 if (d * (d - 1) // 2) % 2 else 1
    # s_ik is alone in the first row of M_ik(S), in the last of i' columns
    eta = {(i, k): (-1) ** (1 + index_prime(i, n)) for i, k in index_pairs(n)}
    return eps, eta


def reconstruct_section_single(inv: InvariantVector) -> Matrix:
    """The section matrix with the given one-matrix invariant values."""
    if inv.m != 1:
        raise ValueError("single-matrix reconstruction needs m = 1")
    n, F = inv.n, inv.field
    D = {k: inv[f"D[1,{k}]"] for k in range(1, n + 1)}
    D[n + 1] = F.one
    flags = {k: bool(D[k]) for k in range(2, n + 1)}
    if not all(flags.values()):
        raise GenericityError(GenericityReport(flags), "invariant vector is not generic: some D_k is zero")
    eps, eta = anti_triangular_signs(n)
    rows = [[F.zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        rows[k - 1][n - k] = eps[k] * eps[k + 1] * D[k] / D[k + 1]
    for i, k in index_pairs(n):
        rows[i - 1][k - 1] = inv[f"P[1,({i},{k})]"] / (eta[(i, k)] * D[i + 1] * D[k])
    return Matrix(rows, F)


def recover_cross_minors(S: Matrix, dY, pXY) -> dict[tuple[int, int], object]:
    """Solve the cross relations ``P_ik(S, Y) = sum_j M_ij(S) N_jk(Y)`` for ``N_jk(Y)``, ``j < k``.

    ``dY`` maps ``k`` to ``D_k(Y)`` and ``pXY`` maps ``(i, k)`` to ``P_ik(S, Y)``.
    For fixed ``k`` the unknowns are peeled off from ``N_{k-1,k}`` downwards;
    the leading coefficient ``M_{i,i'}(S) = D_i(S)`` must be nonzero.
    """
    n = S.n
    report = genericity_report(S)
    if not report.generic:
        raise GenericityError(report)
    nu = {}
    for k in range(1, n + 1):
        nu[(k, k)] = dY[k]
        for ip in range(k - 1, 0, -1):
            i = index_prime(ip, n)
            known = sum(
                (minor_M(S, i, j) * nu[(j, k)] for j in range(ip + 1, k + 1)), S.field.zero
            )
            nu[(ip, k)] = (pXY[(i, k)] - known) / minor_M(S, i, ip)
    return {jk: v for jk, v in nu.items() if jk[0] < jk[1]}


def find_conjugator(T: MatrixTuple, T2: MatrixTuple) -> UnitriangularMatrix | None:
    """Some unitriangular ``u`` with ``Ad_u T == T2``, or None if none exists.

    Solves ``u X_l = X2_l u`` for all ``l`` as one linear system in the strictly
    upper entries of ``u``.
    """
    if (T.n, T.m, T.field) != (T2.n, T2.m, T2.field):
        raise ValueError("tuples differ in shape or field")
    n, F = T.n, T.field
    unknowns = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    col = {ab: idx for idx, ab in enumerate(unknowns)}
    A, rhs = [], []
    for X, X2 in zip(T, T2):
        for r in range(1, n + 1):
            for c in range(1, n + 1):
                row = [F.zero] * len(unknowns)
                # (u X)[r,c] - (X2 u)[r,c] = 0 with the unit diagonal moved to the right
                for b in range(r + 1, n + 1):
                    row[col[(r, b)]] = row[col[(r, b)]] + X.entry(b, c)
                for a in range(1, c):
                    row[col[(a, c)]] = row[col[(a, c)]] - X2.entry(r, a)
                A.append(row)
                rhs.append(X2.entry(r, c) - X.entry(r, c))
    if unknowns:
        x = solve(A, rhs, F.zero)
        if x is None:
            return None
    else:
        if any(rhs):
            return None
        x = []
    u = UnitriangularMatrix.from_upper(n, F, dict(zip(unknowns, x)))
    if adjoint_tuple(u, T) != T2:
        return None
    return u
