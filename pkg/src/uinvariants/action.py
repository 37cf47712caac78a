"""The unitriangular group and its conjugation action on matrix tuples."""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .linalg import Matrix, MatrixTuple, index_prime, minor_M, minor_N
from .scalars import FieldSpec, field_of


class UnitriangularMatrix:
    """Upper triangular matrix with unit diagonal."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Matrix):
        n = matrix.n
        one = matrix.field.one
        for a in range(n):
            for b in range(n):
                x = matrix.rows[a][b]
                if (a == b and x != one) or (a > b and x):
                    raise ValueError("not unitriangular")
        self.matrix = matrix

    @classmethod
    def from_upper(cls, n: int, field: FieldSpec, upper: dict[tuple[int, int], object]):
        """Build from the strictly upper entries ``{(a, b): u_ab}`` (1-based, a < b)."""
        rows = [[field.one if a == b else field.zero for b in range(n)] for a in range(n)]
        for (a, b), v in upper.items():
            if not 1 <= a < b <= n:
                raise ValueError(f"({a},{b}) is not strictly upper triangular")
            rows[a - 1][b - 1] = field(v)
        return cls(Matrix(rows, field))

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> UnitriangularMatrix:
        return cls(Matrix.identity(n, field))

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def field(self) -> FieldSpec:
        return self.matrix.field

    def upper(self) -> dict[tuple[int, int], object]:
        n = self.n
        return {(a, b): self.matrix.entry(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)}

    def __matmul__(self, other: UnitriangularMatrix) -> UnitriangularMatrix:
        return UnitriangularMatrix(self.matrix @ other.matrix)

    def inverse(self) -> UnitriangularMatrix:
        return group_inverse(self)

    def __eq__(self, other):
        if not isinstance(other, UnitriangularMatrix):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"UnitriangularMatrix({self.matrix!r})"


def elementary_unipotent(a: int, t, n: int, field: FieldSpec | None = None) -> UnitriangularMatrix:
    """``I + t E_{a,a+1}``, the one-parameter subgroup of the simple root ``(a, a+1)``."""
    if not 1 <= a <= n - 1:
        raise ValueError(f"simple root index {a} outside [1, {n - 1}]")
    field = field or field_of(t)
    return UnitriangularMatrix.from_upper(n, field, {(a, a + 1): t})


def random_unitriangular(n: int, field: FieldSpec, seed, bound: int = 10) -> UnitriangularMatrix:
    """Seeded random group element.

    Entries above the diagonal are drawn row by row from ``random.Random(seed)``
    (Mersenne Twister): integers in ``[-bound, bound]`` over Q, uniform residues
    over F_p. ``seed`` may also be a ``random.Random`` instance to continue a stream.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    upper = {(a, b): field.random(rng, bound) for a in range(1, n + 1) for b in range(a + 1, n + 1)}
    return UnitriangularMatrix.from_upper(n, field, upper)


def group_inverse(u: UnitriangularMatrix) -> UnitriangularMatrix:
    # u = I + N with N nilpotent: u^-1 = sum_k (-N)^k
    n, F = u.n, u.field
    eye = Matrix.identity(n, F)
    neg_nil = eye - u.matrix
    inv, term = eye, eye
    for _ in range(n - 1):
        term = term @ neg_nil
        inv = inv + term
    return UnitriangularMatrix(inv)


def conjugate(u: UnitriangularMatrix, X: Matrix) -> Matrix:
    return u.matrix @ X @ group_inverse(u).matrix


def adjoint_tuple(u: UnitriangularMatrix, T: MatrixTuple) -> MatrixTuple:
    """``(u X_1 u^-1, ..., u X_m u^-1)``."""
    if u.n != T.n:
        raise ValueError("dimension mismatch between group element and tuple")
    g, g_inv = u.matrix, group_inverse(u).matrix
    return MatrixTuple(g @ X @ g_inv for X in T)


@dataclass
class ActionCase:
    family: str  # "M" or "N"
    indices: tuple[int, int]
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class ActionReport:
    a: int
    t: object
    convention: str
    cases: list[ActionCase] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cases)

    def failures(self) -> list[ActionCase]:
        return [c for c in self.cases if not c.ok]


def act_on_matrix(a: int, t, X: Matrix, convention: str = "inverse") -> Matrix:
    """Argument substitution for ``rho_a(t) f(X) = f(s^-1 X s)`` with ``s = I + t E_{a,a+1}``.

    ``convention="direct"`` substitutes ``s X s^-1`` instead; it exists to show
    that the transformation rules pin the convention.
    """
    s = elementary_unipotent(a, t, X.n, X.field)
    s_inv = group_inverse(s)
    if convention == "inverse":
        return s_inv.matrix @ X @ s.matrix
    if convention == "direct":
        return s.matrix @ X @ s_inv.matrix
    raise ValueError(f"unknown convention {convention!r}")


def check_elementary_action(X: Matrix, Y: Matrix, a: int, t, convention: str = "inverse") -> ActionReport:
    """Compare the transformed minors with the elementary-action case table.

    ``M_{i,a+1} -> M_{i,a+1} + t M_{ia}`` when ``i' < a+1``; every other
    ``M_ij`` is fixed. ``N_{ak} -> N_{ak} - t N_{a+1,k}`` when ``a < k``; every
    other ``N_jk`` is fixed.
    """
    n = X.n
    if not 1 <= a <= n - 1:
        raise ValueError(f"simple root index {a} outside [1, {n - 1}]")
    t = X.field(t)
    Xt = act_on_matrix(a, t, X, convention)
    Yt = act_on_matrix(a, t, Y, convention)
    report = ActionReport(a, t, convention)
    for i in range(1, n + 1):
        ip = index_prime(i, n)
        for j in range(ip, n + 1):
            if ip < j == a + 1:
                expected = minor_M(X, i, a + 1) + t * minor_M(X, i, a)
            else:
                expected = minor_M(X, i, j)
            report.cases.append(ActionCase("M", (i, j), expected, minor_M(Xt, i, j)))
    for k in range(1, n + 1):
        for j in range(1, k + 1):
            if j == a < k:
                expected = minor_N(Y, a, k) - t * minor_N(Y, a + 1, k)
            else:
                expected = minor_N(Y, j, k)
            report.cases.append(ActionCase("N", (j, k), expected, minor_N(Yt, j, k)))
    return report
