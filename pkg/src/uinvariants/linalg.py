"""Dense exact matrices, determinants and the minor families M, N, D.

Indices at the public API are 1-based, as in the usual matrix notation;
``Matrix.rows`` is the 0-based storage.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .scalars import Dual, FieldSpec


class Matrix:
    """Immutable square matrix with entries in one exact field.

    Entries may also be :class:`~uinvariants.scalars.Dual` lifts of field
    elements; ``field`` then names the field of their standard parts.
    """

    __slots__ = ("rows", "field")

    def __init__(self, rows: Iterable[Iterable], field: FieldSpec):
        self.rows = tuple(tuple(r) for r in rows)
        self.field = field
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")

    @classmethod
    def from_entries(cls, rows, field: FieldSpec) -> Matrix:
        """Build a matrix, embedding ints/Fractions/strings into ``field``."""
        return cls(
            [[field.parse(x) if isinstance(x, str) else field(x) for x in r] for r in rows],
            field,
        )

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> Matrix:
        one, zero = field.one, field.zero
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], field)

    @classmethod
    def zeros(cls, n: int, field: FieldSpec) -> Matrix:
        zero = field.zero
        return cls([[zero] * n for _ in range(n)], field)

    @classmethod
    def random(cls, n: int, field: FieldSpec, rng, bound: int = 10) -> Matrix:
        return cls([[field.random(rng, bound) for _ in range(n)] for _ in range(n)], field)

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int):
        return self.rows[i - 1][j - 1]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> list[list]:
        """Entries at the given 1-based rows and columns, in the given order."""
        return [[self.rows[r - 1][c - 1] for c in cols] for r in rows]

    def replace(self, i: int, j: int, value) -> Matrix:
        rows = [list(r) for r in self.rows]
        rows[i - 1][j - 1] = value
        return Matrix(rows, self.field)

    def transpose(self) -> Matrix:
        return Matrix(zip(*self.rows), self.field)

    def to_field(self, field: FieldSpec) -> Matrix:
        return Matrix([[field(x) for x in r] for r in self.rows], field)

    def __matmul__(self, other: Matrix) -> Matrix:
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.rows))
        zero = self.field.zero
        return Matrix(
            [[sum((a * b for a, b in zip(r, c)), zero) for c in cols] for r in self.rows],
            self.field,
        )

    def __add__(self, other: Matrix) -> Matrix:
        return Matrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.field
        )

    def __sub__(self, other: Matrix) -> Matrix:
        return Matrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.field
        )

    def __neg__(self) -> Matrix:
        return Matrix([[-a for a in r] for r in self.rows], self.field)

    def scale(self, c) -> Matrix:
        return Matrix([[c * a for a in r] for r in self.rows], self.field)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"Matrix([{body}], {self.field})"

    def det(self):
        return determinant(self.rows)


class MatrixTuple:
    """A point ``(X_1, ..., X_m)`` of ``Mat(n)^m``."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[Matrix]):
        self.components = tuple(components)
        if not self.components:
            raise ValueError("a matrix tuple needs at least one component")
        first = self.components[0]
        for X in self.components[1:]:
            if X.n != first.n or X.field != first.field:
                raise ValueError("tuple components must share dimension and field")

    @classmethod
    def random(cls, n: int, m: int, field: FieldSpec, rng, bound: int = 10) -> MatrixTuple:
        return cls(Matrix.random(n, field, rng, bound) for _ in range(m))

    @property
    def n(self) -> int:
        return self.components[0].n

    @property
    def m(self) -> int:
        return len(self.components)

    @property
    def field(self) -> FieldSpec:
        return self.components[0].field

    def __getitem__(self, ell: int) -> Matrix:
        """1-based component access."""
        if not 1 <= ell <= self.m:
            raise IndexError(ell)
        return self.components[ell - 1]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return self.m

    def to_field(self, field: FieldSpec) -> MatrixTuple:
        return MatrixTuple(X.to_field(field) for X in self.components)

    def __eq__(self, other):
        if not isinstance(other, MatrixTuple):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"MatrixTuple({list(self.components)!r})"


def index_prime(i: int, n: int) -> int:
    """Mirror of ``i`` in ``[1, n]``: ``n + 1 - i``."""
    if not 1 <= i <= n:
        raise ValueError(f"index {i} outside [1, {n}]")
    return n + 1 - i


# -- determinants ----------------------------------------------------------


def determinant(rows: Sequence[Sequence]):
    """Exact determinant of a square array of field elements or duals.

    Rationals go through fraction-free Bareiss on integers, residues through
    ordinary elimination, duals through elimination that pivots only on units
    and falls back to cofactor expansion when none is left.
    """
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    flat = [x for r in rows for x in r]
    if any(isinstance(x, Dual) for x in flat):
        return _det_elimination(rows, lambda x: bool(x.std) if isinstance(x, Dual) else bool(x))
    if all(isinstance(x, (int, Fraction)) for x in flat):
        return det_bareiss(rows)
    return _det_elimination(rows, bool)


def det_bareiss(rows: Sequence[Sequence]) -> Fraction:
    """Fraction-free Bareiss elimination; rational rows are scaled to integers first."""
    scale = 1
    a = []
    for r in rows:
        d = lcm(*(Fraction(x).denominator for x in r))
        scale *= d
        a.append([int(Fraction(x) * d) for x in r])
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        for i in range(k + 1, n):
            ai = a[i]
            aik = ai[k]
            ak = a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * pivot - aik * ak[j]) // prev
        prev = pivot
    return Fraction(sign * a[n - 1][n - 1], scale)


def det_cofactor(rows: Sequence[Sequence]):
    """Laplace expansion along the first row; recursion goes back to ``determinant``."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = None
    for j, x in enumerate(rows[0]):
        if not x:
            continue
        minor = [r[:j] + r[j + 1:] for r in (list(r) for r in rows[1:])]
        term = x * determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0] * 0
    return total


def _det_elimination(rows, is_unit):
    a = [list(r) for r in rows]
    n = len(a)
    acc = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if is_unit(a[r][c])), None)
        if piv is None:
            rest = [row[c:] for row in a[c:]]
            if all(not row[0] for row in rest):
                return a[0][0] * 0
            return acc * det_cofactor(rest)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            acc = -acc
        pivot = a[c][c]
        acc = pivot * acc
        inv = 1 / pivot
        for r in range(c + 1, n):
            if not a[r][c]:
                continue
            f = a[r][c] * inv
            ar, ac = a[r], a[c]
            for j in range(c + 1, n):
                ar[j] = ar[j] - f * ac[j]
    return acc


# -- the minor families -----------------------------------------------------


def minor(X: Matrix, rows: Sequence[int], cols: Sequence[int]):
    """Determinant of ``X`` restricted to 1-based ``rows`` x ``cols`` (orders as given)."""
    if len(rows) != len(cols):
        raise ValueError("minor needs as many rows as columns")
    if not rows:
        return X.field.one
    return determinant(X.submatrix(rows, cols))


def minor_M_indices(n: int, i: int, j: int) -> tuple[list[int], list[int]]:
    ip = index_prime(i, n)
    if not (1 <= j <= n and ip <= j):
        raise ValueError(f"M_{{{i},{j}}} needs i' <= j (n={n})")
    return list(range(i, n + 1)), list(range(1, ip)) + [j]


def minor_N_indices(n: int, j: int, k: int) -> tuple[list[int], list[int]]:
    kp = index_prime(k, n)
    if not (1 <= j <= k):
        raise ValueError(f"N_{{{j},{k}}} needs j <= k (n={n})")
    return [j] + list(range(k + 1, n + 1)), list(range(1, kp + 1))


def minor_M(X: Matrix, i: int, j: int):
    """Rows ``[i, n]``, columns ``[1, i'-1]`` then ``j``; requires ``i' <= j``."""
    return minor(X, *minor_M_indices(X.n, i, j))


def minor_N(Y: Matrix, j: int, k: int):
    """Rows ``j`` then ``[k+1, n]``, columns ``[1, k']``; requires ``j <= k``."""
    return minor(Y, *minor_N_indices(Y.n, j, k))


def corner_D(X: Matrix, k: int):
    """Lower-left corner minor on rows ``[k, n]``; ``D_{n+1} = 1``."""
    n = X.n
    if not 1 <= k <= n + 1:
        raise ValueError(f"D_{k} needs 1 <= k <= {n + 1}")
    if k == n + 1:
        return X.field.one
    return minor(X, list(range(k, n + 1)), list(range(1, n - k + 2)))


# -- linear systems ---------------------------------------------------------


def _row_reduce(a: list[list], ncols: int) -> list[tuple[int, int]]:
    """In-place reduced row echelon form on the first ``ncols`` columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append((r, c))
        r += 1
        if r == len(a):
            break
    return pivots


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rectangular array over a field."""
    if not rows:
        return 0
    a = [list(r) for r in rows]
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        pr = a[r]
        for i in range(r + 1, len(a)):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], pr)]
        r += 1
        if r == len(a):
            break
    return r


def solve(A: Sequence[Sequence], b: Sequence, zero) -> list | None:
    """One solution of ``A x = b`` (free variables set to zero), or None."""
    nvars = len(A[0]) if A else 0
    a = [list(r) + [bi] for r, bi in zip(A, b)]
    pivots = _row_reduce(a, nvars)
    pivot_rows = {r for r, _ in pivots}
    for i, row in enumerate(a):
        if i not in pivot_rows and row[-1]:
            return None
    x = [zero] * nvars
    for r, c in pivots:
        x[c] = a[r][-1]
    return x

