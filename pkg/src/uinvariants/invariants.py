"""The U-invariant polynomials and the free generating family of the tuple field.

For a tuple ``(X_1, ..., X_m)`` of ``n x n`` matrices the family consists of

* ``D[l,k]``       corner minors ``D_k(X_l)``, ``1 <= k <= n``;
* ``P[l,(i,k)]``   ``P_ik(X_l) = P_ik(X_l, X_l)`` for ``i' < k``;
* ``PX[1,l,(i,k)]`` ``P_ik(X_1, X_l)`` for ``l >= 2`` and ``i' < k``;

where ``P_ik(X, Y) = sum_{j=i'}^{k} M_ij(X) N_jk(Y)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .linalg import Matrix, MatrixTuple, corner_D, index_prime, minor_M, minor_N
from .scalars import FieldSpec

FAMILIES = ("D", "P", "PX")


@dataclass(frozen=True)
class GeneratorLabel:
    family: str
    ell: int
    k: int
    i: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown generator family {self.family!r}")
        if self.family == "D":
            if self.i is not None:
                raise ValueError("D labels carry a single index")
        elif self.i is None:
            raise ValueError(f"{self.family} labels need an index pair")
        if self.family == "PX" and self.ell < 2:
            raise ValueError("cross generators pair X_1 with X_ell for ell >= 2")

    def __str__(self):
        if self.family == "D":
            return f"D[{self.ell},{self.k}]"
        if self.family == "P":
            return f"P[{self.ell},({self.i},{self.k})]"
        return f"PX[1,{self.ell},({self.i},{self.k})]"

    def check(self, n: int, m: int) -> None:
        if not 1 <= self.ell <= m:
            raise ValueError(f"{self}: component index outside [1, {m}]")
        if self.family == "D":
            if not 1 <= self.k <= n:
                raise ValueError(f"{self}: k outside [1, {n}]")
        elif not (1 <= self.i <= n and 1 <= self.k <= n and index_prime(self.i, n) < self.k):
            raise ValueError(f"{self}: needs i' < k")


_LABEL_RE = re.compile(
    r"^(?:D\[(\d+),(\d+)\]|P\[(\d+),\((\d+),(\d+)\)\]|PX\[1,(\d+),\((\d+),(\d+)\)\])$"
)


def parse_label(text: str) -> GeneratorLabel:
    match = _LABEL_RE.match(text.replace(" ", ""))
    if match is None:
        raise ValueError(f"malformed generator label {text!r}")
    g = match.groups()
    if g[0] is not None:
        return GeneratorLabel("D", int(g[0]), int(g[1]))
    if g[2] is not None:
        return GeneratorLabel("P", int(g[2]), int(g[4]), int(g[3]))
    return GeneratorLabel("PX", int(g[5]), int(g[7]), int(g[6]))


def generator_count(n: int, m: int) -> int:
    return m * n * n - n * (n - 1) // 2


def index_pairs(n: int) -> list[tuple[int, int]]:
    """Pairs ``(i, k)`` with ``i' < k``, listed increasingly in the order
    ``(a, b) < (a1, b1)`` iff ``b < b1``, or ``b == b1`` and ``a > a1``."""
    pairs = [(i, k) for i in range(1, n + 1) for k in range(1, n + 1) if n + 1 - i < k]
    return sorted(pairs, key=lambda ik: (ik[1], -ik[0]))


def enumerate_generators(n: int, m: int) -> list[GeneratorLabel]:
    """All generator labels in canonical order: D, then P, then PX."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    pairs = index_pairs(n)
    labels = [GeneratorLabel("D", ell, k) for ell in range(1, m + 1) for k in range(1, n + 1)]
    labels += [GeneratorLabel("P", ell, k, i) for ell in range(1, m + 1) for i, k in pairs]
    labels += [GeneratorLabel("PX", ell, k, i) for ell in range(2, m + 1) for i, k in pairs]
    return labels


def p_pair(X: Matrix, Y: Matrix, i: int, k: int):
    """``P_ik(X, Y) = sum_{i' <= j <= k} M_ij(X) N_jk(Y)``, defined for ``i' < k``."""
    n = X.n
    if Y.n != n:
        raise ValueError("dimension mismatch")
    ip = index_prime(i, n)
    if not ip < k <= n:
        raise ValueError(f"P_{{{i},{k}}} needs i' < k (n={n})")
    total = X.field.zero
    for j in range(ip, k + 1):
        total = total + minor_M(X, i, j) * minor_N(Y, j, k)
    return total


def p_single(X: Matrix, i: int, k: int):
    return p_pair(X, X, i, k)


class _MinorCache:
    """Memoised M_ij / N_jk / D_k of one matrix; each is used by several generators."""

    def __init__(self, X: Matrix):
        self.X = X
        self._m: dict = {}
        self._n: dict = {}

    def M(self, i, j):
        v = self._m.get((i, j))
        if v is None:
            v = self._m[(i, j)] = minor_M(self.X, i, j)
        return v

    def N(self, j, k):
        v = self._n.get((j, k))
        if v is None:
            v = self._n[(j, k)] = minor_N(self.X, j, k)
        return v


def _p_cached(mx: _MinorCache, ny: _MinorCache, n: int, i: int, k: int, zero):
    total = zero
    for j in range(n + 1 - i, k + 1):
        total = total + mx.M(i, j) * ny.N(j, k)
    return total


@dataclass(frozen=True)
class InvariantVector:
    n: int
    m: int
    field: FieldSpec
    labels: tuple[GeneratorLabel, ...]
    values: tuple

    def __post_init__(self):
        if len(self.labels) != len(self.values):
            raise ValueError("labels and values differ in length")

    def __len__(self):
        return len(self.values)

    def __iter__(self) -> Iterator[tuple[GeneratorLabel, object]]:
        return iter(zip(self.labels, self.values))

    def __getitem__(self, label):
        if isinstance(label, str):
            label = parse_label(label)
        return self.values[self.labels.index(label)]

    def as_dict(self) -> dict[str, object]:
        return {str(lab): v for lab, v in self}


def evaluate_generator(T: MatrixTuple, label: GeneratorLabel):
    label.check(T.n, T.m)
    if label.family == "D":
        return corner_D(T[label.ell], label.k)
    if label.family == "P":
        return p_single(T[label.ell], label.i, label.k)
    return p_pair(T[1], T[label.ell], label.i, label.k)


def evaluate_invariants(T: MatrixTuple) -> InvariantVector:
    """Values of every generator at ``T``, in canonical label order."""
    n, m = T.n, T.m
    zero = T.field.zero
    caches = [_MinorCache(X) for X in T]
    values = []
    labels = enumerate_generators(n, m)
    for lab in labels:
        if lab.family == "D":
            c = caches[lab.ell - 1]
            values.append(c.N(lab.k, lab.k))
        elif lab.family == "P":
            c = caches[lab.ell - 1]
            values.append(_p_cached(c, c, n, lab.i, lab.k, zero))
        else:
            values.append(_p_cached(caches[0], caches[lab.ell - 1], n, lab.i, lab.k, zero))
    return InvariantVector(n, m, T.field, tuple(labels), tuple(values))
