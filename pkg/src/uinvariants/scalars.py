"""Exact scalars: rationals, prime-field residues and dual numbers.

Rationals are plain :class:`fractions.Fraction` values. Residues mod ``p`` are
:class:`ModP` instances. :class:`Dual` wraps either kind as ``std + inf*eps``
with ``eps**2 == 0`` and is used to take exact first derivatives by running
ordinary evaluation code on lifted inputs.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Union

DEFAULT_PRIME = 2147483647

_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class ParseError(ValueError):
    """Raised for malformed scalar text or documents."""


@lru_cache(maxsize=64)
def is_prime(p: int) -> bool:
    # deterministic Miller-Rabin for p < 3.3e24
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class ModP:
    """Residue class modulo a prime, stored reduced in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise TypeError(f"mixed fields: F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ModP(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ModP(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ModP(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ModP(self.value * v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ModP(self.value * _inverse_mod(v, self.p), self.p)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ModP(v * _inverse_mod(self.value, self.p), self.p)

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return ModP(pow(_inverse_mod(self.value, self.p), -e, self.p), self.p)
        return ModP(pow(self.value, e, self.p), self.p)

    def inverse(self) -> ModP:
        return ModP(_inverse_mod(self.value, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return (other - self.value) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"ModP({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


def _inverse_mod(v: int, p: int) -> int:
    v %= p
    if v == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(v, -1, p)


Scalar = Union[Fraction, ModP]


class FieldKind(Enum):
    RATIONAL = "rational"
    PRIME = "prime"


@dataclass(frozen=True)
class FieldSpec:
    """The base field: the rationals, or ``F_p`` for a prime ``p >= 5``."""

    kind: FieldKind
    p: int | None = None

    def __post_init__(self):
        if self.kind is FieldKind.RATIONAL:
            if self.p is not None:
                raise ValueError("rational field takes no modulus")
        else:
            if not isinstance(self.p, int) or not is_prime(self.p):
                raise ValueError(f"modulus {self.p!r} is not prime")
            if self.p < 5:
                raise ValueError(f"characteristic {self.p} is not supported (need p >= 5)")

    @classmethod
    def rational(cls) -> FieldSpec:
        return cls(FieldKind.RATIONAL)

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> FieldSpec:
        return cls(FieldKind.PRIME, p)

    @property
    def is_prime(self) -> bool:
        return self.kind is FieldKind.PRIME

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def __call__(self, value) -> Scalar:
        """Embed an int, Fraction or compatible residue into this field."""
        if self.kind is FieldKind.RATIONAL:
            if isinstance(value, ModP):
                raise TypeError("cannot embed a residue into the rationals")
            return Fraction(value)
        if isinstance(value, ModP):
            if value.p != self.p:
                raise TypeError(f"mixed fields: F_{value.p} and F_{self.p}")
            return value
        if isinstance(value, Fraction):
            return ModP(value.numerator, self.p) / ModP(value.denominator, self.p)
        return ModP(int(value), self.p)

    def contains(self, x) -> bool:
        if self.kind is FieldKind.RATIONAL:
            return isinstance(x, Fraction)
        return isinstance(x, ModP) and x.p == self.p

    def parse(self, text: str) -> Scalar:
        match = _SCALAR_RE.match(text)
        if match is None:
            raise ParseError(f"malformed scalar {text!r}")
        num = int(match.group(1))
        den = int(match.group(2)) if match.group(2) is not None else 1
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return self(Fraction(num, den))

    def format(self, x: Scalar) -> str:
        return str(x)

    def random(self, rng, bound: int = 10) -> Scalar:
        """Small integer in ``[-bound, bound]`` over Q, uniform residue over F_p."""
        if self.kind is FieldKind.RATIONAL:
            return Fraction(rng.randint(-bound, bound))
        return ModP(rng.randrange(self.p), self.p)

    def to_json(self) -> dict:
        if self.kind is FieldKind.RATIONAL:
            return {"kind": "rational"}
        return {"kind": "prime", "p": self.p}

    @classmethod
    def from_json(cls, data) -> FieldSpec:
        try:
            kind = str(data["kind"]).lower()
        except (KeyError, TypeError):
            raise ParseError("field must be an object with a 'kind' entry") from None
        if kind == "rational":
            return cls.rational()
        if kind == "prime":
            p = data.get("p")
            if isinstance(p, str) and p.isdigit():
                p = int(p)
            if not isinstance(p, int):
                raise ParseError("prime field needs an integer 'p'")
            return cls.prime(p)
        raise ParseError(f"unknown field kind {data['kind']!r}")

    def __str__(self):
        return "Q" if self.kind is FieldKind.RATIONAL else f"F_{self.p}"


def field_of(x) -> FieldSpec:
    """Field that a scalar (or the standard part of a dual) lives in."""
    if isinstance(x, Dual):
        return field_of(x.std)
    if isinstance(x, ModP):
        return FieldSpec.prime(x.p)
    return FieldSpec.rational()


def parse_scalar(text: str, field: FieldSpec) -> Scalar:
    return field.parse(text)


class Dual:
    """``std + inf*eps`` with ``eps**2 == 0`` over a base field."""

    __slots__ = ("std", "inf")

    def __init__(self, std, inf=0):
        self.std = std
        self.inf = inf

    @staticmethod
    def _parts(other):
        if isinstance(other, Dual):
            return other.std, other.inf
        if isinstance(other, (int, Fraction, ModP)) and not isinstance(other, bool):
            return other, 0
        return None

    def __add__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return Dual(self.std + o[0], self.inf + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return Dual(self.std - o[0], self.inf - o[1])

    def __rsub__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return Dual(o[0] - self.std, o[1] - self.inf)

    def __mul__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return Dual(self.std * o[0], self.std * o[1] + self.inf * o[0])

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        c, d = o
        if not c:
            raise ZeroDivisionError("dual divisor has zero standard part")
        return Dual(self.std / c, (self.inf * c - self.std * d) / (c * c))

    def __rtruediv__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return Dual(*o) / self

    def __neg__(self):
        return Dual(-self.std, -self.inf)

    def __pos__(self):
        return self

    def is_unit(self) -> bool:
        return bool(self.std)

    def __bool__(self):
        return bool(self.std) or bool(self.inf)

    def __eq__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return self.std == o[0] and self.inf == o[1]

    def __hash__(self):
        if not self.inf:
            return hash(self.std)
        return hash((self.std, self.inf))

    def __repr__(self):
        return f"Dual({self.std!r}, {self.inf!r})"


def dual_lift(a, seed_direction=0) -> Dual:
    """Lift ``a`` to ``a + seed_direction*eps``."""
    return Dual(a, seed_direction)


def std_part(x):
    return x.std if isinstance(x, Dual) else x


def inf_part(x):
    return x.inf if isinstance(x, Dual) else 0
