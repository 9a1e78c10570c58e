"""Exact scalar fields: prime fields F_p and the rationals.

Elements are :class:`FieldElement` wrappers around a raw value owned by the
field (an ``int`` in ``range(p)`` for F_p, a ``Fraction`` for Q).  Extension
fields k[x]/(p(x)) live in :mod:`tamestrat.extfield` and reuse the same
element class.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator

from .errors import FieldMismatch, ParseError, ZeroDivision


class FieldElement:
    """An immutable element of a :class:`Field`."""

    __slots__ = ("field", "value")

    def __init__(self, field: "Field", value):
        self.field = field
        self.value = value

    def _raw(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        return self.field(other).value

    def __add__(self, other):
        return FieldElement(self.field, self.field._add(self.value, self._raw(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field._sub(self.value, self._raw(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field._sub(self._raw(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field._mul(self.value, self._raw(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.value))

    def inverse(self) -> "FieldElement":
        if self.field._is_zero(self.value):
            raise ZeroDivision(f"inverse of zero in {self.field}")
        return FieldElement(self.field, self.field._inv(self.value))

    def __truediv__(self, other):
        return self * FieldElement(self.field, self._raw(other)).inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return self.field._is_zero(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field(other).value
        except (TypeError, ValueError, ParseError, ZeroDivision):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"{self.field}({self.field.format(self.value)})"

    def __str__(self):
        return self.field.format(self.value)

    def to_json(self):
        return self.field.value_to_json(self.value)


class Field:
    """Abstract exact field.  Subclasses implement the raw ``_op`` methods."""

    is_finite = False
    base = None  # prime subfield, or the base of an extension

    def __call__(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.field == self:
                return x
            return FieldElement(self, self._embed(x))
        return FieldElement(self, self._convert(x))

    def _embed(self, x: FieldElement):
        raise FieldMismatch(f"cannot coerce element of {x.field} into {self}")

    @property
    def zero(self) -> FieldElement:
        return self(0)

    @property
    def one(self) -> FieldElement:
        return self(1)

    def elements(self) -> Iterator[FieldElement]:
        raise TypeError(f"{self} is infinite")

    def random_element(self, rng: random.Random) -> FieldElement:
        raise NotImplementedError

    def random_nonzero(self, rng: random.Random) -> FieldElement:
        while True:
            a = self.random_element(rng)
            if a:
                return a

    def format(self, value) -> str:
        return str(value)

    def value_to_json(self, value):
        return value

    def from_json(self, obj) -> FieldElement:
        return self(obj)

    def _is_zero(self, a) -> bool:
        return a == 0

    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return str(self)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d, s = d // 2, s + 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField(Field):
    """The field F_p; raw values are ints in ``range(p)``."""

    is_finite = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p
        self.degree = 1

    def _key(self):
        return ("Fp", self.p)

    def __str__(self):
        return f"Fp({self.p})"

    def _convert(self, x):
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivision(f"{x} has denominator divisible by {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self._convert(parse_rational(x))
        raise TypeError(f"cannot convert {x!r} into {self}")

    def _embed(self, x):
        if x.field == QQ:
            return self._convert(x.value)
        return super()._embed(x)

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _neg(self, a):
        return -a % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    def elements(self):
        return (FieldElement(self, v) for v in range(self.p))

    def random_element(self, rng):
        return FieldElement(self, rng.randrange(self.p))


class Rationals(Field):
    """The field Q; raw values are ``Fraction`` in lowest terms."""

    characteristic = 0
    order = None
    degree = 1

    def _key(self):
        return ("Q",)

    def __str__(self):
        return "Q"

    def _convert(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, str):
            return parse_rational(x)
        raise TypeError(f"cannot convert {x!r} into Q")

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _inv(self, a):
        return 1 / a

    def random_element(self, rng, bound: int = 5):
        return FieldElement(self, Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))

    def value_to_json(self, value):
        return value.numerator if value.denominator == 1 else str(value)


QQ = Rationals()


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    try:
        return Fraction(text)
    except ValueError as exc:
        raise ParseError(f"bad rational {text!r}") from exc
