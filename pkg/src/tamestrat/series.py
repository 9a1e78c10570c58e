"""Truncated power series k[[t]] and Laurent series k((t)) with explicit precision.

Precision is carried by every value and propagated as a minimum; there is no
global context.  A value whose stored coefficients all vanish is *zero to
precision N*, which is not the same thing as exact zero: operations needing a
leading coefficient raise :class:`~tamestrat.errors.ZeroElement` instead of
guessing.
"""
from __future__ import annotations

from typing import Sequence

from .errors import FieldMismatch, NotUnit, ZeroElement
from .fields import Field, FieldElement

DEFAULT_PRECISION = 16


def _check_fields(a, b):
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")


def _format_terms(coeffs, start: int, var: str = "t") -> list[str]:
    terms = []
    for i, c in enumerate(coeffs):
        if c.is_zero():
            continue
        e = start + i
        cs = str(c)
        if any(ch in cs[1:] for ch in "+-"):
            cs = f"({cs})"
        if e == 0:
            terms.append(cs)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            terms.append(mono if cs == "1" else f"-{mono}" if cs == "-1" else f"{cs}*{mono}")
    return terms


class TruncatedSeries:
    """Element of k[[t]] known modulo t^N (``precision`` = N >= 1)."""

    __slots__ = ("field", "coeffs", "precision")

    def __init__(self, field: Field, coeffs: Sequence, precision: int):
        if precision < 1:
            raise ValueError("precision must be >= 1")
        cs = [field(c) for c in coeffs[:precision]]
        cs += [field.zero] * (precision - len(cs))
        self.field = field
        self.coeffs = tuple(cs)
        self.precision = precision

    @classmethod
    def zero(cls, field, precision=DEFAULT_PRECISION):
        return cls(field, [], precision)

    @classmethod
    def one(cls, field, precision=DEFAULT_PRECISION):
        return cls(field, [1], precision)

    @classmethod
    def monomial(cls, field, n: int, precision=DEFAULT_PRECISION, c=1):
        return cls(field, [0] * n + [c], precision)

    def _lift(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            _check_fields(self, other)
            return other
        return TruncatedSeries(self.field, [other], self.precision)

    def __add__(self, other):
        other = self._lift(other)
        n = min(self.precision, other.precision)
        return TruncatedSeries(self.field, [a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.field, [-c for c in self.coeffs], self.precision)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            c = self.field(other)
            return TruncatedSeries(self.field, [c * a for a in self.coeffs], self.precision)
        other = self._lift(other)
        n = min(self.precision, other.precision)
        out = [self.field.zero] * n
        for i in range(n):
            a = self.coeffs[i]
            if a.is_zero():
                continue
            for j in range(n - i):
                out[i + j] = out[i + j] + a * other.coeffs[j]
        return TruncatedSeries(self.field, out, n)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = TruncatedSeries.one(self.field, self.precision), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        """True when zero to the stored precision."""
        return all(c.is_zero() for c in self.coeffs)

    def is_unit(self) -> bool:
        return not self.coeffs[0].is_zero()

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        raise ZeroElement(f"series is zero to precision {self.precision}")

    def inverse(self) -> "TruncatedSeries":
        """Power-series inverse by solving for one coefficient at a time."""
        if self.is_zero():
            raise ZeroElement("inverse of a series that is zero to precision")
        if not self.is_unit():
            raise NotUnit("constant term is zero; use LaurentElem to invert t")
        n = self.precision
        c0inv = self.coeffs[0].inverse()
        inv = [c0inv]
        for k in range(1, n):
            acc = self.field.zero
            for j in range(1, k + 1):
                acc = acc + self.coeffs[j] * inv[k - j]
            inv.append(-acc * c0inv)
        return TruncatedSeries(self.field, inv, n)

    def truncate(self, n: int) -> "TruncatedSeries":
        return TruncatedSeries(self.field, self.coeffs, min(n, self.precision))

    def shift(self, n: int) -> "TruncatedSeries":
        """Multiply by t^n, keeping the precision window (higher terms drop)."""
        return TruncatedSeries(self.field, [0] * n + list(self.coeffs), self.precision)

    def divide_exact(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Return q with ``self = other * q``; needs val(other) <= val(self).

        The quotient is known to precision N - val(other).
        """
        other = self._lift(other)
        n, u = dvr_decompose(other)
        if not self.is_zero() and self.valuation() < n:
            raise NotUnit(f"t^{n} does not divide a series of valuation {self.valuation()}")
        prec = min(self.precision, other.precision) - n
        if prec < 1:
            raise ZeroElement("no precision left after division")
        stripped = TruncatedSeries(self.field, self.coeffs[n:], prec)
        return stripped * u.truncate(prec).inverse()

    def to_laurent(self) -> "LaurentElem":
        return LaurentElem(self.field, 0, self.coeffs)

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return (self.field, self.precision, self.coeffs) == (other.field, other.precision, other.coeffs)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.precision, self.coeffs))

    def agrees_with(self, other: "TruncatedSeries", n: int | None = None) -> bool:
        """Coefficient equality up to t^n (default: the common precision)."""
        n = min(self.precision, other.precision) if n is None else n
        return self.coeffs[:n] == other.coeffs[:n]

    def __repr__(self):
        return f"TruncatedSeries({self})"

    def __str__(self):
        terms = _format_terms(self.coeffs, 0)
        return " + ".join(terms + [f"O(t^{self.precision})"]).replace("+ -", "- ")

    def to_json(self):
        return {"precision": self.precision, "coeffs": [c.to_json() for c in self.coeffs]}


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_inv(a):
    """Invert a TruncatedSeries (must be a unit) or any nonzero LaurentElem."""
    return a.inverse()


def dvr_decompose(a: TruncatedSeries) -> tuple[int, TruncatedSeries]:
    """Write ``a = t^n * u`` with u a unit known to precision N - n."""
    n = a.valuation()
    u = TruncatedSeries(a.field, a.coeffs[n:], a.precision - n)
    return n, u


class LaurentElem:
    """Element t^lower * (c_0 + c_1 t + ...) of k((t)), known modulo t^(lower + N).

    Normalized: if nonzero, ``coeffs[0]`` is nonzero.  Zero to absolute
    precision P is stored as ``lower = P`` with no coefficients.
    """

    __slots__ = ("field", "lower", "coeffs")

    def __init__(self, field: Field, lower: int, coeffs: Sequence):
        cs = [field(c) for c in coeffs]
        skip = 0
        while skip < len(cs) and cs[skip].is_zero():
            skip += 1
        self.field = field
        self.lower = lower + skip
        self.coeffs = tuple(cs[skip:])

    @classmethod
    def monomial(cls, field, n: int, precision: int = DEFAULT_PRECISION, c=1):
        """c * t^n with ``precision`` relative coefficients."""
        return cls(field, n, [c] + [0] * (precision - 1))

    @classmethod
    def constant(cls, field, c, precision: int = DEFAULT_PRECISION):
        return cls(field, 0, [c] + [0] * (precision - 1))

    @property
    def relative_precision(self) -> int:
        return len(self.coeffs)

    @property
    def precision(self) -> int:
        """Absolute precision: the value is known modulo t^precision."""
        return self.lower + len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return self.lower >= 0

    def valuation(self) -> int:
        if self.is_zero():
            raise ZeroElement(f"Laurent element is zero to O(t^{self.precision})")
        return self.lower

    def coefficient(self, e: int) -> FieldElement:
        if e >= self.precision:
            raise ZeroElement(f"t^{e} lies beyond precision {self.precision}")
        i = e - self.lower
        return self.coeffs[i] if i >= 0 else self.field.zero

    def _lift(self, other) -> "LaurentElem":
        if isinstance(other, LaurentElem):
            _check_fields(self, other)
            return other
        if isinstance(other, TruncatedSeries):
            _check_fields(self, other)
            return other.to_laurent()
        return LaurentElem.constant(self.field, other, max(self.precision, 1))

    def __add__(self, other):
        other = self._lift(other)
        prec = min(self.precision, other.precision)
        low = min(self.lower, other.lower)
        if low >= prec:
            return LaurentElem(self.field, prec, [])
        cs = [self._coef_or_zero(e) + other._coef_or_zero(e) for e in range(low, prec)]
        return LaurentElem(self.field, low, cs)

    __radd__ = __add__

    def _coef_or_zero(self, e):
        i = e - self.lower
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __neg__(self):
        return LaurentElem(self.field, self.lower, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            c = self.field(other)
            return LaurentElem(self.field, self.lower, [c * a for a in self.coeffs])
        other = self._lift(other)
        n = min(len(self.coeffs), len(other.coeffs))
        low = self.lower + other.lower
        if n == 0:
            # zero times anything: only the absolute precision survives
            zs = self if self.is_zero() else other
            nz = other if self.is_zero() else self
            return LaurentElem(self.field, zs.precision + (nz.lower if not nz.is_zero() else nz.precision), [])
        u = TruncatedSeries(self.field, self.coeffs, n) * TruncatedSeries(self.field, other.coeffs, n)
        return LaurentElem(self.field, low, u.coeffs)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentElem":
        if self.is_zero():
            raise ZeroElement("inverse of a Laurent element that is zero to precision")
        u = TruncatedSeries(self.field, self.coeffs, len(self.coeffs)).inverse()
        return LaurentElem(self.field, -self.lower, u.coeffs)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentElem.constant(self.field, 1, max(len(self.coeffs), 1))
        for _ in range(n):
            result = result * self
        return result

    def to_series(self, precision: int | None = None) -> TruncatedSeries:
        """Integral element as a TruncatedSeries known to its absolute precision."""
        if not self.is_integral():
            raise NotUnit(f"t^{self.lower} is not integral")
        prec = self.precision if precision is None else min(precision, self.precision)
        cs = [self._coef_or_zero(e) for e in range(prec)]
        return TruncatedSeries(self.field, cs, max(prec, 1))

    def __eq__(self, other):
        if isinstance(other, LaurentElem):
            return (self.field, self.lower, self.coeffs) == (other.field, other.lower, other.coeffs)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.lower, self.coeffs))

    def agrees_with(self, other: "LaurentElem", upto: int | None = None) -> bool:
        """Equality of coefficients below t^upto (default: common absolute precision)."""
        upto = min(self.precision, other.precision) if upto is None else upto
        lo = min(self.lower, other.lower)
        return all(self._coef_or_zero(e) == other._coef_or_zero(e) for e in range(lo, upto))

    def __repr__(self):
        return f"LaurentElem({self})"

    def __str__(self):
        terms = _format_terms(self.coeffs, self.lower)
        return " + ".join(terms + [f"O(t^{self.precision})"]).replace("+ -", "- ")

    def to_json(self):
        return {"lower": self.lower, "coeffs": [c.to_json() for c in self.coeffs]}
