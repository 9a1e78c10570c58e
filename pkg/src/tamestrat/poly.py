"""Univariate polynomials over an exact field, with irreducibility testing.

Text format: ``c0 + c1*x + c2*x^2 + ...`` in any term order, coefficients
written as integers or ``a/b``.  ``str()`` prints ascending order; the compact
descending form ``x^2+x+1`` (used inside field descriptors) comes from
:meth:`Poly.compact`.
"""
from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .errors import NotMonic, ParseError, ZeroDivision, ZeroPolynomial
from .fields import QQ, Field, FieldElement


class Poly:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of x^i."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, field: Field, c) -> "Poly":
        return cls(field, [c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def leading(self) -> FieldElement:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def monic(self) -> "Poly":
        if not self.coeffs:
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        inv = self.leading.inverse()
        return Poly(self.field, [c * inv for c in self.coeffs])

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                from .errors import FieldMismatch

                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        return Poly(self.field, [other])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if not self.coeffs or not other.coeffs:
            return Poly(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result, base = Poly(self.field, [1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivision("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = other.leading.inverse()
        quo = [self.field.zero] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv
            quo[k] = c
            if c.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * b
        return Poly(self.field, quo), Poly(self.field, rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero()

    def __call__(self, x):
        acc = x * 0 if not isinstance(x, FieldElement) else x.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, FieldElement)):
            return self == Poly(self.field, [other])
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"Poly({self.field}, {self.compact()})"

    def __str__(self):
        return self.format(var="x")

    def format(self, var: str = "x", descending: bool = False, spaced: bool = True) -> str:
        if not self.coeffs:
            return "0"
        order = range(len(self.coeffs))
        if descending:
            order = reversed(order)
        terms = []
        for i in order:
            c = self.coeffs[i]
            if c.is_zero():
                continue
            cs = str(c)
            if i == 0:
                terms.append(cs)
                continue
            mono = var if i == 1 else f"{var}^{i}"
            if cs == "1":
                terms.append(mono)
            elif cs == "-1":
                terms.append("-" + mono)
            elif any(ch in cs for ch in "+ ") or (cs.startswith("-") and "+" in cs[1:]):
                terms.append(f"({cs})*{mono}")
            else:
                terms.append(f"{cs}*{mono}")
        joiner = " + " if spaced else "+"
        out = joiner.join(terms)
        return out.replace("+ -", "- ") if spaced else out.replace("+-", "-")

    def compact(self, var: str = "x") -> str:
        return self.format(var=var, descending=True, spaced=False)


_TERM = re.compile(r"^(?P<coef>\d+(?:/\d+)?)?(?P<star>\*)?(?P<mono>[a-z](?:\^(?P<exp>\d+))?)?$")


def parse_poly(text: str, field: Field = QQ, var: str = "x") -> Poly:
    """Parse ``c0 + c1*x + c2*x^2`` style text (any term order) into a Poly."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"([+-])([^+-]*)", s)
    if "".join(sign + body for sign, body in pieces) != s:
        raise ParseError(f"bad polynomial {text!r}")
    coeffs: dict[int, Fraction] = {}
    for sign, body in pieces:
        m = _TERM.match(body)
        if not body or not m or (m.group("star") and not (m.group("coef") and m.group("mono"))):
            raise ParseError(f"bad term {sign}{body!r} in {text!r}")
        if m.group("mono") and m.group("mono")[0] != var:
            raise ParseError(f"unknown variable in {body!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("mono") is None:
            if m.group("coef") is None:
                raise ParseError(f"bad term {body!r}")
            exp = 0
        else:
            exp = int(m.group("exp")) if m.group("exp") else 1
        coeffs[exp] = coeffs.get(exp, Fraction(0)) + (coef if sign == "+" else -coef)
    n = max(coeffs) + 1
    return Poly(field, [coeffs.get(i, 0) for i in range(n)])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero only when both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and g monic."""
    f = a.field
    r0, r1 = a, b
    s0, s1 = Poly(f, [1]), Poly(f)
    t0, t1 = Poly(f), Poly(f, [1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = r0.leading.inverse()
    return r0 * inv, s0 * inv, t0 * inv


def monic_polys(field: Field, degree: int) -> Iterator[Poly]:
    """All monic polynomials of the given degree over a finite field."""
    elems = list(field.elements())
    for lower in itertools.product(elems, repeat=degree):
        yield Poly(field, list(lower) + [field.one])


def _check_monic(p: Poly):
    if p.is_zero():
        raise ZeroPolynomial("irreducibility of the zero polynomial")
    if not p.is_monic():
        raise NotMonic(f"{p.compact()} is not monic")


def is_irreducible(p: Poly) -> Optional[bool]:
    """Decide irreducibility of a monic polynomial of degree >= 1.

    Over a finite field the answer is exact (trial division by every monic
    polynomial of degree <= deg/2).  Over Q it is exact up to degree 3 via the
    rational root test and ``None`` (unknown) from degree 4 on.
    """
    _check_monic(p)
    if p.degree < 1:
        raise ValueError("irreducibility needs degree >= 1")
    if p.degree == 1:
        return True
    if p.field.is_finite:
        for d in range(1, p.degree // 2 + 1):
            for q in monic_polys(p.field, d):
                if q.divides(p):
                    return False
        return True
    if p.field == QQ:
        if p.degree > 3:
            return None
        return not rational_roots(p)
    return None


def rational_roots(p: Poly) -> list[Fraction]:
    """Rational roots of a nonzero polynomial over Q (rational root theorem)."""
    vals = [c.value for c in p.coeffs]
    den = math.lcm(*(v.denominator for v in vals))
    ints = [int(v * den) for v in vals]
    roots = set()
    if ints[0] == 0:
        roots.add(Fraction(0))
        while ints and ints[0] == 0:
            ints = ints[1:]
    if len(ints) <= 1:
        return sorted(roots)
    a0, an = abs(ints[0]), abs(ints[-1])
    for num in _divisors(a0):
        for dd in _divisors(an):
            for cand in (Fraction(num, dd), Fraction(-num, dd)):
                if sum(c * cand**i for i, c in enumerate(ints)) == 0:
                    roots.add(cand)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def factor_over(f: Poly, deltas: Iterable[Poly]) -> Optional[dict[Poly, int]]:
    """Factor ``f`` as unit times a product of members of ``deltas``.

    Returns the exponent map, or ``None`` when some other prime divides f.
    """
    if f.is_zero():
        raise ZeroPolynomial("factor_over of the zero polynomial")
    out: dict[Poly, int] = {}
    for p in deltas:
        e = 0
        while f.degree >= p.degree:
            q, r = divmod(f, p)
            if not r.is_zero():
                break
            f, e = q, e + 1
        if e:
            out[p] = e
    return out if f.degree == 0 else None


def companion_matrix(p: Poly) -> list[list[FieldElement]]:
    """Companion matrix of a monic polynomial (acts as x on k[x]/(p))."""
    _check_monic(p)
    n, F = p.degree, p.field
    m = [[F.zero] * n for _ in range(n)]
    for i in range(1, n):
        m[i][i - 1] = F.one
    for i in range(n):
        m[i][n - 1] = -p.coeff(i)
    return m
