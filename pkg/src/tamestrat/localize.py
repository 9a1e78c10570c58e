"""The Dedekind domain D = k[x][1/p : p ∈ Δ] and its membership tests.

Denominators are stored factored over Δ, so "support ⊆ Δ" is syntactic.
With Δ = All the ring is the fraction field k(x) and denominators are kept
as a single reduced monic polynomial.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Optional, Union

from .errors import DeltaMismatch, NotIrreducible, NotInRing, Overlap, ParseError, ZeroDenominator
from .fields import Field
from .poly import Poly, factor_over, is_irreducible, parse_poly, poly_gcd
from .rings import Dedekind, FractionField, Matrix, PolynomialRing, RingDescriptor


@dataclass(frozen=True)
class DeltaSet:
    field: Field
    polys: Optional[frozenset] = frozenset()  # None means All
    trusted: bool = False

    @classmethod
    def all(cls, field: Field) -> "DeltaSet":
        return cls(field, None)

    @classmethod
    def of(cls, field: Field, polys: Iterable[Union[Poly, str]], trusted: bool = False) -> "DeltaSet":
        ps = []
        for p in polys:
            p = parse_poly(p, field) if isinstance(p, str) else p
            verdict = is_irreducible(p)
            if verdict is False or (verdict is None and not trusted):
                raise NotIrreducible(f"{p.compact()} is not known to be irreducible over {field}")
            ps.append(p)
        return cls(field, frozenset(ps), trusted)

    @property
    def is_all(self) -> bool:
        return self.polys is None

    def sorted(self) -> list[Poly]:
        if self.polys is None:
            return []
        return sorted(self.polys, key=lambda p: (p.degree, p.compact()))

    def __or__(self, other: "DeltaSet") -> "DeltaSet":
        if self.is_all or other.is_all:
            return DeltaSet.all(self.field)
        return DeltaSet(self.field, self.polys | other.polys, self.trusted or other.trusted)

    def __contains__(self, p: Poly) -> bool:
        return self.is_all or p in self.polys

    def tag(self) -> str:
        if self.is_all:
            return "all"
        return "{" + ",".join(p.compact() for p in self.sorted()) + "}"

    def __str__(self):
        return self.tag()


def parse_delta(text: str, field: Field, trusted: bool = False) -> DeltaSet:
    """Comma-separated polynomials, optionally in braces (the ``tag()`` form), or ``all``."""
    s = text.strip()
    if s.lower() == "all":
        return DeltaSet.all(field)
    if s.startswith("{") and s.endswith("}"):
        s = s[1:-1]
    return DeltaSet.of(field, [t for t in s.split(",") if t.strip()], trusted)


def parse_fraction(text: str, field: Field) -> tuple[Poly, Poly]:
    """Split ``num/den`` at the first '/' that is not part of a rational coefficient.

    Parentheses are honoured: ``(x+1)/(x^2+x)``.
    """
    s = text.replace(" ", "")
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            if 0 < i < len(s) - 1 and s[i - 1].isdigit() and s[i + 1].isdigit():
                continue
            return _parse_product(s[:i], field), _parse_product(s[i + 1:], field)
    return _parse_product(s, field), Poly(field, [1])


def _top_level_split(s: str, sep: str) -> list[str]:
    out, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        depth += (ch == "(") - (ch == ")")
        if depth < 0:
            raise ParseError(f"unbalanced parentheses in {s!r}")
        if ch == sep and depth == 0:
            out.append(s[start:i])
            start = i + 1
    if depth:
        raise ParseError(f"unbalanced parentheses in {s!r}")
    out.append(s[start:])
    return out


_GROUP = re.compile(r"\((?P<body>.*)\)(?:\^(?P<exp>\d+))?")


def _parse_product(s: str, field: Field) -> Poly:
    """A polynomial, or a product like ``2*x^2*(x+1)^3`` of parenthesised factors."""
    if "(" not in s and ")" not in s:
        return parse_poly(s, field)
    acc = Poly(field, [1])
    for piece in _top_level_split(s, "*"):
        m = _GROUP.fullmatch(piece)
        if m:
            acc = acc * _parse_product(m.group("body"), field) ** int(m.group("exp") or 1)
        elif "(" in piece or ")" in piece or re.search(r"(?<!^)[+-]", piece):
            # a bare sum next to a parenthesised factor would bind the wrong way
            raise ParseError(f"ambiguous factor {piece!r} in {s!r}")
        else:
            acc = acc * parse_poly(piece, field)
    return acc


def _expand(field: Field, den: dict) -> Poly:
    out = Poly(field, [1])
    for p, e in den.items():
        out = out * p**e
    return out


@dataclass(frozen=True, eq=False)
class DedekindElem:
    delta: DeltaSet
    num: Poly
    den: tuple = ()  # sorted ((p, e), ...)

    @classmethod
    def make(cls, delta: DeltaSet, num: Poly, den: Optional[Poly] = None) -> "DedekindElem":
        F = delta.field
        den = Poly(F, [1]) if den is None else den
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        g = poly_gcd(num, den) if not num.is_zero() else den.monic()
        num, den = num // g, den // g
        c = den.leading
        num, den = num * c.inverse(), den * c.inverse()
        if den.degree == 0:
            return cls(delta, num, ())
        if delta.is_all:
            return cls(delta, num, ((den, 1),))
        fac = factor_over(den, delta.sorted())
        if fac is None:
            raise NotInRing(f"({num.compact()})/({den.compact()}) has a denominator outside {delta.tag()}")
        return cls(delta, num, _sorted_den(fac))

    @classmethod
    def inverse_of(cls, delta: DeltaSet, p: Poly) -> "DedekindElem":
        return cls.make(delta, Poly(delta.field, [1]), p)

    @property
    def denominator(self) -> Poly:
        return _expand(self.delta.field, dict(self.den))

    def support(self) -> set:
        return {p for p, _ in self.den}

    def is_reduced(self) -> bool:
        return all(not p.divides(self.num) for p, _ in self.den)

    def reduce(self) -> "DedekindElem":
        return DedekindElem.make(self.delta, self.num, self.denominator)

    def _check(self, other):
        if self.delta != other.delta:
            raise DeltaMismatch(f"{self.delta.tag()} vs {other.delta.tag()}")

    def _lift(self, other):
        if isinstance(other, DedekindElem):
            self._check(other)
            return other
        if isinstance(other, Poly):
            return DedekindElem.make(self.delta, other)
        return DedekindElem.make(self.delta, Poly(self.delta.field, [other]))

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.denominator, other.denominator
        return DedekindElem.make(self.delta, self.num * b + other.num * a, a * b)

    __radd__ = __add__

    def __neg__(self):
        return DedekindElem(self.delta, -self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        other = self._lift(other)
        return DedekindElem.make(self.delta, self.num * other.num, self.denominator * other.denominator)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, DedekindElem):
            try:
                other = self._lift(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.delta == other.delta and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if not self.den:
            return self.num.compact()
        den = "*".join(paren(p) + (f"^{e}" if e > 1 else "") for p, e in self.den)
        if len(self.den) > 1:
            den = f"({den})"
        return f"{paren(self.num)}/{den}"

    def to_json(self):
        return {"num": self.num.compact(), "den": [[p.compact(), e] for p, e in self.den]}


def paren(p: Poly) -> str:
    text = p.compact()
    return f"({text})" if sum(not c.is_zero() for c in p.coeffs) > 1 else text


def _sorted_den(fac: dict) -> tuple:
    return tuple(sorted(fac.items(), key=lambda kv: (kv[0].degree, kv[0].compact())))


def d_member(f: Poly, g: Poly, delta: DeltaSet) -> bool:
    """Is f/g in D(Δ)?"""
    if g.is_zero():
        raise ZeroDenominator("zero denominator")
    if delta.is_all:
        return True
    if f.is_zero():
        return True
    reduced = g // poly_gcd(f, g)
    return factor_over(reduced, delta.sorted()) is not None


def d_arith(a: DedekindElem, b: DedekindElem, op: str) -> DedekindElem:
    if a.delta != b.delta:
        raise DeltaMismatch(f"{a.delta.tag()} vs {b.delta.tag()}")
    if op in ("+", "add"):
        return a + b
    if op in ("*", "x", "×", "mul"):
        return a * b
    raise ValueError(f"unknown op {op!r}")


def r_u_presentation(delta: DeltaSet) -> RingDescriptor:
    """R_U ≅ M_2(D) for U = {V} ∪ {V_p : p ∈ Δ}."""
    if delta.is_all:
        return Matrix(2, FractionField())
    if not delta.polys:
        return Matrix(2, PolynomialRing())
    return Matrix(2, Dedekind(delta.tag()))


@dataclass
class IteratedReport:
    delta1: str
    delta2: str
    samples: int
    counterexamples: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json(self):
        return {
            "delta1": self.delta1,
            "delta2": self.delta2,
            "samples": self.samples,
            "counterexamples": self.counterexamples,
            "ok": self.ok,
        }


def two_step_member(f: Poly, g: Poly, d1: DeltaSet, d2: DeltaSet) -> bool:
    """Membership in (D(Δ1))[1/p : p ∈ Δ2]: strip the Δ1-part, then the Δ2-part."""
    if g.is_zero():
        raise ZeroDenominator("zero denominator")
    if f.is_zero():
        return True
    g = g // poly_gcd(f, g)
    for delta in (d1, d2):
        if delta.is_all:
            return True
        for p in delta.sorted():
            while g.degree >= p.degree and p.divides(g):
                g = g // p
    return g.degree == 0


def iterated_localization_check(d1: DeltaSet, d2: DeltaSet, samples) -> IteratedReport:
    """Compare one-step membership at Δ1 ∪ Δ2 with the two-step localization."""
    if not d1.is_all and not d2.is_all and d1.polys & d2.polys:
        raise Overlap("Δ1 and Δ2 must be disjoint")
    union = d1 | d2
    rep = IteratedReport(d1.tag(), d2.tag(), 0)
    for f, g in samples:
        rep.samples += 1
        if d_member(f, g, union) != two_step_member(f, g, d1, d2):
            rep.counterexamples.append({"num": f.compact(), "den": g.compact()})
    return rep


def random_poly(field: Field, rng: random.Random, max_deg: int, nonzero: bool = False) -> Poly:
    while True:
        deg = rng.randint(0, max_deg)
        p = Poly(field, [field.random_element(rng) for _ in range(deg + 1)])
        if not nonzero or not p.is_zero():
            return p


def random_fraction(field: Field, rng: random.Random, max_deg: int, delta: Optional[DeltaSet] = None):
    """Random f/g; when ``delta`` is given, half the denominators are built from its members."""
    f = random_poly(field, rng, max_deg)
    if delta is not None and not delta.is_all and delta.polys and rng.random() < 0.5:
        g = Poly(field, [field.random_nonzero(rng)])
        members = delta.sorted()
        while True:
            p = rng.choice(members)
            if g.degree + p.degree > max_deg:
                break
            g = g * p
            if rng.random() < 0.4:
                break
        if rng.random() < 0.3:
            g = g * random_poly(field, rng, 1, nonzero=True)
        return f, g
    return f, random_poly(field, rng, max_deg, nonzero=True)


def parse_member_query(text: str, field: Field) -> tuple[Poly, Poly]:
    try:
        return parse_fraction(text, field)
    except ParseError:
        raise
    except ValueError as exc:  # pragma: no cover - parse_poly raises ParseError
        raise ParseError(str(exc)) from exc
