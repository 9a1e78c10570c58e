"""Extension fields k_{p(x)} = k[x]/(p(x)) and field descriptor strings.

Descriptor grammar: ``Fp(3)``, ``Q``, ``Fp(2)[x]/(x^2+x+1)``.
"""
from __future__ import annotations

import itertools
import re

from .errors import NotIrreducible, NotMonic, ParseError, ZeroPolynomial
from .fields import QQ, Field, FieldElement, PrimeField
from .poly import Poly, is_irreducible, parse_poly, poly_xgcd


class ExtField(Field):
    """k[x]/(p) for a monic irreducible p over a prime field or Q.

    Raw values are reduced :class:`Poly` objects of degree < deg p.  ``trusted``
    records that irreducibility over Q was asserted by the caller rather than
    proved.
    """

    def __init__(self, modulus: Poly, trusted: bool = False):
        self.modulus = modulus
        self.base = modulus.field
        self.degree = modulus.degree
        self.trusted = trusted
        self.characteristic = self.base.characteristic
        self.is_finite = self.base.is_finite
        self.order = self.base.order ** self.degree if self.is_finite else None

    def _key(self):
        return ("Ext", self.modulus)

    def __str__(self):
        return f"{self.base}[x]/({self.modulus.compact()})"

    def _convert(self, x):
        if isinstance(x, Poly):
            if x.field != self.base:
                raise TypeError(f"polynomial over {x.field} is not over {self.base}")
            return x % self.modulus
        if isinstance(x, (list, tuple)):
            return Poly(self.base, x) % self.modulus
        if isinstance(x, str):
            return parse_poly(x, self.base) % self.modulus
        return Poly(self.base, [x])

    def _embed(self, x: FieldElement):
        if x.field == self.base or (x.field == QQ and isinstance(self.base, PrimeField)):
            return Poly(self.base, [self.base(x)])
        return super()._embed(x)

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return (a * b) % self.modulus

    def _neg(self, a):
        return -a

    def _inv(self, a):
        g, s, _ = poly_xgcd(a, self.modulus)
        if g.degree != 0:
            raise NotIrreducible(f"{a} shares a factor with {self.modulus.compact()}")
        return s % self.modulus

    def _is_zero(self, a):
        return a.is_zero()

    def format(self, value):
        return value.compact()

    def value_to_json(self, value):
        return [self.base.value_to_json(value.coeff(i).value) for i in range(self.degree)]

    def from_json(self, obj):
        if isinstance(obj, list):
            return self([self.base.from_json(c) for c in obj])
        return self(obj)

    def elements(self):
        base = list(self.base.elements())
        for combo in itertools.product(base, repeat=self.degree):
            yield FieldElement(self, Poly(self.base, combo))

    def random_element(self, rng):
        return FieldElement(
            self, Poly(self.base, [self.base.random_element(rng) for _ in range(self.degree)])
        )

    def generator(self) -> FieldElement:
        """The class of x."""
        return self(Poly.x(self.base))


def make_ext_field(p: Poly, trusted: bool = False) -> Field:
    """Build k[x]/(p); a degree-one modulus gives back the base field itself.

    Raises NotMonic / NotIrreducible.  Over Q in degree >= 4 irreducibility is
    undecidable here, so ``trusted=True`` is required (and recorded).
    """
    if p.is_zero():
        raise ZeroPolynomial("modulus is zero")
    if not p.is_monic():
        raise NotMonic(f"{p.compact()} is not monic")
    verdict = is_irreducible(p)
    if verdict is False:
        raise NotIrreducible(f"{p.compact()} is reducible over {p.field}")
    if verdict is None and not trusted:
        raise NotIrreducible(f"irreducibility of {p.compact()} over {p.field} is unknown; pass trusted=True")
    if p.degree == 1:
        return p.field
    return ExtField(p, trusted=verdict is None)


_FP = re.compile(r"^Fp\((\d+)\)$")


def parse_field(text: str) -> Field:
    """Parse ``Fp(3)``, ``Q``, ``F3`` or ``Fp(2)[x]/(x^2+x+1)``."""
    s = text.replace(" ", "")
    m = re.match(r"^(.*?)\[x\]/\((.*)\)$", s)
    if m:
        base = parse_field(m.group(1))
        return make_ext_field(parse_poly(m.group(2), base))
    if s in ("Q", "QQ"):
        return QQ
    m = _FP.match(s) or re.match(r"^F(\d+)$", s) or re.match(r"^GF\((\d+)\)$", s)
    if m:
        try:
            return PrimeField(int(m.group(1)))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown field descriptor {text!r}")
