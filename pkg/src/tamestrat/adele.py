"""Adèle rings: tuples of Laurent series that are integral at almost every index.

An :class:`IndexFamily` lists finitely many explicit indices (each with its
residue field) and may be *cofinite*: then infinitely many further indices
exist and every element carries one integral constant, the tail, on all of
them.  The exceptional set {i : f_i not integral} is therefore always a
subset of the explicit indices, and finiteness is structural.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import IndexMismatch, ParseError, PrecisionTooLow
from .extfield import parse_field
from .fields import Field, FieldElement
from .series import DEFAULT_PRECISION, LaurentElem, TruncatedSeries


@dataclass(frozen=True)
class IndexFamily:
    base: Field
    residues: tuple  # ((i, Field), ...) sorted by i
    cofinite: bool = True

    @classmethod
    def uniform(cls, base: Field, n: int, cofinite: bool = True, residue: Optional[Field] = None) -> "IndexFamily":
        return cls(base, tuple((i, residue or base) for i in range(1, n + 1)), cofinite)

    @property
    def indices(self) -> list[int]:
        return [i for i, _ in self.residues]

    def residue(self, i: int) -> Field:
        for j, F in self.residues:
            if j == i:
                return F
        raise IndexMismatch(f"index {i} is not listed")


def _tail_value(base: Field, tail) -> FieldElement:
    if tail == "one":
        return base.one
    if tail == "zero":
        return base.zero
    return base(tail)


@dataclass(frozen=True, eq=False)
class AdeleElem:
    family: IndexFamily
    components: tuple  # LaurentElem per listed index, same order as family.residues
    tail: FieldElement  # constant on every unlisted index (only meaningful when cofinite)

    @classmethod
    def make(cls, family: IndexFamily, comps: dict, tail="one", precision: int = DEFAULT_PRECISION) -> "AdeleElem":
        """``comps`` maps listed indices to LaurentElem / TruncatedSeries; missing ones take the tail."""
        t = _tail_value(family.base, tail)
        out = []
        for i, F in family.residues:
            c = comps.get(i)
            if c is None:
                c = LaurentElem.constant(F, F(t), precision)
            elif isinstance(c, TruncatedSeries):
                c = c.to_laurent()
            out.append(c)
        return cls(family, tuple(out), t)

    def component(self, i: int) -> LaurentElem:
        for (j, _), c in zip(self.family.residues, self.components):
            if j == i:
                return c
        if not self.family.cofinite:
            raise IndexMismatch(f"index {i} is not in the family")
        return LaurentElem.constant(self.family.base, self.tail)

    def exceptional_set(self) -> set[int]:
        return {i for (i, _), c in zip(self.family.residues, self.components) if not c.is_zero() and c.lower < 0}

    def is_integral(self) -> bool:
        return not self.exceptional_set()

    def _check(self, other: "AdeleElem"):
        if self.family != other.family:
            raise IndexMismatch("adèles over different index families")

    def __add__(self, other: "AdeleElem") -> "AdeleElem":
        self._check(other)
        return AdeleElem(self.family, tuple(a + b for a, b in zip(self.components, other.components)), self.tail + other.tail)

    def __neg__(self):
        return AdeleElem(self.family, tuple(-a for a in self.components), -self.tail)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "AdeleElem") -> "AdeleElem":
        self._check(other)
        return AdeleElem(self.family, tuple(a * b for a, b in zip(self.components, other.components)), self.tail * other.tail)

    def __eq__(self, other):
        return (
            isinstance(other, AdeleElem)
            and self.family == other.family
            and self.components == other.components
            and (self.tail == other.tail or not self.family.cofinite)
        )

    def __hash__(self):
        return hash(self.components)

    def agrees_with(self, other: "AdeleElem") -> bool:
        return self.tail == other.tail and all(a.agrees_with(b) for a, b in zip(self.components, other.components))

    def to_json(self) -> dict:
        idx = []
        for (i, F), c in zip(self.family.residues, self.components):
            idx.append({"i": i, "residue": str(F), "lower": c.lower, "coeffs": [v.to_json() for v in c.coeffs]})
        tail = "one" if self.tail == self.family.base.one else "zero" if self.tail.is_zero() else self.tail.to_json()
        return {"indices": idx, "tail": tail, "cofinite": self.family.cofinite, "base": str(self.family.base)}

    @classmethod
    def from_json(cls, obj: dict) -> "AdeleElem":
        try:
            entries = sorted(obj["indices"], key=lambda e: e["i"])
            residues = tuple((int(e["i"]), parse_field(e["residue"])) for e in entries)
            base = parse_field(obj["base"]) if "base" in obj else (residues[0][1] if residues else None)
            if base is None:
                raise ParseError("adèle JSON without indices needs a 'base' field")
            fam = IndexFamily(base, residues, bool(obj.get("cofinite", True)))
            comps = tuple(
                LaurentElem(F, int(e["lower"]), [F.from_json(v) for v in e["coeffs"]])
                for (_, F), e in zip(residues, entries)
            )
            raw_tail = obj.get("tail", "one")
            tail = _tail_value(base, raw_tail if raw_tail in ("one", "zero") else base.from_json(raw_tail))
            return cls(fam, comps, tail)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad adèle JSON: {exc}") from exc


def adele_arith(a: AdeleElem, b: AdeleElem, op: str) -> AdeleElem:
    if op in ("+", "add"):
        return a + b
    if op in ("*", "x", "×", "mul"):
        return a * b
    raise ValueError(f"unknown op {op!r}")


def random_adele(family: IndexFamily, rng: random.Random, precision: int = DEFAULT_PRECISION,
                 max_pole: int = 3, integral: bool = False) -> AdeleElem:
    comps = {}
    for i, F in family.residues:
        lower = 0 if integral else rng.randint(-max_pole, 2)
        comps[i] = LaurentElem(F, lower, [F.random_element(rng) for _ in range(precision)])
    tail = rng.choice(["one", "zero", family.base.random_element(rng)])
    return AdeleElem.make(family, comps, tail, precision)


# -- Υ and the Ore localization of the integral adèles -----------------------

@dataclass(frozen=True)
class UpsilonElem:
    """∏ t^{n_i} over a finite support; every other component is 1."""

    family: IndexFamily
    powers: tuple  # ((i, n_i), ...) with n_i >= 1

    @classmethod
    def make(cls, family: IndexFamily, powers: dict) -> "UpsilonElem":
        for i, n in powers.items():
            family.residue(i)
            if n < 1:
                raise ValueError("Υ exponents must be >= 1")
        return cls(family, tuple(sorted(powers.items())))

    def power(self, i: int) -> int:
        return dict(self.powers).get(i, 0)

    @property
    def support(self) -> set[int]:
        return {i for i, _ in self.powers}

    def as_adele(self, precision: int = DEFAULT_PRECISION) -> AdeleElem:
        comps = {i: LaurentElem.monomial(F, self.power(i), precision) for i, F in self.family.residues}
        return AdeleElem.make(self.family, comps, "one", precision)


def integral_element(family: IndexFamily, comps: dict, tail="one", precision: int = DEFAULT_PRECISION) -> dict:
    """A Γ₁ sample: componentwise power series (dict i -> TruncatedSeries) plus tail."""
    t = _tail_value(family.base, tail)
    out = {}
    for i, F in family.residues:
        out[i] = comps.get(i) or TruncatedSeries(F, [F(t)], precision)
    return {"components": out, "tail": t}


def random_integral(family: IndexFamily, rng: random.Random, precision: int = DEFAULT_PRECISION) -> dict:
    comps = {}
    for i, F in family.residues:
        v = rng.randint(0, 3)
        comps[i] = TruncatedSeries(F, [0] * v + [F.random_element(rng) for _ in range(precision - v)], precision)
    return integral_element(family, comps, rng.choice(["one", "zero"]), precision)


@dataclass
class OreReport:
    samples: int = 0
    precision: int = 0
    witnesses: list = dc_field(default_factory=list)
    failures: list = dc_field(default_factory=list)
    # the components are commutative, so the right condition is the mirror of the left one
    commutative_components: bool = True

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self):
        return {
            "samples": self.samples,
            "precision": self.precision,
            "witnesses": self.witnesses,
            "failures": self.failures,
            "commutative_components": self.commutative_components,
            "ok": self.ok,
        }


def upsilon_denominator_check(samples, ups: UpsilonElem, precision: int = DEFAULT_PRECISION) -> OreReport:
    """Check both denominator-set conditions for Υ against Γ₁ samples.

    (i) Ore: for a ∈ Γ₁ and s ∈ Υ exhibit s·a, which lies in Υa ∩ Γ₁s.
    (ii) No Υ-torsion: a·s = 0 forces a = 0.  At precision N this reads
    "a·t^n ≡ 0 mod t^N  ⇒  a ≡ 0 mod t^(N−n)", checked per component via
    valuation additivity.
    """
    if any(n >= precision for _, n in ups.powers):
        raise PrecisionTooLow(f"Υ exponent reaches precision {precision}")
    rep = OreReport(precision=precision)
    for a in samples:
        rep.samples += 1
        comps = a["components"]
        wit = {}
        for i, _ in ups.family.residues:
            ai = comps[i].truncate(precision)
            n = ups.power(i)
            s = TruncatedSeries.monomial(ai.field, n, precision)
            left, right = s * ai, ai * s
            if left != right:
                rep.failures.append({"index": i, "condition": "ore"})
            # (ii) valuation additivity within the window
            lost = ai.truncate(precision - n) if n else ai
            if left.is_zero() != lost.is_zero():
                rep.failures.append({"index": i, "condition": "torsion"})
            elif not left.is_zero() and left.valuation() != lost.valuation() + n:
                rep.failures.append({"index": i, "condition": "valuation"})
            wit[i] = left.to_json()["coeffs"][: n + 3]
        rep.witnesses.append({"s*a": wit})
    return rep


@dataclass
class AdeleLocalizationReport:
    forward: int = 0
    backward: int = 0
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self):
        return {"forward_samples": self.forward, "backward_samples": self.backward,
                "failures": self.failures, "ok": self.ok}


def fraction_to_adele(ups: UpsilonElem, g: dict, precision: int = DEFAULT_PRECISION) -> AdeleElem:
    """υ^{-1} g componentwise: divide the i-th series by t^{n_i}."""
    comps = {}
    for i, F in ups.family.residues:
        gi = g["components"][i]
        comps[i] = LaurentElem(F, -ups.power(i), gi.coeffs)
    return AdeleElem.make(ups.family, comps, g["tail"], precision)


def localize_to_adele(family: IndexFamily, precision: int = DEFAULT_PRECISION, samples: int = 50,
                      rng: Optional[random.Random] = None) -> AdeleLocalizationReport:
    """Υ^{-1}Γ₁ lands in the adèles with exceptional set ⊆ supp υ, and every adèle is some υ^{-1}g."""
    rng = rng or random.Random(0)
    rep = AdeleLocalizationReport()
    idx = family.indices
    for _ in range(samples):
        support = [i for i in idx if rng.random() < 0.5]
        ups = UpsilonElem.make(family, {i: rng.randint(1, 3) for i in support})
        g = random_integral(family, rng, precision)
        a = fraction_to_adele(ups, g, precision)
        rep.forward += 1
        expected = {
            i for i in support
            if not g["components"][i].is_zero() and g["components"][i].valuation() < ups.power(i)
        }
        if a.exceptional_set() != expected or not a.exceptional_set() <= ups.support:
            rep.failures.append({"direction": "forward", "support": sorted(support)})
        # converse: every adèle is υ^{-1} g with g integral
        b = random_adele(family, rng, precision)
        powers = {i: -b.component(i).lower for i in b.exceptional_set()}
        ups_b = UpsilonElem.make(family, powers)
        gb = b * ups_b.as_adele(precision)
        rep.backward += 1
        if not gb.is_integral():
            rep.failures.append({"direction": "backward", "reason": "υ·a not integral"})
            continue
        g_int = {"components": {i: gb.component(i).to_series() for i in idx}, "tail": gb.tail}
        back = fraction_to_adele(ups_b, g_int, precision)
        if not back.agrees_with(b):
            rep.failures.append({"direction": "backward", "reason": "υ^-1(υ·a) != a"})
    return rep
