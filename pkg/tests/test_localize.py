import random

import pytest
import sympy
from hypothesis import given, strategies as st

from tamestrat.errors import DeltaMismatch, NotInRing, NotIrreducible, Overlap, ParseError, ZeroDenominator
from tamestrat.fields import QQ, PrimeField
from tamestrat.localize import (
    DedekindElem, DeltaSet, d_arith, d_member, iterated_localization_check, parse_delta,
    parse_fraction, r_u_presentation, random_fraction, two_step_member,
)
from tamestrat.poly import parse_poly
from tamestrat.rings import Dedekind, FractionField, Matrix, PolynomialRing

F2, F3 = PrimeField(2), PrimeField(3)
X = sympy.symbols("x")


def P(text, F=QQ):
    return parse_poly(text, F)


def sympy_member(f, g, delta, p):
    """Oracle: reduce f/g with sympy and factor the denominator over GF(p)."""
    to = lambda q: sympy.Poly([c.value for c in reversed(q.coeffs)], X, modulus=p)  # noqa: E731
    if f.is_zero():
        return True
    den = to(g).quo(to(g).gcd(to(f)))
    allowed = {to(q).monic() for q in delta.polys}
    _, factors = den.factor_list()
    return all(fac.monic() in allowed for fac, _ in factors)


def test_member_examples():
    D = DeltaSet.of(QQ, ["x"])
    assert d_member(P("1"), P("x"), D)
    assert not d_member(P("1"), P("x+1"), D)
    assert d_member(P("x+1"), P("x^2+x"), D)
    with pytest.raises(ZeroDenominator):
        d_member(P("1"), P("0"), D)


def test_arith_examples():
    D = DeltaSet.of(QQ, ["x"])
    a = DedekindElem.make(D, P("1"), P("x"))
    assert d_arith(a, a, "+") == DedekindElem.make(D, P("2"), P("x"))
    b = DedekindElem.make(D, P("x-1"), P("x"))
    assert d_arith(a, b, "+") == DedekindElem.make(D, P("1"))
    D2 = DeltaSet.of(QQ, ["x", "x+1"])
    prod = d_arith(DedekindElem.make(D2, P("1"), P("x")), DedekindElem.make(D2, P("1"), P("x+1")), "*")
    assert prod.denominator == P("x^2+x")
    assert prod.support() == {P("x"), P("x+1")}
    with pytest.raises(DeltaMismatch):
        d_arith(a, DedekindElem.make(D2, P("1")), "+")
    with pytest.raises(NotInRing):
        DedekindElem.make(D, P("1"), P("x+1"))


def test_r_u_presentation():
    assert r_u_presentation(DeltaSet.of(QQ, [])) == Matrix(2, PolynomialRing())
    assert r_u_presentation(DeltaSet.of(QQ, ["x"])) == Matrix(2, Dedekind("{x}"))
    assert r_u_presentation(DeltaSet.all(QQ)) == Matrix(2, FractionField())


def test_iterated_examples():
    d1, d2 = DeltaSet.of(QQ, ["x"]), DeltaSet.of(QQ, ["x+1"])
    rep = iterated_localization_check(d1, d2, [(P("1"), P("x^2+x")), (P("1"), P("x^2+1"))])
    assert rep.ok and rep.samples == 2
    assert two_step_member(P("1"), P("x^2+x"), d1, d2)
    assert not two_step_member(P("1"), P("x^2+1"), d1, d2)
    assert two_step_member(P("3"), P("x^3"), d1, DeltaSet.of(QQ, []))
    with pytest.raises(Overlap):
        iterated_localization_check(d1, DeltaSet.of(QQ, ["x", "x+2"]), [])


def test_delta_validation():
    with pytest.raises(NotIrreducible):
        DeltaSet.of(F2, ["x^2+1"])
    assert parse_delta("all", F3).is_all
    assert parse_delta("{x, x+1}", F3).tag() == "{x,x+1}"
    assert parse_delta("{}", F3).polys == frozenset()


def test_parse_fraction():
    f, g = parse_fraction("x+1/x^2+x", QQ)
    assert (f, g) == (P("x+1"), P("x^2+x"))
    f, g = parse_fraction("(1/2*x)/(x-3)", QQ)
    assert f == P("1/2*x") and g == P("x-3")
    with pytest.raises(ParseError):
        parse_fraction("x/", QQ)


@pytest.mark.parametrize("p,deltas", [
    (2, ["x", "x+1"]), (2, ["x^2+x+1"]), (3, ["x", "x^2+1"]), (3, ["x+2"]), (3, []),
])
def test_member_matches_sympy(p, deltas):
    F = PrimeField(p)
    D = DeltaSet.of(F, deltas)
    r = random.Random(p)
    for _ in range(80):
        f, g = random_fraction(F, r, 4, D)
        assert d_member(f, g, D) == sympy_member(f, g, D, p)


@given(st.integers(0, 2**32))
def test_dedekind_ring_laws(seed):
    r = random.Random(seed)
    D = DeltaSet.of(F3, ["x", "x+1"])

    def elem():
        while True:
            f, g = random_fraction(F3, r, 3, D)
            if d_member(f, g, D):
                return DedekindElem.make(D, f, g)

    a, b, c = elem(), elem(), elem()
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()
    for e in (a + b, a * b):
        assert e.is_reduced()
        assert e.support() <= set(D.polys)


@given(st.integers(0, 2**32))
def test_all_is_fraction_field(seed):
    r = random.Random(seed)
    F = r.choice([F2, F3])
    f, g = random_fraction(F, r, 4)
    assert d_member(f, g, DeltaSet.all(F))


def test_delta_tag_roundtrip():
    for text in ("", "{}", "x", "{x,x+1}", "all"):
        D = parse_delta(text, F3)
        assert parse_delta(D.tag(), F3).tag() == D.tag()
    assert not parse_delta("", F3).is_all


def test_str_parses_back():
    D = DeltaSet.of(QQ, ["x", "x+1"])
    for f, g in (("1", "x^2+x"), ("x-2", "x^3+x^2"), ("3", "1"), ("x^2+1", "x")):
        e = DedekindElem.make(D, P(f), P(g))
        assert DedekindElem.make(D, *parse_fraction(str(e), QQ)) == e


@pytest.mark.parametrize("text,num,den", [
    ("1/(x*(x+1))", "1", "x^2+x"),
    ("(x-2)/(x^2*(x+1))", "x-2", "x^3+x^2"),
    ("2*x*(x+1)^2", "2*x^3+4*x^2+2*x", "1"),
    ("((x+1))/x", "x+1", "x"),
])
def test_parse_products(text, num, den):
    assert parse_fraction(text, QQ) == (P(num), P(den))


@pytest.mark.parametrize("text", ["x+2*(x+1)", "(x+1", "x)/x", "(x+1)(x)"])
def test_parse_products_rejects(text):
    with pytest.raises(ParseError):
        parse_fraction(text, QQ)
