import random

import pytest
from hypothesis import given, strategies as st

from tamestrat.adele import (
    AdeleElem, IndexFamily, UpsilonElem, adele_arith, fraction_to_adele, integral_element,
    localize_to_adele, random_adele, random_integral, upsilon_denominator_check,
)
from tamestrat.errors import IndexMismatch, PrecisionTooLow
from tamestrat.fields import PrimeField, QQ
from tamestrat.series import LaurentElem, TruncatedSeries

F3 = PrimeField(3)
FAM = IndexFamily.uniform(F3, 3)


def mono(n, F=F3, N=16):
    return LaurentElem.monomial(F, n, N)


def test_cancellation_example():
    a = AdeleElem.make(FAM, {1: mono(-1)}, "one")
    b = AdeleElem.make(FAM, {1: mono(1)}, "one")
    prod = adele_arith(a, b, "*")
    assert prod.exceptional_set() == set()
    assert prod.agrees_with(AdeleElem.make(FAM, {}, "one"))


def test_union_example():
    a = AdeleElem.make(FAM, {1: mono(-2)}, "zero")
    b = AdeleElem.make(FAM, {2: mono(-1)}, "zero")
    assert adele_arith(a, b, "+").exceptional_set() == {1, 2}


def test_additive_inverse(rng):
    a = random_adele(FAM, rng, 16)
    z = a + (-a)
    assert z.exceptional_set() == set() and z.is_integral()
    assert z.agrees_with(AdeleElem.make(FAM, {}, "zero"))


def test_index_mismatch():
    other = IndexFamily.uniform(F3, 2)
    with pytest.raises(IndexMismatch):
        AdeleElem.make(FAM, {}) + AdeleElem.make(other, {})


def test_tail_arithmetic():
    """Unlisted indices carry the constant tail; + and * act on it like any component."""
    a = AdeleElem.make(FAM, {}, 2)
    b = AdeleElem.make(FAM, {}, 2)
    assert (a + b).tail == F3(1)
    assert (a * b).tail == F3(1)


def test_json_roundtrip(rng):
    for _ in range(10):
        a = random_adele(FAM, rng, 8)
        assert AdeleElem.from_json(a.to_json()) == a


@given(st.integers(0, 2**32))
def test_exceptional_set_closure(seed):
    r = random.Random(seed)
    a, b = random_adele(FAM, r, 16), random_adele(FAM, r, 16)
    bound = a.exceptional_set() | b.exceptional_set()
    assert (a + b).exceptional_set() <= bound
    assert (a * b).exceptional_set() <= bound
    assert (a * b).agrees_with(b * a)


def test_ore_examples(rng):
    ups = UpsilonElem.make(FAM, {1: 1})
    g = random_integral(FAM, rng, 16)
    rep = upsilon_denominator_check([g], ups, 16)
    assert rep.ok and rep.witnesses
    # a_1 = t^2 against υ_1 = t: a·υ has valuation 3, never 0
    a = integral_element(FAM, {1: TruncatedSeries.monomial(F3, 2, 16)})
    assert upsilon_denominator_check([a], ups, 16).ok
    assert upsilon_denominator_check([g], UpsilonElem.make(FAM, {}), 16).ok
    with pytest.raises(PrecisionTooLow):
        upsilon_denominator_check([g], UpsilonElem.make(FAM, {2: 16}), 16)


@given(st.integers(0, 2**32))
def test_ore_property(seed):
    r = random.Random(seed)
    ups = UpsilonElem.make(FAM, {i: n for i in FAM.indices if (n := r.randint(0, 5))})
    assert upsilon_denominator_check([random_integral(FAM, r, 16)], ups, 16).ok


def test_fraction_examples():
    ups = UpsilonElem.make(FAM, {3: 2})
    ones = integral_element(FAM, {})
    assert fraction_to_adele(ups, ones, 16).exceptional_set() <= {3}
    g = integral_element(FAM, {3: TruncatedSeries.monomial(F3, 2, 16)})
    assert fraction_to_adele(ups, g, 16).exceptional_set() == set()
    assert fraction_to_adele(UpsilonElem.make(FAM, {}), random_integral(FAM, random.Random(1), 16)).is_integral()


def test_localize_to_adele_report():
    rep = localize_to_adele(FAM, 16, 40, random.Random(3))
    assert rep.ok and rep.forward == rep.backward == 40
    fam_q = IndexFamily.uniform(QQ, 2)
    assert localize_to_adele(fam_q, 8, 10, random.Random(4)).ok
