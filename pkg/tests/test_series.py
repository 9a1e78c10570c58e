import random

import pytest
from hypothesis import given, strategies as st

from tamestrat.errors import NotUnit, ZeroElement
from tamestrat.fields import QQ, PrimeField
from tamestrat.series import LaurentElem, TruncatedSeries, dvr_decompose, series_inv, series_mul

F3 = PrimeField(3)


def S(coeffs, n, F=QQ):
    return TruncatedSeries(F, coeffs, n)


def test_mul_examples():
    assert series_mul(S([1, 1], 4), S([1, -1], 4)) == S([1, 0, -1], 4)
    assert series_mul(S([0, 1], 3), S([0, 1], 3)) == S([0, 0, 1], 3)
    assert series_mul(S([1, 1, 1, 1], 4), S([1, -1], 4)) == S([1], 4)


def test_mul_uses_min_precision():
    assert (S([1, 1], 3) * S([1], 5)).precision == 3


def test_inverse_examples():
    assert series_inv(S([1, -1], 4)) == S([1, 1, 1, 1], 4)
    with pytest.raises(NotUnit):
        series_inv(S([0, 1], 4))
    inv = series_inv(LaurentElem(QQ, 1, [1, 0, 0]))
    assert inv.lower == -1 and inv.coeffs[0] == QQ.one
    with pytest.raises(ZeroElement):
        series_inv(LaurentElem(QQ, 4, []))


def test_dvr_examples():
    n, u = dvr_decompose(S([0, 0, 1, 1], 5))
    assert n == 2 and u == S([1, 1], 3)
    n, u = dvr_decompose(S([1], 7))
    assert n == 0 and u == S([1], 7)
    n, u = dvr_decompose(S([0, 3], 4))
    assert n == 1 and u == S([3], 3)
    with pytest.raises(ZeroElement):
        dvr_decompose(S([], 4))


def test_printing():
    assert str(S([1, 0, -2], 3)) == "1 - 2*t^2 + O(t^3)"
    assert "t^-2" in str(LaurentElem(QQ, -2, [1, 1]))


def _series(draw_seed, n, F=F3):
    r = random.Random(draw_seed)
    return TruncatedSeries(F, [F.random_element(r) for _ in range(n)], n)


seeds = st.integers(0, 2**32)


@given(seeds, seeds, seeds)
def test_ring_axioms(a, b, c):
    x, y, z = _series(a, 8), _series(b, 8), _series(c, 8)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(seeds)
def test_unit_inverse(a):
    x = _series(a, 10)
    if x.is_unit():
        assert x * x.inverse() == TruncatedSeries.one(F3, 10)


@given(seeds)
def test_dvr_roundtrip(a):
    x = _series(a, 10)
    if x.is_zero():
        return
    n, u = dvr_decompose(x)
    assert u.is_unit()
    back = u.shift(0) * 1
    recon = TruncatedSeries(F3, [0] * n + list(back.coeffs), 10)
    assert recon.agrees_with(x, n + u.precision)


@given(seeds, seeds)
def test_ideal_chain(a, b):
    """val(a) <= val(b) means b is a multiple of a."""
    x, y = _series(a, 10), _series(b, 10)
    if x.is_zero() or y.is_zero():
        return
    if x.valuation() > y.valuation():
        x, y = y, x
    q = y.divide_exact(x)
    assert (x.truncate(q.precision) * q).agrees_with(y, q.precision)


@given(seeds)
def test_laurent_inverse(a):
    r = random.Random(a)
    x = LaurentElem(F3, r.randint(-4, 4), [F3.random_nonzero(r)] + [F3.random_element(r) for _ in range(7)])
    one = x * x.inverse()
    assert one.agrees_with(LaurentElem.constant(F3, 1, 8))
    assert x.inverse().lower == -x.lower
