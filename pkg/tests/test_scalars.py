"""Field arithmetic in Q(i, sqrt(2), sqrt(m+2))."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ns2engine.scalars import Scalar

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=12)
coords8 = st.lists(rationals, min_size=8, max_size=8)
levels = st.sampled_from([1, 2, 3, 5, 7])


def test_basic_constructors():
    one = Scalar.one(1)
    assert one.is_rational() and one.as_fraction() == 1
    assert Scalar.zero(3).is_zero()
    assert not Scalar.i(1).is_real()
    assert Scalar.sqrt2(1) * Scalar.sqrt2(1) == Scalar.from_fraction(2, 1)


def test_i_squares_to_minus_one():
    for m in (1, 2, 3):
        assert Scalar.i(m) * Scalar.i(m) == Scalar.from_fraction(-1, m)


def test_root_squares_to_level_plus_two():
    for m in (1, 2, 3, 4, 5):
        assert Scalar.root(m) * Scalar.root(m) == Scalar.from_fraction(m + 2, m)


def test_sqrt_half_level_squares():
    for m in (1, 2, 3, 4):
        s = Scalar.sqrt_half_level(m)
        assert s * s == Scalar.from_fraction(Fraction(m + 2, 2), m)


def test_degenerate_collapse_m2():
    # m = 2: sqrt(4) = 2 is rational
    r = Scalar.root(2)
    assert r.is_rational() and r.as_fraction() == 2


def test_degenerate_collapse_m6():
    # m = 6: sqrt(8) = 2 sqrt(2) lives in the sub-tower
    r = Scalar.root(6)
    assert r == Scalar.sqrt2(6) * Scalar.from_fraction(2, 6)


def test_mixed_level_arithmetic_rejected():
    with pytest.raises(ValueError):
        Scalar.one(1) + Scalar.one(2)


@given(coords8, levels)
@settings(max_examples=60, deadline=None)
def test_add_neg_roundtrip(cs, m):
    x = Scalar(cs, m)
    assert (x + (-x)).is_zero()
    assert x - x == Scalar.zero(m)


@given(coords8, coords8, coords8, levels)
@settings(max_examples=40, deadline=None)
def test_mul_distributes(a, b, c, m):
    x, y, z = Scalar(a, m), Scalar(b, m), Scalar(c, m)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(coords8, levels)
@settings(max_examples=60, deadline=None)
def test_inverse(cs, m):
    x = Scalar(cs, m)
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == Scalar.one(m)


@given(coords8, levels)
@settings(max_examples=60, deadline=None)
def test_json_roundtrip(cs, m):
    x = Scalar(cs, m)
    assert Scalar.from_json(x.to_json()) == x


@given(coords8, levels)
@settings(max_examples=40, deadline=None)
def test_real_sign_consistency(cs, m):
    x = Scalar(cs, m)
    if not x.is_real():
        return
    s = x.real_sign()
    assert s in (-1, 0, 1)
    assert (s == 0) == x.is_zero()
    assert (-x).real_sign() == -s
    sq = x * x
    assert sq.real_sign() >= 0


def test_real_sign_orders_surds():
    # sqrt(2) < 3/2 < sqrt(3)
    m = 1  # r = sqrt(3)
    s2 = Scalar.sqrt2(m)
    r3 = Scalar.root(m)
    threehalf = Scalar.from_fraction(Fraction(3, 2), m)
    assert (threehalf - s2).real_sign() == 1
    assert (r3 - threehalf).real_sign() == 1


def test_pow():
    x = Scalar.sqrt2(1) + Scalar.one(1)
    assert x ** 0 == Scalar.one(1)
    assert x ** 3 == x * x * x
    assert x ** -2 == (x * x).inverse()


def test_render_deterministic():
    x = Scalar([1, Fraction(-1, 2), 0, 0, 2, 0, 0, 0], 1)
    assert x.render() == Scalar([1, Fraction(-1, 2), 0, 0, 2, 0, 0, 0], 1).render()
