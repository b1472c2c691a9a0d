from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fraisse.dyadic import Dyadic, NonDyadicError

dyadics = st.builds(Dyadic, st.integers(-(2**40), 2**40), st.integers(-60, 60))


@given(dyadics, dyadics, dyadics)
def test_ring_laws_match_fractions(a, b, c):
    fa, fb, fc = a.to_fraction(), b.to_fraction(), c.to_fraction()
    assert (a + b).to_fraction() == fa + fb
    assert (a - b).to_fraction() == fa - fb
    assert (a * b).to_fraction() == fa * fb
    assert (a * (b + c)) == a * b + a * c
    assert (a + b) + c == a + (b + c)
    assert (a < b) == (fa < fb)


@given(dyadics)
def test_normal_form_and_json(a):
    assert a.mantissa % 2 == 1 or (a.mantissa == 0 and a.exponent == 0)
    assert Dyadic.from_json(a.to_json()) == a
    assert Dyadic.coerce(str(a)) == a
    assert hash(a) == hash(Dyadic(a.mantissa, a.exponent))


@given(st.integers(-30, 30), st.sampled_from([1, -1]))
def test_powers_of_two(k, sign):
    x = Dyadic(sign, k)
    assert x.is_signed_power_of_two()
    assert x ** -1 * x == Dyadic(1)
    assert (x / x) == Dyadic(1)
    assert x.half() * 2 == x


def test_rendering():
    assert str(Dyadic(-1, -7)) == "-1/128"
    assert str(Dyadic(3, 2)) == "12"
    assert str(Dyadic(0)) == "0"
    assert not Dyadic(3).is_signed_power_of_two()


def test_non_dyadic_rejected():
    with pytest.raises(NonDyadicError):
        Dyadic.coerce(Fraction(1, 3))
    with pytest.raises(NonDyadicError):
        Dyadic(1) / Dyadic(3)
    with pytest.raises(AttributeError):
        Dyadic(1).mantissa = 3
