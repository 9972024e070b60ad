from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from microset.rational import (
    format_scalar,
    int_nth_root,
    parse_scalar,
    pow_lower,
    pow_upper,
    root_lower,
    root_upper,
    sqrt_lower,
    sqrt_upper,
)

positive_fractions = st.fractions(min_value=Fraction(1, 10**6), max_value=10**6)


def test_format_parse_round_trip():
    x = Fraction(-25, 81)
    assert format_scalar(x) == "-25/81"
    assert parse_scalar("-25/81") == x
    assert format_scalar(Fraction(3)) == "3/1"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_scalar("not-a-number")


def test_int_nth_root_small_cases():
    assert int_nth_root(0, 3) == (0, True)
    assert int_nth_root(1, 7) == (1, True)
    assert int_nth_root(8, 3) == (2, True)
    assert int_nth_root(9, 3) == (2, False)
    assert int_nth_root(2**60, 5) == (2**12, True)


@given(st.integers(min_value=0, max_value=10**40), st.integers(min_value=1, max_value=7))
def test_int_nth_root_floor_property(a, r):
    x, exact = int_nth_root(a, r)
    assert x**r <= a < (x + 1) ** r
    assert exact == (x**r == a)


@given(positive_fractions, st.integers(min_value=2, max_value=5))
def test_root_enclosure_brackets(x, r):
    lo = root_lower(x, r)
    hi = root_upper(x, r)
    assert 0 <= lo <= hi
    assert lo**r <= x <= hi**r
    assert hi - lo <= Fraction(2, 10**12)


def test_exact_roots_ignore_precision_grid():
    # perfect powers come back exact even at precision too coarse to grid them
    assert root_lower(Fraction(25, 81), 2, prec=10) == Fraction(5, 9)
    assert root_upper(Fraction(25, 81), 2, prec=10) == Fraction(5, 9)
    assert root_lower(Fraction(8, 27), 3, prec=10) == Fraction(2, 3)
    assert sqrt_lower(Fraction(4)) == 2
    assert sqrt_upper(Fraction(4)) == 2


def test_irrational_root_strictly_brackets():
    lo = sqrt_lower(Fraction(2))
    hi = sqrt_upper(Fraction(2))
    assert lo < hi
    assert lo**2 < 2 < hi**2


@given(positive_fractions, st.integers(min_value=-6, max_value=6), st.integers(min_value=1, max_value=4))
def test_pow_enclosure_brackets(x, num, den):
    lo = pow_lower(x, num, den)
    hi = pow_upper(x, num, den)
    assert lo <= hi
    # x**(num/den) lies between: compare den-th powers of the enclosure
    assert lo**den <= x**num
    assert x**num <= hi**den


def test_pow_integer_exponents_exact():
    assert pow_lower(Fraction(2, 3), 3, 1) == Fraction(8, 27)
    assert pow_upper(Fraction(2, 3), 3, 1) == Fraction(8, 27)
    assert pow_lower(Fraction(2, 3), -2, 1) == Fraction(9, 4)


def test_pow_exact_fractional_case():
    # (1/16)**(1/2) hits the exact-root path
    assert pow_lower(Fraction(1, 16), 1, 2) == Fraction(1, 4)
    assert pow_upper(Fraction(1, 16), 1, 2) == Fraction(1, 4)


def test_root_rejects_bad_arguments():
    with pytest.raises(ValueError):
        root_lower(Fraction(-1), 2)
    with pytest.raises(ValueError):
        int_nth_root(4, 0)
