from fractions import Fraction

import pytest

from placeq.errors import InvalidPlaceError
from placeq.rational import (INF, format_rat, format_val, is_prime, next_prime_not_in,
                             parse_rat, small_rationals, val_add, vp)
from placeq.terms import Place


def test_valuation_of_fractions():
    assert vp(Fraction(8, 9), 3) == -2
    assert vp(Fraction(8, 9), 2) == 3
    assert vp(Fraction(5, 7), 3) == 0
    assert vp(0, 5) is INF


def test_valuation_rejects_composite():
    with pytest.raises(InvalidPlaceError):
        vp(4, 6)


def test_infinity_arithmetic():
    assert val_add(INF, 3) is INF
    assert val_add(2, 3) == 5
    assert format_val(INF) == "oo"


def test_rational_text_round_trip():
    for s in ("0", "-3", "7/2", "-4/9"):
        assert format_rat(parse_rat(s)) == s
    assert parse_rat("6/4") == Fraction(3, 2)
    with pytest.raises(ZeroDivisionError):
        parse_rat("1/0")
    with pytest.raises(ValueError):
        parse_rat("x")


def test_small_rationals_order_and_content():
    got = list(small_rationals(2))
    assert got[:5] == [0, 1, -1, 2, -2]
    assert Fraction(1, 2) in got and Fraction(2, 2) not in got[5:]
    assert len(got) == len(set(got))


def test_primes():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert next_prime_not_in({2, 3, 5}) == 7


def test_places():
    assert Place.parse("inf") == Place(None)
    assert Place.parse("7").prime == 7
    assert sorted([Place(None), Place(5), Place(2)]) == [Place(2), Place(5), Place(None)]
    with pytest.raises(InvalidPlaceError):
        Place.parse("x")
    with pytest.raises(InvalidPlaceError):
        Place(9)
