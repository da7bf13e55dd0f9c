from fractions import Fraction

import pytest

from placeq import combine, real as R
from placeq import formula as F
from placeq.parser import parse


@pytest.mark.parametrize("text,expected", [
    ("A x:vec. A y:vec. x < y -> E z:vec. x < z & z < y", True),
    ("E x:vec. A y:vec. y <= x", False),
    ("A x:vec. E y:vec. L[inf](x, y) & !L[inf](y, x)", True),
    ("E x:vec. L[inf](x, 1) & !L[inf](x, 1/2) & x < 0", True),
    ("E x:vec. 3*x = 1 & 2*x > 1", False),
])
def test_sentences(text, expected):
    assert combine.decide(parse(text)) is expected


def test_fourier_motzkin_result():
    g = combine.eliminate(parse("E x:vec. y < x & x <= z & x != 1"))
    for y, z in [(0, 2), (0, 1), (1, 1), (0, Fraction(1, 2)), (1, 3), (2, 1)]:
        # a half-open interval is never just the point 1
        want = y < z
        assert F.evaluate(g, {"y": Fraction(y), "z": Fraction(z)}, {}) == want


def test_pick_in_interval():
    v = R.pick_in_interval(Fraction(0), True, Fraction(1), True, avoid=[Fraction(1, 2)])
    assert 0 < v < 1 and v != Fraction(1, 2)
    assert R.pick_in_interval(Fraction(1), True, Fraction(1), False) is None


def test_witness_real():
    f = parse("x > 1/3 & x < 1/2 & 5*x != 2")
    x = R.witness_real(f, "x", {})
    assert F.evaluate(f, {"x": x}, {})
