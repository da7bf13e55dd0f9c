from fractions import Fraction

import pytest

from placeq import combine, padic
from placeq import formula as F
from placeq.parser import parse
from placeq.rational import vp
from placeq.terms import Place

BELL = [1, 1, 2, 5, 15, 52]


@pytest.mark.parametrize("n", range(6))
def test_set_partition_counts(n):
    assert sum(1 for _ in padic.set_partitions(range(n))) == BELL[n]


def test_block_cap():
    # Stirling numbers S(5,1) + S(5,2)
    assert sum(1 for _ in padic.set_partitions(range(5), max_blocks=2)) == 1 + 15


def test_weak_orders_count():
    # ordered Bell numbers
    assert [sum(1 for _ in padic.weak_orders(range(n))) for n in range(5)] == [1, 1, 3, 13, 75]


def test_witness_finite():
    x = padic.witness_finite(Place(3), [Fraction(0), Fraction(1)], [0, 0])
    assert vp(x, 3) == 0 and vp(x - 1, 3) == 0
    with pytest.raises(Exception):
        padic.witness_finite(Place(2), [Fraction(0), Fraction(1)], [0, 0])


@pytest.mark.parametrize("p", [2, 3, 5])
def test_residue_capacity(p):
    for n in range(1, p + 2):
        body = " & ".join(f"v[{p}](x - {i})= 0" for i in range(n))
        assert combine.decide(parse(f"E x:vec. {body}")) is (n < p)


def test_parametric_centers():
    g = combine.eliminate(parse("E x:vec. v[2](x - y) = 0 & v[2](x) = 0"))
    for y in (0, 1, 2, Fraction(1, 2), Fraction(4, 3), 6):
        want = y == 0 or vp(Fraction(y), 2) >= 1
        assert F.evaluate(g, {"y": Fraction(y)}, {}) == want, y


def test_single_place_elimination():
    f = parse("v[3](x - y) = 1 & 0 <= v[3](x)")
    g = padic.eliminate_vec_var_finite(f, "x", Place(3))
    for y in (0, 1, 3, Fraction(1, 3), 9):
        assert F.evaluate(g, {"y": Fraction(y)}, {}) == (vp(Fraction(y), 3) >= 0), y


def test_mixed_places_are_independent():
    f = parse("E x:vec. v[2](x) = -3 & v[3](x - 1) = 4 & v[5](x) = 0")
    assert combine.decide(f)
    w = combine.witness(f)["x"]
    assert (vp(w, 2), vp(w - 1, 3), vp(w, 5)) == (-3, 4, 0)
