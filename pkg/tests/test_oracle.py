from fractions import Fraction

import pytest

from placeq import formula as F
from placeq import oracle as O
from placeq.errors import PlaceqError
from placeq.parser import parse


def test_eval_qf_examples():
    assert O.eval_qf(parse("L[2](4, 2)"), {})
    assert O.eval_qf(parse("M[inf](2, 3, -6)"), {})
    assert O.eval_qf(parse("Q[3,2](9)"), {})
    assert not O.eval_qf(parse("Q[3,2](3)"), {})


def test_eval_qf_needs_every_variable():
    with pytest.raises(PlaceqError):
        O.eval_qf(parse("x > y"), {"x": Fraction(1)})


@pytest.mark.parametrize("text,bound,expected", [
    ("v[3](x) = 0 & v[3](x - 1) = 0", 10, {"x": 2}),
    ("v[2](x) = 0 & v[2](x - 1) = 0", 50, None),
    ("x > 3 & x < 4", 10, {"x": Fraction(7, 2)}),
])
def test_search_witness(text, bound, expected):
    assert O.search_witness(parse(text), ["x"], bound) == expected


def test_search_is_monotone_in_the_bound():
    f = parse("v[5](x - 1/7) = 3 & x > 2")
    found = [O.search_witness(f, ["x"], n) is not None for n in (5, 10, 20, 40)]
    assert found == sorted(found)


def test_equivalence_checks():
    f = parse("L[2](x, y)")
    assert O.check_equiv_sampled(f, parse("v[2](y) <= v[2](x)"), 200, seed=1).ok
    bad = O.check_equiv_sampled(parse("L[2](y, x)"), parse("v[2](y) <= v[2](x)"), 200, seed=1)
    assert not bad.ok and bad.counterexample


def test_nnf_preserves_truth():
    f = parse("!(x > 0 -> (L[3](x, y) | !(v[2](y) = 1)))")
    assert O.check_equiv_sampled(f, F.to_nnf(f), 300, seed=2).ok


def test_sampler_is_deterministic():
    f = parse("M[3](x, y, z) | v[2](x - z) <= g")
    a = O.check_equiv_sampled(f, f, 50, seed=9)
    b = O.check_equiv_sampled(f, f, 50, seed=9)
    assert a.checked == b.checked == 50


def test_bounded_evaluation_of_quantified_formulas():
    assert O.eval_bounded(parse("E x:vec. v[3](x - y) = 4"), {"y": Fraction(1, 2)}, 20)
    assert not O.eval_bounded(parse("E x:vec. v[2](x) = 0 & v[2](x - 1) = 0"), {}, 50)
    assert O.eval_bounded(parse("A x:vec. L[2](x, x)"), {}, 10)
