import random
from fractions import Fraction

import pytest

from placeq import formula as F
from placeq.errors import PlaceqError
from placeq.interpret import l_to_order, order_to_l, to_one_sorted, to_two_sorted
from placeq.oracle import eval_qf
from placeq.parser import parse

QF = [
    "L[2](x - 1, 3*y) & !L[3](x, y + 1/3)",
    "M[5](x, y, x - y) | Q[3,2](x + y)",
    "v[2](x - y) + 1 <= v[2](x) | v[3](x) = oo",
    "L[inf](x, y - 2) | x < y",
    "2*v[3](x) = v[3](y) + 2",
]


def _points(rng, n):
    pool = [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(3), Fraction(9, 4)]
    for _ in range(n):
        yield {v: rng.choice(pool) if rng.random() < 0.5
               else Fraction(rng.randint(-40, 40), rng.randint(1, 12)) for v in "xy"}


@pytest.mark.parametrize("text", QF)
def test_translations_preserve_truth(text):
    f = parse(text)
    rng = random.Random(7)
    forms = [order_to_l(f), l_to_order(f)]
    try:
        two = to_two_sorted(f)
    except PlaceqError:
        # the real place has no value-sorted form
        assert any(a.place.prime is None for a in F.atoms(f) if isinstance(a, F.LAtom))
    else:
        forms += [two, to_one_sorted(two)]
    for env in _points(rng, 60):
        want = eval_qf(f, env)
        for g in forms:
            assert eval_qf(g, env) == want, (g, env)


def test_order_translations_are_inverse_up_to_truth():
    f = parse("x <= y & !(x < 2*y - 1)")
    g = order_to_l(f)
    assert all(not isinstance(a, F.Order) for a in F.atoms(g))
    assert not any(isinstance(a, F.LAtom) for a in F.atoms(l_to_order(g)))


def test_one_sorted_needs_quantifier_free():
    with pytest.raises(PlaceqError):
        to_one_sorted(parse("E x:vec. v[2](x) = 0"))


def test_mixed_place_value_atom_has_no_one_sorted_form():
    from placeq.errors import UnsupportedConstruct
    with pytest.raises(UnsupportedConstruct):
        to_one_sorted(parse("v[2](x) <= v[3](y)"))
