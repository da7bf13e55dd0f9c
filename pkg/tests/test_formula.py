from fractions import Fraction

import pytest

from placeq import formula as F
from placeq.errors import DnfTooLarge
from placeq.parser import parse
from placeq.prune import consistent
from placeq.terms import REAL, Place, ValTerm, VecTerm

P2, P3 = Place(2), Place(3)


def test_surface_predicates():
    assert F.eval_l(P2, Fraction(4), Fraction(2))
    assert not F.eval_l(P2, Fraction(1), Fraction(2))
    assert F.eval_l(REAL, Fraction(-2), Fraction(3))
    assert F.eval_m(REAL, Fraction(2), Fraction(3), Fraction(-6))
    assert F.eval_m(P3, Fraction(3), Fraction(1, 9), Fraction(2, 3))
    assert F.eval_q(P2, 2, Fraction(4, 9))
    assert not F.eval_q(P2, 2, Fraction(2))
    assert F.eval_q(P2, 3, Fraction(0))
    assert F.eval_q(REAL, 2, Fraction(9, 4))
    assert not F.eval_q(REAL, 2, Fraction(2))


def test_smart_constructors_fold_constants():
    t = F.vec_eq(VecTerm.var("x"))
    assert F.conj(t, F.TRUE) == t
    assert F.conj(t, F.FALSE) == F.FALSE
    assert F.disj(t, F.TRUE) == F.TRUE
    assert F.neg(F.neg(t)) == t
    assert F.vec_eq(VecTerm.constant(0)) == F.TRUE


def test_evaluate_with_both_sorts():
    f = parse("E x:vec. v[2](x - y) = g & x > 0")
    assert F.evaluate(f.body, {"x": Fraction(5), "y": Fraction(1)}, {"g": 2})
    assert not F.evaluate(f.body, {"x": Fraction(5), "y": Fraction(1)}, {"g": 1})


def test_dnf_prunes_contradictions():
    f = parse("(x > 1 | x < 0) & (x < 1/2 | y = 2) & x > 3")
    clauses = F.dnf_clauses(f, consistent)
    assert all(consistent(c) for c in clauses)
    assert len(clauses) == 1


def test_dnf_limit():
    f = parse(" & ".join(f"(x = {i} | y = {i})" for i in range(8)))
    with pytest.raises(DnfTooLarge):
        F.dnf_clauses(f, None, 20)


def test_free_vars_and_substitution():
    f = parse("E x:vec. v[2](x + y) <= g")
    assert F.free_vars(f) == {"y": F.VEC, "g": F.VAL}
    g = F.substitute(f, "y", VecTerm.constant(1))
    assert "y" not in F.free_vars(g)


def test_value_terms():
    t = ValTerm.var("g").shift(2)
    assert t.evaluate({}, {"g": 3}) == 5
    assert ValTerm.v(P2, VecTerm.constant(12)).ground_value() == 2
