from fractions import Fraction

import pytest

from placeq import combine
from placeq import formula as F
from placeq.errors import SignatureError, UnsupportedConstruct
from placeq.parser import parse
from placeq.rational import vp
from placeq.terms import Place


@pytest.mark.parametrize("text,expected", [
    ("E y:vec. 3 <= v[2](y - 1) & 2 <= v[3](y)", True),
    ("E y:vec. L[inf](y - 1/2, 1/4) & v[2](y) = 1", True),
    ("E y:vec. v[2](y) = 0 & v[2](y - 1) = 0", False),
    ("A x:vec. A y:vec. L[2](x + y, x) | L[2](x + y, y)", True),
    ("E x:vec. !(x = 0) & L[2](2*x, x) & !L[2](x, 2*x)", True),
    ("A x:vec. E y:vec. M[3](y, y, x) -> Q[3,2](x)", True),
    ("A x:vec. Q[5,2](x) | Q[5,2](5*x)", True),
    ("E x:vec. E y:vec. x + y = 1 & v[2](x) = 3 & v[2](y) = 3", False),
])
def test_decide(text, expected):
    assert combine.decide(parse(text)) is expected


@pytest.mark.parametrize("text", [
    "E y:vec. 3 <= v[2](y - 1) & 2 <= v[3](y)",
    "E y:vec. y > 0 & 1 <= v[2](y)",
    "E y:vec. v[2](y) = -1 & v[3](y) = 1",
    "E x:vec. E y:vec. x - y = 1/3 & v[5](x) = 2 & y < -7",
    "E g:val. E x:vec. v[3](x) = g & g > 2 & x < 1/100",
])
def test_witnesses_verify_exactly(text):
    f = parse(text)
    w = combine.witness(f)
    vec = {k: v for k, v in w.items() if isinstance(v, Fraction)}
    val = {k: v for k, v in w.items() if not isinstance(v, Fraction)}
    body = f
    while isinstance(body, F.Exists):
        body = body.body
    assert F.evaluate(body, vec, val)


def test_crt_witness_value():
    assert combine.witness(parse("E y:vec. 3 <= v[2](y - 1) & 2 <= v[3](y)")) == {"y": 9}


def test_weak_approximation_with_real_window():
    f = parse("E y:vec. 5 <= v[2](y - 1/3) & 4 <= v[3](y - 2) & y > 100 & y < 100 + 1/1000")
    y = combine.witness(f)["y"]
    assert vp(y - Fraction(1, 3), 2) >= 5 and vp(y - 2, 3) >= 4
    assert 100 < y < Fraction(100001, 1000)


def test_elimination_is_quantifier_free_and_equivalent():
    f = parse("E x:vec. x > y & v[3](x - y) = 1 & L[2](x, z)")
    g = combine.eliminate(f)
    assert F.is_quantifier_free(g)
    from placeq.oracle import check_equiv_sampled
    assert check_equiv_sampled(f, g, samples=40, seed=3).ok


def test_signature_errors():
    with pytest.raises(UnsupportedConstruct):
        combine.decide(parse("A x:vec. M[inf](x, x, x)"))
    with pytest.raises(SignatureError):
        combine.decide(parse("E x:vec. L[5](x, 1)"), combine.Signature.of([Place(2)], []))
    with pytest.raises(SignatureError):
        combine.decide(parse("E x:vec. M[2](x, x, 1)"),
                       combine.Signature.of([Place(2), Place(3)], [Place(3)]))
    with pytest.raises(SignatureError):
        combine.Signature.of([Place(2)], [Place(3)])


def test_free_variables_are_refused_by_decide():
    with pytest.raises(UnsupportedConstruct):
        combine.decide(parse("E x:vec. x > y"))


def test_block_limit():
    f = parse("E a:vec. E b:vec. E c:vec. a + b + c = 0")
    with pytest.raises(UnsupportedConstruct):
        combine.eliminate(f, max_block=2)
    assert combine.decide(f, max_block=3)
