import pytest

from placeq import combine, presburger as PB
from placeq import formula as F
from placeq.parser import parse, parse_with_sorts
from placeq.rational import INF

# sentences over the value sort alone
SENTENCES = [
    ("A h:val. E g:val. g + g = h | g + g = h + 1", True),
    ("A h:val. E g:val. 3*g = h", False),
    ("E g:val. g < 0 & P[3](g) & P[2](g + 1)", True),
    ("A g:val. g <= oo", True),
    ("E g:val. g = oo & g + 1 = g", True),
    ("A g:val. g < oo -> g < g + 1", True),
    ("E g:val. 2 <= g & g <= 2 & P[2](g)", True),
    ("E g:val. 3 <= g & g <= 3 & P[2](g)", False),
]


@pytest.mark.parametrize("text,expected", SENTENCES)
def test_value_sentences(text, expected):
    f = parse(text)
    assert combine.decide(f) is expected
    assert PB.decide_ground_val(combine.eliminate(f)) is expected


def test_elimination_agrees_on_a_range():
    f = parse("E g:val. 2*g + 1 <= h & P[3](g - h)")
    g = combine.eliminate(f)
    assert F.is_quantifier_free(g)
    for h in list(range(-12, 13)) + [INF]:
        want = any(F.evaluate(f.body, {}, {"g": k, "h": h})
                   for k in list(range(-20, 20)) + [INF])
        assert F.evaluate(g, {}, {"h": h}) == want, h


def test_model_finding():
    f, _ = parse_with_sorts("3 <= g & g <= 5 & P[4](g)", free_sorts={"g": F.VAL})
    (clause,) = F.dnf_clauses(f)
    assert PB.presburger_model(PB.literals_to_conjs(clause), ["g"]) == {"g": 4}
    f, _ = parse_with_sorts("3 <= g & g <= 5 & P[7](g)", free_sorts={"g": F.VAL})
    (clause,) = F.dnf_clauses(f)
    assert PB.presburger_model(PB.literals_to_conjs(clause), ["g"]) is None
