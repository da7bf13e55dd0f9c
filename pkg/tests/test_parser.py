import pytest

from placeq import formula as F
from placeq.errors import IllSortedError, InvalidPlaceError, ParseError, SignatureError
from placeq.parser import parse, parse_with_sorts
from placeq.printer import to_json, to_text
from placeq.terms import Place

ROUND_TRIP = [
    "E x:vec. L[2](x - 1, 3*y) & !(v[3](x) <= g + 1) | P[2](g)",
    "A x:vec. M[inf](x, y, 2*z) -> Q[5,3](x - 1/2)",
    "E g:val. g + g = v[7](x) | g = oo",
    "A x:vec. E y:vec. x < y & !(x = y)",
]


@pytest.mark.parametrize("text", ROUND_TRIP)
def test_print_parse_round_trip(text):
    f = parse(text)
    assert parse(to_text(f)) == f


def test_sort_inference():
    _, sorts = parse_with_sorts("v[2](x) <= g & y > 0")
    assert sorts == {"x": F.VEC, "g": F.VAL, "y": F.VEC}


def test_precedence():
    f = parse("a = 0 | b = 0 & c = 0")
    assert isinstance(f, F.Or)
    g = parse("a = 0 -> b = 0 -> c = 0")
    assert isinstance(g.rhs, F.Implies)


def test_comments_and_whitespace():
    assert parse("x = 1  # trailing\n") == parse("x=1")


@pytest.mark.parametrize("text,exc", [
    ("x = ", ParseError),
    ("L[4](x, y)", InvalidPlaceError),
    ("L[two](x, y)", ParseError),
    ("E x:vec. P[2](x)", IllSortedError),
    ("E g:val. L[2](g, 1)", IllSortedError),
    ("x * y = 1", ParseError),
])
def test_errors(text, exc):
    with pytest.raises(exc):
        parse(text)


def test_error_carries_position():
    with pytest.raises(ParseError) as e:
        parse("x = 1 &\n  & y = 2")
    assert e.value.span is not None and e.value.span.line == 2


def test_signature_restricts_places():
    with pytest.raises(SignatureError):
        parse("L[5](x, y)", [Place(2), Place(None)])


def test_json_tree():
    j = to_json(parse("E x:vec. x > 0"))
    assert j["kind"] == "exists" and j["var"] == "x"
