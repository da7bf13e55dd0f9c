from fractions import Fraction

import pytest

from placeq import gadgets
from placeq.oracle import eval_qf
from placeq.printer import to_text


def test_formulas():
    assert to_text(gadgets.emit("order")) == "L[inf](-x + y - 1, -x + y + 1)"
    assert to_text(gadgets.emit("nonneg")) == "L[inf](x - 1, x + 1)"
    assert "M[inf](x, y, z)" in to_text(gadgets.emit("mult"))


@pytest.mark.parametrize("kind,env,expected", [
    ("order", {"x": 2, "y": 5}, True),
    ("order", {"x": 5, "y": 2}, False),
    ("nonneg", {"x": Fraction(-1, 3)}, False),
    ("nonneg", {"x": 0}, True),
    ("mult", {"x": Fraction(2, 3), "y": -3, "z": -2}, True),
    ("mult", {"x": Fraction(2, 3), "y": -3, "z": 2}, False),
    ("mult", {"x": 0, "y": -3, "z": 0}, True),
])
def test_points(kind, env, expected):
    env = {k: Fraction(v) for k, v in env.items()}
    assert eval_qf(gadgets.emit(kind), env) is expected


@pytest.mark.parametrize("kind", gadgets.KINDS)
def test_verify(kind):
    r = gadgets.verify(kind, 1000, seed=0)
    assert r.ok, str(r)


def test_unknown_kind():
    with pytest.raises(ValueError):
        gadgets.emit("sqrt")
