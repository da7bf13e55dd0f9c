import io
import json

import pytest

from placeq.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_decide(capsys):
    assert run(capsys, "decide", "--places", "2", "E x:vec. v[2](x)=0 & v[2](x-1)=0") == (0, "false", "")
    code, out, _ = run(capsys, "decide", "--format", "json", "A x:vec. L[3](x, x)")
    assert code == 0 and json.loads(out) == {"verdict": True}


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "--places", "2,3", "E y:vec. 3 <= v[2](y-1) & 2 <= v[3](y)")
    assert code == 0 and json.loads(out) == {"y": "9"}
    code, out, _ = run(capsys, "witness", "--format", "json", "E y:vec. v[2](y) = -1 & v[3](y) = 1")
    assert json.loads(out) == {"witness": {"y": "3/2"}}


def test_eliminate_and_translate(capsys):
    code, out, _ = run(capsys, "eliminate", "E x:vec. x > y & x < z")
    assert (code, out) == (0, "y < z")
    code, out, _ = run(capsys, "translate", "--to", "two-sorted", "L[2](x, y)")
    assert (code, out) == (0, "v[2](y) <= v[2](x)")


def test_eval(capsys):
    assert run(capsys, "eval", "--assign", "x=4,y=2", "L[2](x, y)")[:2] == (0, "true")
    assert run(capsys, "eval", "--assign", "y=1/2", "E x:vec. v[3](x - y) = 4")[:2] == (0, "true")
    assert run(capsys, "eval", "--assign", "x=abc", "x > 0")[0] == 2


@pytest.mark.parametrize("argv,code", [
    (["decide", "--places", "inf", "M[inf](x,x,x)"], 3),
    (["decide", "E x:vec. M[inf](x, x, x)"], 3),
    (["decide", "--places", "2", "E x:vec. L[3](x, 1)"], 3),
    (["decide", "E x:vec. x > y"], 3),
    (["decide", "E x:vec. x >"], 2),
    (["decide", "E x:vec. P[2](x)"], 4),
    (["decide", "E x:vec. L[6](x, 1)"], 2),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code and err.startswith("error:")


def test_parse_error_reports_position(capsys):
    _, _, err = run(capsys, "decide", "E x:vec. x >")
    assert "line 1, column" in err


def test_stdin_and_files(capsys, monkeypatch, tmp_path):
    monkeypatch.setattr("sys.stdin", io.StringIO("A x:vec. L[2](x, x)\n"))
    assert run(capsys, "decide")[:2] == (0, "true")
    p = tmp_path / "f.txt"
    p.write_text("# comment\nE x:vec. x = 1\n")
    assert run(capsys, "decide", str(p))[:2] == (0, "true")


def test_gadget(capsys):
    code, out, _ = run(capsys, "gadget", "order")
    assert (code, out) == (0, "L[inf](-x + y - 1, -x + y + 1)")
    code, out, _ = run(capsys, "gadget", "mult", "--verify", "--samples", "200", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] is True


def test_output_is_deterministic(capsys):
    argv = ["eliminate", "E x:vec. v[2](x - y) = 0 & v[2](x) = 0 & x > z"]
    assert run(capsys, *argv) == run(capsys, *argv)
