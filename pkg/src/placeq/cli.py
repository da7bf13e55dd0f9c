"""``placeq`` command-line driver.

Exit codes: 0 success, 1 internal error, 2 parse error, 3 unsupported
construct or signature violation, 4 ill-sorted input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Dict, List, Optional

from . import combine
from . import formula as F
from .errors import ParseError, PlaceqError
from .gadgets import KINDS, emit, verify
from .interpret import DIRECTIONS, to_one_sorted, translate
from .oracle import eval_bounded, eval_qf
from .parser import parse_with_sorts
from .printer import to_json, to_text
from .rational import INF, format_rat, format_val, parse_rat


def _read_input(args) -> str:
    if args.input is None or args.input == "-":
        return sys.stdin.read()
    if os.path.isfile(args.input):
        with open(args.input, encoding="utf-8") as fh:
            return fh.read()
    return args.input


def _signature(args, f: Optional[F.Formula] = None) -> Optional[combine.Signature]:
    if args.places is None:
        if args.m_places is not None:
            raise PlaceqError("--m-places needs --places")
        return combine.Signature.for_formula(f) if f is not None else None
    return combine.Signature.parse(args.places, args.m_places)


def _load(args):
    text = _read_input(args)
    sig = _signature(args)
    f, sorts = parse_with_sorts(text, sig.s0 if sig else None)
    return f, sorts, sig or combine.Signature.for_formula(f)


def parse_assignment(text: str, sorts: Dict[str, str]) -> Dict[str, object]:
    """``"x=3/4,y=2,g=oo"``; value variables take integers or ``oo``."""
    out: Dict[str, object] = {}
    for part in filter(None, (s.strip() for s in text.split(","))):
        name, sep, value = part.partition("=")
        if not sep:
            raise ParseError(f"bad assignment {part!r}; expected name=value")
        name, value = name.strip(), value.strip()
        try:
            if sorts.get(name) == F.VAL:
                out[name] = INF if value == "oo" else int(value)
            else:
                out[name] = parse_rat(value)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad value {value!r} for {name}") from None
    return out


def _emit(args, text_value: str, json_value: dict) -> None:
    if args.format == "json":
        print(json.dumps(json_value, sort_keys=True))
    else:
        print(text_value)


def _formula_out(args, f: F.Formula) -> None:
    _emit(args, to_text(f), {"formula": to_text(f)})


def cmd_decide(args) -> int:
    f, _, sig = _load(args)
    v = combine.decide(f, sig, args.max_block)
    _emit(args, "true" if v else "false", {"verdict": v})
    return 0


def cmd_eliminate(args) -> int:
    f, _, sig = _load(args)
    g = combine.eliminate(f, sig, args.max_block)
    try:
        g = to_one_sorted(g)
    except PlaceqError:
        pass
    _formula_out(args, g)
    return 0


def cmd_eval(args) -> int:
    f, sorts, _ = _load(args)
    a = parse_assignment(args.assign or "", sorts)
    if F.is_quantifier_free(f):
        v = eval_qf(f, a)
    else:
        v = eval_bounded(f, a, args.bound)
    _emit(args, "true" if v else "false", {"verdict": v})
    return 0


def _fmt(v) -> str:
    return format_val(v) if v is INF or isinstance(v, int) else format_rat(v)


def cmd_witness(args) -> int:
    f, _, sig = _load(args)
    w = {k: _fmt(v) for k, v in combine.witness(f, sig).items()}
    if args.format == "json":
        print(json.dumps({"witness": w}, sort_keys=True))
    else:
        print(json.dumps(w, sort_keys=True))
    return 0


def cmd_translate(args) -> int:
    f, _, _ = _load(args)
    _formula_out(args, translate(f, args.to))
    return 0


def cmd_gadget(args) -> int:
    f = emit(args.kind)
    if args.verify:
        r = verify(args.kind, args.samples, args.seed)
        if args.format == "json":
            print(json.dumps({"formula": to_text(f), "verdict": r.ok}, sort_keys=True))
        else:
            print(to_text(f))
            print(r)
        return 0 if r.ok else 1
    _formula_out(args, f)
    return 0


def cmd_selftest(args) -> int:
    from .acceptance import run_suite
    report = run_suite(seed=args.seed)
    if args.format == "json":
        print(json.dumps(report.as_json(), sort_keys=True))
    else:
        print(report.text())
    return 0 if report.ok else 1


def cmd_ast(args) -> int:
    f, _, _ = _load(args)
    print(json.dumps(to_json(f), sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    seed_default = int(os.environ.get("PLACEQ_SEED", "0"))
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--places", help='places with L, e.g. "2,3,inf"')
    common.add_argument("--m-places", help='finite places with M and Q, e.g. "2,3"')
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=seed_default)
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--bound", type=int, default=50, help="search bound N")
    common.add_argument("--max-block", type=int, default=combine.DEFAULT_MAX_BLOCK)

    p = argparse.ArgumentParser(prog="placeq", description="Decision procedures for "
                                "linear Q with valuation predicates.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, with_input=True):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if with_input:
            sp.add_argument("input", nargs="?",
                            help="formula text or file name (default: stdin)")
        sp.set_defaults(fn=fn)
        return sp

    add("decide", cmd_decide, "decide a sentence")
    add("eliminate", cmd_eliminate, "quantifier-free equivalent")
    add("eval", cmd_eval, "evaluate under an assignment").add_argument(
        "--assign", help='e.g. "x=3/4,y=2"')
    add("witness", cmd_witness, "witness for a leading existential block")
    add("translate", cmd_translate, "translate between languages").add_argument(
        "--to", choices=DIRECTIONS, required=True)
    g = add("gadget", cmd_gadget, "emit a definability formula", with_input=False)
    g.add_argument("kind", choices=KINDS)
    g.add_argument("--verify", action="store_true")
    add("selftest", cmd_selftest, "run the acceptance suite", with_input=False)
    add("ast", cmd_ast, "print the syntax tree as JSON")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except PlaceqError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except RecursionError:
        print("error: formula too deeply nested", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
