"""Command-line interface.

Exit status: 0 on success (expected failures count as success), 1 when a
check or predicate fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import moulds as mo
from . import qsym as qs
from . import words as wd
from .expr import ExprError, eval_expr, parse_arbo_expr, parse_mould_expr, to_json, to_text
from .arbomoulds import arborify_mould
from .forests import all_forests, parse_forest
from .linalg import format_rational
from .suites import SUITES, Bounds, BoundsTooLarge, render_reports, run_suite


class UsageError(Exception):
    pass


def _letters(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"letters must be comma-separated integers: {text!r}") from None
    if not out or any(a <= 0 for a in out):
        raise argparse.ArgumentTypeError("letters must be positive integers")
    return out


def _add_bounds(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-len", type=int, default=None, help="longest word in checks")
    p.add_argument("--max-weight", type=int, default=None, help="weight bound for series and generated moulds")
    p.add_argument("--max-vertices", type=int, default=None, help="forest size bound")
    p.add_argument("--letters", type=_letters, default=None, help="letters or decorations, e.g. 1,2,3")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="emit JSON")


def _bounds(args) -> Bounds:
    return Bounds(args.letters, args.max_len, args.max_weight, args.max_vertices, args.seed)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mouldcalc", description="Exact computations with words, forests and moulds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate an operation, e.g. 'qsh [1] [2]'")
    p.add_argument("expr", nargs="+")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("check", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=SUITES + ("all",))
    p.add_argument("--timings", action="store_true", help="include wall-clock durations")
    _add_bounds(p)

    p = sub.add_parser("mould", help="mould operations")
    msub = p.add_subparsers(dest="action", required=True)
    for name in ("eval",):
        q = msub.add_parser(name)
        q.add_argument("mould")
        q.add_argument("words", nargs="*")
        _add_bounds(q)
    for name in ("mul", "comp", "diamond"):
        q = msub.add_parser(name)
        q.add_argument("left")
        q.add_argument("right")
        q.add_argument("words", nargs="*")
        _add_bounds(q)
    for name in ("check-symmetrel", "check-symmetral"):
        q = msub.add_parser(name)
        q.add_argument("mould")
        _add_bounds(q)
    q = msub.add_parser("gen-symmetrel")
    _add_bounds(q)
    q = msub.add_parser("growth-audit")
    q.add_argument("mould")
    q.add_argument("--C", required=True)
    q.add_argument("--kappa", required=True)
    _add_bounds(q)

    p = sub.add_parser("arbomould", help="arborescent mould operations")
    asub = p.add_subparsers(dest="action", required=True)
    q = asub.add_parser("eval")
    q.add_argument("mould")
    q.add_argument("forests", nargs="*")
    _add_bounds(q)
    for name in ("mul", "comp", "diamond"):
        q = asub.add_parser(name)
        q.add_argument("left")
        q.add_argument("right")
        q.add_argument("forests", nargs="*")
        _add_bounds(q)
    q = asub.add_parser("arborify")
    q.add_argument("mould", help="word mould expression")
    q.add_argument("forests", nargs="*")
    _add_bounds(q)
    q = asub.add_parser("check")
    q.add_argument("--suite", default="arbomould-algebra", choices=SUITES + ("all",))
    q.add_argument("--timings", action="store_true")
    _add_bounds(q)

    p = sub.add_parser("qsym", help="quasi-symmetric realization")
    p.add_argument("action", choices=("Q", "sum", "product"))
    p.add_argument("word")
    p.add_argument("--alphabet", nargs="+", required=True, help="declarations such as X=3 Y=3")
    p.add_argument("--json", action="store_true")
    return parser


def _emit(value, as_json: bool) -> None:
    print(to_json(value) if as_json else to_text(value))


def _word_list(args, words: Sequence[str]) -> list:
    if words:
        return [wd.parse_word(w) for w in words]
    return wd.all_words(args.letters or (1, 2, 3), args.max_len if args.max_len is not None else 4)


def _print_values(keys, fn, as_json: bool) -> None:
    if as_json:
        print(json.dumps({"default": "0", "entries": {str(k): format_rational(fn(k)) for k in keys}}))
    else:
        for k in keys:
            print(f"{k}: {format_rational(fn(k))}")


def _cmd_mould(args) -> int:
    W = args.max_weight if args.max_weight is not None else 8
    if args.action == "gen-symmetrel":
        print(json.dumps(mo.gen_symmetrel(args.seed, W).to_json()))
        return 0
    if args.action in ("mul", "comp", "diamond"):
        op = {"mul": "x", "comp": "o", "diamond": "<>"}[args.action]
        M = parse_mould_expr(f"({args.left}) {op} ({args.right})", W)
    else:
        M = parse_mould_expr(args.mould, W)
    if args.action in ("eval", "mul", "comp", "diamond"):
        _print_values(_word_list(args, args.words), M, args.json)
        return 0
    if args.action in ("check-symmetrel", "check-symmetral"):
        pred = mo.is_symmetrel if args.action == "check-symmetrel" else mo.is_symmetral
        v = pred(M, args.max_len if args.max_len is not None else 4, args.letters or (1, 2, 3), args.max_weight)
        return _verdict_out(v, args.json)
    if args.action == "growth-audit":
        v = mo.growth_audit(M, args.C, args.kappa, W)
        return _verdict_out(v, args.json)
    raise UsageError(args.action)


def _verdict_out(v, as_json: bool) -> int:
    if as_json:
        out = {"result": v.ok, "checked": v.checked}
        if not v.ok:
            out["counterexample"] = v.describe()
        print(json.dumps(out))
    else:
        print("true" if v.ok else "false")
        if not v.ok:
            print(v.describe())
    return 0 if v.ok else 1


def _forest_list(args, forests: Sequence[str]) -> list:
    if forests:
        return [parse_forest(f) for f in forests]
    return all_forests(args.max_vertices if args.max_vertices is not None else 4, args.letters or (1, 2))


def _cmd_arbomould(args) -> int:
    W = args.max_weight if args.max_weight is not None else 8
    if args.action == "check":
        return _run_check(args)
    if args.action == "arborify":
        A = arborify_mould(parse_mould_expr(args.mould, W))
    elif args.action in ("mul", "comp", "diamond"):
        op = {"mul": "x", "comp": "o", "diamond": "<>"}[args.action]
        A = parse_arbo_expr(f"({args.left}) {op} ({args.right})", W)
    else:
        A = parse_arbo_expr(args.mould, W)
    _print_values(_forest_list(args, args.forests), A, args.json)
    return 0


def _run_check(args) -> int:
    reports = run_suite(args.suite, _bounds(args))
    print(render_reports(reports, args.json, args.timings))
    return 0 if all(r.ok for r in reports) else 1


def _cmd_qsym(args) -> int:
    alphabets = [qs.parse_alphabet_spec(s) for s in args.alphabet]
    w = wd.parse_word(args.word)
    if args.action == "Q":
        if len(alphabets) != 1:
            raise UsageError("Q takes exactly one alphabet")
        _emit(qs.Q(w, alphabets[0][1]), args.json)
        return 0
    if len(alphabets) != 2:
        raise UsageError(f"{args.action} takes two alphabets")
    X, Y = alphabets[0][1], alphabets[1][1]
    if args.action == "sum":
        got, want = qs.extract_tensor(qs.Q(w, X + Y), X, Y), wd.deconcat(w)
    else:
        got, want = qs.extract_tensor(qs.split_pairs(qs.Q(w, X * Y)), X, Y), wd.gamma(w)
    if args.json:
        print(json.dumps({"extracted": got.to_json(), "matches": got == want}))
    else:
        print(got)
        print(f"matches {'deconcatenation' if args.action == 'sum' else 'gamma'}: {'true' if got == want else 'false'}")
    return 0 if got == want else 1


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "eval":
            _emit(eval_expr(" ".join(args.expr)), args.json)
            return 0
        if args.command == "check":
            return _run_check(args)
        if args.command == "mould":
            return _cmd_mould(args)
        if args.command == "arbomould":
            return _cmd_arbomould(args)
        if args.command == "qsym":
            return _cmd_qsym(args)
    except (ExprError, UsageError, BoundsTooLarge, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    parser.error(f"unknown command {args.command}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
