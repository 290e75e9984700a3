"""Text front end: operation expressions and mould expressions.

Operation expressions are an operator name followed by whitespace-separated
arguments, e.g. ``qsh [1] [2]`` or ``arborify 3(1,2)``.  Mould expressions
combine terms with the left-associative infix operators ``x`` (product),
``o`` (composition) and ``<>`` (diamond), with parentheses for grouping.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

from . import forests as fo
from . import moulds as mo
from . import surjections as sj
from . import words as wd
from .arbomoulds import (
    ArboMould,
    I_arbo,
    arbo_comp,
    arbo_diamond,
    arbo_from_json,
    arbo_mul,
    arborify_mould,
    eps_arbo,
    random_arbo_mould,
)
from .linalg import LinComb, format_rational

__all__ = ["ExprError", "eval_expr", "OPERATIONS", "parse_mould_expr", "parse_arbo_expr"]


class ExprError(ValueError):
    def __init__(self, msg: str, pos: int | None = None, text: str = ""):
        self.pos = pos
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{msg}{where}" + (f": {text!r}" if text else ""))


@dataclass(frozen=True)
class Token:
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    """Split on whitespace outside brackets and parentheses."""
    out, depth, start = [], 0, None
    for i, ch in enumerate(text + " "):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ExprError("unbalanced closing bracket", i, text)
        if ch.isspace() and depth == 0:
            if start is not None:
                out.append(Token(text[start:i], start))
                start = None
        elif start is None:
            start = i
    if depth != 0:
        raise ExprError("unbalanced opening bracket", len(text), text)
    return out


def _arg(kind: str, tok: Token, text: str):
    try:
        if kind == "word":
            return wd.parse_word(tok.text)
        if kind == "forest":
            return fo.parse_forest(tok.text)
        if kind == "tree":
            return fo.parse_tree(tok.text)
        if kind == "split":
            return sj.parse_split(tok.text)
        if kind == "packed":
            return tuple(int(c) for c in tok.text) if "," not in tok.text else tuple(int(c) for c in tok.text.split(","))
        if kind == "letter":
            v = int(tok.text)
            if v <= 0:
                raise ValueError("letters are positive")
            return v
    except ValueError as exc:
        raise ExprError(f"bad {kind} argument ({exc})", tok.pos, text) from None
    raise AssertionError(kind)


def _fiber_table(phi: sj.SplitSurjection) -> str:
    rows = [("eta", "sigma[eta]")] + [(str(e), sj.format_packed(s)) for e, s in sj.fiber_qsh(phi)]
    width = max(len(a) for a, _ in rows)
    return "\n".join(f"{a:<{width}}  {b}" for a, b in rows)


def _factor(phi: sj.SplitSurjection) -> str:
    sigma, delta = sj.factorize_wqsh(phi)
    return f"delta={delta} sigma={sigma}"


OPERATIONS: dict[str, tuple[tuple[str, ...], Callable[..., Any]]] = {
    "qsh": (("word", "word"), wd.qsh),
    "shuffle": (("word", "word"), wd.shuffle),
    "concat": (("word", "word"), lambda u, v: LinComb.basis(wd.concat(u, v))),
    "delta": (("word",), wd.deconcat),
    "gamma": (("word",), wd.gamma),
    "antipode": (("word",), wd.antipode),
    "std": (("packed",), lambda w: sj.format_packed(sj.standardize(w))),
    "factorize": (("split",), _factor),
    "fiber": (("split",), _fiber_table),
    "fiber-count": (("split",), lambda phi: len(sj.fiber_qsh(phi))),
    "wqsh": (("letter", "letter"), lambda p, q: "\n".join(str(e) for e in sj.enumerate_wqsh(p, q))),
    "arborify": (("forest",), fo.arborify),
    "arborify-simple": (("forest",), fo.arborify_simple),
    "forest-delta": (("forest",), fo.forest_delta),
    "forest-gamma": (("forest",), fo.forest_gamma),
    "forest-antipode": (("forest",), fo.forest_antipode),
    "aut": (("forest",), fo.aut),
    "bplus": (("letter", "forest"), lambda b, F: LinComb.basis(fo.Forest([fo.bplus(b, F)]))),
    "graft": (("tree", "tree"), fo.graft),
    "gl": (("forest", "forest"), fo.gl_product),
    "canon": (("forest",), lambda F: str(F)),
}


def eval_expr(text: str) -> Any:
    """Evaluate ``OP ARG...``; also ``mould(EXPR) WORD`` and ``arbomould(EXPR) FOREST``."""
    toks = tokenize(text)
    if not toks:
        raise ExprError("empty expression")
    head = toks[0]
    m = re.fullmatch(r"(mould|arbomould)\((.*)\)", head.text)
    if m:
        if len(toks) != 2:
            raise ExprError(f"{m.group(1)}(...) takes exactly one argument, got {len(toks) - 1}", head.pos, text)
        if m.group(1) == "mould":
            M = parse_mould_expr(m.group(2))
            return M(_arg("word", toks[1], text))
        A = parse_arbo_expr(m.group(2))
        return A(_arg("forest", toks[1], text))
    if head.text not in OPERATIONS:
        raise ExprError(f"unknown operation {head.text!r}", head.pos, text)
    kinds, fn = OPERATIONS[head.text]
    args = toks[1:]
    if len(args) != len(kinds):
        raise ExprError(f"{head.text} takes {len(kinds)} argument(s), got {len(args)}", head.pos, text)
    return fn(*(_arg(k, t, text) for k, t in zip(kinds, args)))


# --- mould expressions ------------------------------------------------------

_MTOK = re.compile(r"\s*(<>|\(|\)|[^\s()<>]+)")


def _mould_tokens(text: str) -> list[Token]:
    out, i = [], 0
    text = text.rstrip()
    while i < len(text):
        m = _MTOK.match(text, i)
        if not m:
            raise ExprError("cannot tokenize", i, text)
        out.append(Token(m.group(1), m.start(1)))
        i = m.end()
    return out


class _MouldParser:
    def __init__(self, text: str, term: Callable[[Token], Any], ops: dict):
        self.text = text
        self.toks = _mould_tokens(text)
        self.i = 0
        self.term = term
        self.ops = ops

    def parse(self):
        if not self.toks:
            raise ExprError("empty mould expression")
        v = self.expr()
        if self.i != len(self.toks):
            raise ExprError("unexpected token", self.toks[self.i].pos, self.text)
        return v

    def expr(self):
        v = self.atom()
        while self.i < len(self.toks) and self.toks[self.i].text in self.ops:
            op = self.ops[self.toks[self.i].text]
            self.i += 1
            v = op(v, self.atom())
        return v

    def atom(self):
        if self.i >= len(self.toks):
            raise ExprError("unexpected end of mould expression", len(self.text), self.text)
        tok = self.toks[self.i]
        if tok.text == "(":
            self.i += 1
            v = self.expr()
            if self.i >= len(self.toks) or self.toks[self.i].text != ")":
                raise ExprError("expected ')'", tok.pos, self.text)
            self.i += 1
            return v
        self.i += 1
        return self.term(tok)


def _mould_term(text: str, gen_weight: int) -> Callable[[Token], mo.Mould]:
    def term(tok: Token) -> mo.Mould:
        t = tok.text
        if t in mo.BUILTINS:
            return mo.builtin(t)
        m = re.fullmatch(r"(rand|gen):(-?\d+)", t)
        if m:
            seed = int(m.group(2))
            return mo.random_mould(seed) if m.group(1) == "rand" else mo.gen_symmetrel(seed, gen_weight)
        if t.startswith("@"):
            return mo.mould_from_json(Path(t[1:]).read_text(), Path(t[1:]).stem)
        raise ExprError(f"unknown mould {t!r}", tok.pos, text)

    return term


def parse_mould_expr(text: str, gen_weight: int = 8) -> mo.Mould:
    """Mould from terms ``eps I exp J one log rand:SEED gen:SEED @file.json``."""
    ops = {"x": mo.mould_mul, "o": mo.mould_comp, "<>": mo.mould_diamond}
    return _MouldParser(text, _mould_term(text, gen_weight), ops).parse()


def parse_arbo_expr(text: str, gen_weight: int = 8) -> ArboMould:
    """Arborescent mould from ``eps I rand:SEED @file.json`` or ``arb:TERM`` (arborified word mould)."""
    word_term = _mould_term(text, gen_weight)

    def term(tok: Token) -> ArboMould:
        t = tok.text
        if t == "eps":
            return eps_arbo()
        if t == "I":
            return I_arbo()
        if t.startswith("arb:"):
            return arborify_mould(word_term(Token(t[4:], tok.pos + 4)))
        m = re.fullmatch(r"rand:(-?\d+)", t)
        if m:
            return random_arbo_mould(int(m.group(1)))
        if t.startswith("@"):
            return arbo_from_json(Path(t[1:]).read_text(), Path(t[1:]).stem)
        raise ExprError(f"unknown arborescent mould {t!r}", tok.pos, text)

    ops = {"x": arbo_mul, "o": arbo_comp, "<>": arbo_diamond}
    return _MouldParser(text, term, ops).parse()


def to_json(value: Any) -> str:
    if isinstance(value, LinComb):
        return value.dumps()
    if hasattr(value, "denominator") and not isinstance(value, bool):
        return json.dumps({"value": format_rational(value)})
    return json.dumps({"text": str(value)})


def to_text(value: Any) -> str:
    if isinstance(value, LinComb):
        return str(value)
    if hasattr(value, "denominator") and not isinstance(value, bool):
        return format_rational(value)
    return str(value)
