"""Arborescent moulds: rational-valued rules on decorated forests.

The product is dual to the admissible-cut coproduct with the left factor on
the crown leg, which is the orientation under which arborification turns the
word-level product into the forest-level one and under which S-series
multiply by the Grossman-Larson product.
"""

from __future__ import annotations

import json
import random
from collections.abc import Callable, Iterable, Mapping
from fractions import Fraction
from typing import Any

from .checks import Verdict
from .forests import (
    UNIT,
    Forest,
    Tree,
    all_forests,
    arborify,
    aut,
    covering_subforests,
    forest_delta,
    forest_gamma,
    gl_product,
    parse_forest,
)
from .linalg import LinComb, parse_rational
from .moulds import Mould
from .words import NAT, Alphabet, Word, qsh

__all__ = [
    "ArboMould",
    "arbo_table",
    "arbo_from_json",
    "arborify_mould",
    "arbo_mul",
    "arbo_mul_trunk_first",
    "arbo_diamond",
    "arbo_comp",
    "eps_arbo",
    "I_arbo",
    "is_separative",
    "random_arbo_mould",
    "TruncatedSSeries",
    "s_series",
    "gl_series_mul",
    "remark_difference",
]


class ArboMould:
    """A total memoized rule on forests."""

    __slots__ = ("_rule", "_memo", "name", "alphabet")

    def __init__(self, rule: Callable[[Forest], Any], name: str = "A", alphabet: Alphabet = NAT):
        self._rule = rule
        self._memo: dict = {}
        self.name = name
        self.alphabet = alphabet

    def __call__(self, F) -> Any:
        if isinstance(F, Tree):
            F = Forest([F])
        elif not isinstance(F, Forest):
            F = Forest(F)
        try:
            return self._memo[F]
        except KeyError:
            v = self._rule(F)
            self._memo[F] = v
            return v

    def on(self, lc: LinComb) -> Any:
        acc: Any = 0
        for F, c in lc.items():
            acc = acc + c * self(F)
        return acc

    def __repr__(self) -> str:
        return f"ArboMould({self.name})"


def arbo_table(entries: Mapping, default: Any = 0, name: str = "T") -> ArboMould:
    table = {Forest(F): v for F, v in entries.items()}
    return ArboMould(lambda F: table.get(F, default), name)


def arbo_from_json(data: str | Mapping, name: str = "T") -> ArboMould:
    """Read ``{"default": "0", "entries": {"3(1,2)": "1/2", "()": "1"}}``."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, Mapping) or "entries" not in data:
        raise ValueError("arborescent mould JSON needs an 'entries' object")
    default = parse_rational(str(data.get("default", "0")))
    entries = {parse_forest(k): parse_rational(str(v)) for k, v in data["entries"].items()}
    return arbo_table(entries, default, name)


def arborify_mould(M: Mould) -> ArboMould:
    """``F -> M(arborify(F))``."""
    return ArboMould(lambda F: M.on(arborify(F, M.alphabet)), f"{M.name}_<", M.alphabet)


def arbo_mul(M: ArboMould, N: ArboMould) -> ArboMould:
    """``(M x N)^F = sum over admissible cuts of M^crown N^trunk``."""

    def rule(F: Forest):
        acc: Any = 0
        for (crown, trunk), c in forest_delta(F).items():
            acc = acc + c * M(crown) * N(trunk)
        return acc

    return ArboMould(rule, f"({M.name}x{N.name})", M.alphabet)


def arbo_mul_trunk_first(M: ArboMould, N: ArboMould) -> ArboMould:
    """The opposite pairing, ``M`` on the trunk; kept to document that it fails."""

    def rule(F: Forest):
        acc: Any = 0
        for (crown, trunk), c in forest_delta(F).items():
            acc = acc + c * M(trunk) * N(crown)
        return acc

    return ArboMould(rule, f"({M.name}x'{N.name})", M.alphabet)


def arbo_diamond(M: ArboMould, N: ArboMould) -> ArboMould:
    """``sum over covering subforests G of M^{F/G} N^G`` (``M^1 N^1`` on the unit)."""
    alphabet = M.alphabet

    def rule(F: Forest):
        acc: Any = 0
        for (Q, G), c in forest_gamma(F, alphabet).items():
            acc = acc + c * M(Q) * N(G)
        return acc

    return ArboMould(rule, f"({M.name}<>{N.name})", alphabet)


def arbo_comp(M: ArboMould, N: ArboMould) -> ArboMould:
    """Covering subforests with ``N`` multiplicative over the blocks; ``M^1`` on the unit."""
    alphabet = M.alphabet

    def rule(F: Forest):
        if not F:
            return M(UNIT)
        acc: Any = 0
        for G, Q in covering_subforests(F, alphabet):
            term = M(Q)
            for t in G:
                term = term * N(Forest([t]))
            acc = acc + term
        return acc

    return ArboMould(rule, f"({M.name}o{N.name})", alphabet)


def eps_arbo() -> ArboMould:
    return ArboMould(lambda F: 1 if not F else 0, "eps")


def I_arbo() -> ArboMould:
    """1 on single-vertex forests, 0 elsewhere: the right unit of composition."""
    return ArboMould(lambda F: 1 if F.size() == 1 else 0, "I_arbo")


def is_separative(N: ArboMould, max_vertices: int = 4, letters: Iterable = (1, 2)) -> Verdict:
    """``N^1 = 1`` and ``N^{FG} = N^F N^G`` for nonempty ``F, G`` within the bound."""
    fs = all_forests(max_vertices - 1, letters, min_vertices=1)
    n = 0
    for i, F in enumerate(fs):
        for G in fs[i:]:
            if F.size() + G.size() > max_vertices:
                continue
            lhs, rhs = N(F * G), N(F) * N(G)
            n += 1
            if lhs != rhs:
                return Verdict(False, (F, G), lhs, rhs, checked=n)
    if N(UNIT) != 1:
        return Verdict(False, (UNIT,), N(UNIT), 1, checked=n, note="value on the empty forest must be 1")
    return Verdict(True, checked=n)


def random_arbo_mould(seed: int, name: str | None = None, unit: Any = None) -> ArboMould:
    """Seeded rational values on every forest, reproducible per forest."""

    def rule(F: Forest):
        if unit is not None and not F:
            return unit
        rng = random.Random(f"arbo:{seed}:{F}")
        return Fraction(rng.randint(-9, 9), rng.randint(1, 6))

    return ArboMould(rule, name or f"A{seed}")


# --- S-series ---------------------------------------------------------------


class TruncatedSSeries:
    """``sum M^F / |Aut F| F`` over forests with at most ``V`` vertices."""

    __slots__ = ("V", "coeffs")

    def __init__(self, V: int, coeffs: LinComb):
        self.V = V
        self.coeffs = LinComb((F, c) for F, c in coeffs.items() if F.size() <= V)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TruncatedSSeries) and self.V == other.V and self.coeffs == other.coeffs

    def __str__(self) -> str:
        return str(self.coeffs)

    __repr__ = __str__


def s_series(M: ArboMould, V: int, letters: Iterable = (1, 2)) -> TruncatedSSeries:
    return TruncatedSSeries(V, LinComb((F, Fraction(M(F)) / aut(F)) for F in all_forests(V, letters)))


def gl_series_mul(S: TruncatedSSeries, T: TruncatedSSeries) -> TruncatedSSeries:
    V = min(S.V, T.V)
    acc: dict = {}
    for F, c in S.coeffs.items():
        for G, d in T.coeffs.items():
            if F.size() + G.size() > V:
                continue
            for H, e in gl_product(F, G).items():
                acc[H] = acc.get(H, 0) + c * d * e
    return TruncatedSSeries(V, LinComb(acc))


# --- the two-vertex discrepancy ---------------------------------------------


def remark_difference(a: int, b: int):
    """Both sides of the discrepancy between arborified and arborescent composition.

    With symbolic moulds ``M, N`` on words, returns ``(lhs, rhs)`` where
    ``lhs = (M o N)_<(F) - (M_< o N_<)(F)`` at the forest ``F`` of two
    isolated vertices decorated ``a`` and ``b``, and
    ``rhs = M[a+b] (N(a qsh b) - N[a] N[b])``.  Both are sympy expressions.
    """
    import sympy

    from .moulds import mould_comp

    def sym(prefix: str) -> Mould:
        return Mould(lambda w: sympy.Symbol(f"{prefix}{w}"), prefix)

    M, N = sym("M"), sym("N")
    F = Forest(parse_forest(f"{a}*{b}"))
    lhs = arborify_mould(mould_comp(M, N))(F) - arbo_comp(arborify_mould(M), arborify_mould(N))(F)
    rhs = M(Word([a + b])) * (N.on(qsh(Word([a]), Word([b]))) - N(Word([a])) * N(Word([b])))
    return sympy.expand(lhs), sympy.expand(rhs)
