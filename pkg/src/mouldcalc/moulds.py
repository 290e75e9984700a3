"""Moulds: rational-valued rules on words, and the operations dual to words.

A mould is stored as a rule ``Word -> value`` with a memo cache, because
composition evaluates its left factor at contracted letters that no fixed
table could anticipate.  Table-backed moulds are rules with a default.
"""

from __future__ import annotations

import json
import math
import random
from collections.abc import Callable, Iterable, Mapping
from fractions import Fraction
from typing import Any

from .checks import Verdict
from .linalg import LinComb, annihilator_form, format_rational, parse_rational, row_reduce
from .words import (
    EMPTY,
    NAT,
    Alphabet,
    Word,
    all_words,
    blocks_of,
    compositions,
    parse_word,
    qsh,
    qsh_many,
    shuffle,
    words_of_weight,
)

__all__ = [
    "Mould",
    "table_mould",
    "mould_from_json",
    "mould_mul",
    "mould_comp",
    "mould_diamond",
    "builtin",
    "BUILTINS",
    "is_symmetrel",
    "is_symmetral",
    "gen_symmetrel",
    "random_mould",
    "random_geometric_mould",
    "TruncatedWordSeries",
    "word_series",
    "iota",
    "substitute",
    "growth_audit",
    "audit_product_bound",
    "audit_composition_bound",
]


class Mould:
    """A total rule on words with memoization.

    ``rule`` must be pure.  The memo is a plain dict; concurrent inserts of
    the same key store the same value, so sharing across threads is harmless.
    """

    __slots__ = ("_rule", "_memo", "name", "alphabet", "table", "default")

    def __init__(self, rule: Callable[[Word], Any], name: str = "M", alphabet: Alphabet = NAT):
        self._rule = rule
        self._memo: dict = {}
        self.name = name
        self.alphabet = alphabet
        self.table: dict | None = None
        self.default: Any = 0

    def __call__(self, w) -> Any:
        w = Word(w)
        try:
            return self._memo[w]
        except KeyError:
            v = self._rule(w)
            self._memo[w] = v
            return v

    def on(self, lc: LinComb) -> Any:
        """Linear extension to a combination of words."""
        acc: Any = 0
        for w, c in lc.items():
            acc = acc + c * self(w)
        return acc

    def __repr__(self) -> str:
        return f"Mould({self.name})"

    def to_json(self, words: Iterable[Word] | None = None) -> dict:
        """Table form; non-table moulds need an explicit word list."""
        if words is None:
            if self.table is None:
                raise ValueError("rule-based mould: pass the words to tabulate")
            entries = self.table
            default = self.default
        else:
            entries = {Word(w): self(w) for w in words}
            default = 0
        return {
            "default": format_rational(default),
            "entries": {str(w): format_rational(v) for w, v in sorted(entries.items()) if v != default},
        }


def table_mould(entries: Mapping, default: Any = 0, name: str = "T", alphabet: Alphabet = NAT) -> Mould:
    table = {Word(w): v for w, v in entries.items()}
    m = Mould(lambda w: table.get(w, default), name, alphabet)
    m.table = table
    m.default = default
    return m


def mould_from_json(data: str | Mapping, name: str = "T") -> Mould:
    """Read ``{"default": "0", "entries": {"[1.2]": "1/2"}}``."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, Mapping) or "entries" not in data:
        raise ValueError("mould JSON needs an 'entries' object")
    default = parse_rational(str(data.get("default", "0")))
    entries = {parse_word(k): parse_rational(str(v)) for k, v in data["entries"].items()}
    return table_mould(entries, default, name)


# --- operations -------------------------------------------------------------


def mould_mul(M: Mould, N: Mould) -> Mould:
    """``(M x N)^w = sum over w = w'w'' of M^w' N^w''``."""

    def rule(w: Word):
        acc: Any = 0
        for i in range(len(w) + 1):
            acc = acc + M(w[:i]) * N(w[i:])
        return acc

    return Mould(rule, f"({M.name}x{N.name})", M.alphabet)


def _block_data(w: Word, alphabet: Alphabet):
    for sizes in compositions(len(w)):
        blocks = blocks_of(w, sizes)
        yield Word(alphabet.total(b) for b in blocks), blocks


def mould_comp(M: Mould, N: Mould) -> Mould:
    """Composition: block decompositions, ``N`` multiplicative over blocks.

    On the empty word the value is ``M^[]``.
    """
    alphabet = M.alphabet

    def rule(w: Word):
        if not w:
            return M(EMPTY)
        acc: Any = 0
        for top, blocks in _block_data(w, alphabet):
            term = M(top)
            for b in blocks:
                term = term * N(b)
            acc = acc + term
        return acc

    return Mould(rule, f"({M.name}o{N.name})", alphabet)


def mould_diamond(M: Mould, N: Mould) -> Mould:
    """The composition dual to the internal coproduct.

    ``N`` is applied linearly to the quasi-shuffle of the blocks.  On the
    empty word the value is ``M^[] N^[]``, dual to ``[] (x) []``.
    """
    alphabet = M.alphabet

    def rule(w: Word):
        if not w:
            return M(EMPTY) * N(EMPTY)
        acc: Any = 0
        for top, blocks in _block_data(w, alphabet):
            acc = acc + M(top) * N.on(qsh_many(blocks, alphabet))
        return acc

    return Mould(rule, f"({M.name}<>{N.name})", alphabet)


# --- builtins ---------------------------------------------------------------


def _eps(w: Word):
    return 1 if not w else 0


def _unit_letter(w: Word):
    return 1 if len(w) == 1 else 0


def _exp(w: Word):
    return Fraction(1, math.factorial(len(w)))


def _J(w: Word):
    return (-1) ** len(w)


def _one(w: Word):
    return 1


def _log(w: Word):
    if not w:
        return 0
    return Fraction((-1) ** (len(w) - 1), len(w))


BUILTINS: dict[str, Callable[[Word], Any]] = {
    "eps": _eps,
    "I": _unit_letter,
    "exp": _exp,
    "J": _J,
    "one": _one,
    "log": _log,
}


def builtin(name: str, alphabet: Alphabet = NAT) -> Mould:
    if name not in BUILTINS:
        raise KeyError(f"unknown builtin mould {name!r}; known: {', '.join(BUILTINS)}")
    return Mould(BUILTINS[name], name, alphabet)


# --- character predicates ---------------------------------------------------


def _pairs(max_len: int, letters, max_weight: int | None, alphabet: Alphabet):
    """Unordered pairs of nonempty words with ``|u| + |v| <= max_len``."""
    if max_weight is not None and alphabet is NAT:
        allowed = set(letters)
        ws = [
            w
            for n in range(1, max_weight)
            for w in words_of_weight(n)
            if len(w) < max_len and allowed.issuperset(w)
        ]
    else:
        ws = all_words(letters, max_len - 1, min_len=1)
        if max_weight is not None:
            ws = [w for w in ws if alphabet.total(w) <= max_weight]
    for i, u in enumerate(ws):
        for v in ws[i:]:
            if len(u) + len(v) > max_len:
                continue
            if max_weight is not None and alphabet.total(u) + alphabet.total(v) > max_weight:
                continue
            yield u, v


def _character_check(M: Mould, product, max_len: int, letters, max_weight) -> Verdict:
    if M(EMPTY) != 1:
        return Verdict(False, (EMPTY,), M(EMPTY), 1, note="value on the empty word must be 1")
    n = 0
    for u, v in _pairs(max_len, letters, max_weight, M.alphabet):
        lhs = M.on(product(u, v))
        rhs = M(u) * M(v)
        n += 1
        if lhs != rhs:
            return Verdict(False, (u, v), lhs, rhs, checked=n)
    return Verdict(True, checked=n)


def is_symmetrel(M: Mould, max_len: int = 4, letters: Iterable = (1, 2, 3), max_weight: int | None = None) -> Verdict:
    """``M(u qsh v) = M(u) M(v)`` for nonempty ``u, v`` with ``|u|+|v| <= max_len``, and ``M([]) = 1``."""
    return _character_check(M, lambda u, v: qsh(u, v, M.alphabet), max_len, letters, max_weight)


def is_symmetral(M: Mould, max_len: int = 4, letters: Iterable = (1, 2, 3), max_weight: int | None = None) -> Verdict:
    """Same check against the ordinary shuffle."""
    return _character_check(M, shuffle, max_len, letters, max_weight)


# --- random moulds ----------------------------------------------------------


def _rational(rng: random.Random, span: int = 9, den: int = 6) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_mould(seed: int, name: str | None = None, unit: Any = None) -> Mould:
    """A seeded pseudo-random rational mould defined on every word.

    Each value is drawn from a generator seeded by ``(seed, word)``, so the
    mould is an infinite table that is reproducible and order-independent.
    ``unit`` overrides the value on the empty word.
    """

    def rule(w: Word):
        if unit is not None and not w:
            return unit
        return _rational(random.Random(f"{seed}:{w}"))

    return Mould(rule, name or f"R{seed}")


def random_geometric_mould(seed: int, C: Fraction, kappa: Fraction, name: str | None = None) -> Mould:
    """Random mould with ``|M^w| <= C kappa^||w||`` by construction."""

    def rule(w: Word):
        rng = random.Random(f"geo:{seed}:{w}")
        t = Fraction(rng.randint(-12, 12), 12)
        return t * C * Fraction(kappa) ** sum(w)

    return Mould(rule, name or f"G{seed}")


def gen_symmetrel(seed: int, max_weight: int, alpha: Mapping | None = None) -> Mould:
    """A certified symmetrel table mould on all words of weight ``<= max_weight``.

    Builds, per weight, the span of quasi-shuffles of nonempty words, fills a
    seeded random linear form on the non-pivot coordinates and completes it
    to vanish on that span (an infinitesimal character ``alpha``).  The result
    is the convolution exponential ``sum_k alpha^{*k}/k!``.  An explicit
    ``alpha`` (word -> value) skips the random draw and is used as given.
    """
    if max_weight < 1:
        raise ValueError("max_weight must be at least 1")
    rng = random.Random(seed)
    a: dict[Word, Fraction] = {}
    if alpha is not None:
        a = {Word(w): Fraction(v) for w, v in alpha.items()}
    else:
        for n in range(1, max_weight + 1):
            basis = words_of_weight(n)
            products = []
            for k in range(1, n):
                for u in words_of_weight(k):
                    for v in words_of_weight(n - k):
                        if u <= v:
                            products.append(qsh(u, v))
            rows, pivots = row_reduce(products, basis)
            values = {w: _rational(rng) for w in basis}
            a.update(annihilator_form(rows, pivots, values))

    def alpha_of(w: Word) -> Fraction:
        return a.get(w, Fraction(0))

    table: dict[Word, Fraction] = {}
    for n in range(0, max_weight + 1):
        for w in words_of_weight(n):
            table[w] = _conv_exp(w, alpha_of)
    N = table_mould(table, 0, f"S{seed}")
    verdict = is_symmetrel(N, max_len=max_weight, letters=range(1, max_weight + 1), max_weight=max_weight)
    if not verdict:
        raise RuntimeError(f"gen_symmetrel self-check failed: {verdict.describe()}")
    return N


def _conv_exp(w: Word, alpha_of: Callable[[Word], Fraction]) -> Fraction:
    if not w:
        return Fraction(1)
    total = Fraction(0)
    for sizes in compositions(len(w)):
        term = Fraction(1, math.factorial(len(sizes)))
        for b in blocks_of(w, sizes):
            term *= alpha_of(b)
            if not term:
                break
        total += term
    return total


# --- truncated word series --------------------------------------------------


class TruncatedWordSeries:
    """A combination of words of weight at most ``W`` over positive integers."""

    __slots__ = ("W", "coeffs")

    def __init__(self, W: int, coeffs: LinComb):
        self.W = W
        self.coeffs = LinComb((w, c) for w, c in coeffs.items() if sum(w) <= W)

    def __mul__(self, other: TruncatedWordSeries) -> TruncatedWordSeries:
        W = min(self.W, other.W)
        acc: dict = {}
        for u, c in self.coeffs.items():
            wu = sum(u)
            if wu > W:
                continue
            for v, d in other.coeffs.items():
                if wu + sum(v) <= W:
                    key = u + v
                    acc[key] = acc.get(key, 0) + c * d
        return TruncatedWordSeries(W, LinComb(acc))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TruncatedWordSeries) and self.W == other.W and self.coeffs == other.coeffs

    def __str__(self) -> str:
        return str(self.coeffs)

    __repr__ = __str__


def _require_nat(M: Mould) -> None:
    if M.alphabet is not NAT:
        raise ValueError("word series need the positive-integer alphabet")


def word_series(M: Mould, W: int) -> TruncatedWordSeries:
    """``sum M^w w`` over all words of weight ``<= W``."""
    _require_nat(M)
    return TruncatedWordSeries(W, LinComb((w, M(w)) for n in range(W + 1) for w in words_of_weight(n)))


def iota(M: Mould, kappa: int) -> LinComb:
    """Image of the letter ``kappa``: ``sum over ||w|| = kappa of M^w w``."""
    _require_nat(M)
    return LinComb((w, M(w)) for w in words_of_weight(kappa))


def substitute(M: Mould, S: TruncatedWordSeries) -> TruncatedWordSeries:
    """Apply the concatenation endomorphism ``j^M`` letterwise, truncated."""
    _require_nat(M)
    W = S.W
    images = {k: TruncatedWordSeries(W, iota(M, k)) for k in range(1, W + 1)}
    acc = LinComb.zero()
    for w, c in S.coeffs.items():
        prod = TruncatedWordSeries(W, LinComb.basis(EMPTY))
        for letter in w:
            prod = prod * images[letter]
        acc = acc + prod.coeffs * c
    return TruncatedWordSeries(W, acc)


# --- growth -----------------------------------------------------------------


def _words_up_to_weight(W: int, nonempty: bool = False) -> list[Word]:
    return [w for n in range(1 if nonempty else 0, W + 1) for w in words_of_weight(n)]


def growth_audit(M: Mould, C, kappa, max_weight: int) -> Verdict:
    """``|M^w| <= C kappa^||w||`` for every word of weight ``<= max_weight``."""
    _require_nat(M)
    C, kappa = parse_rational(C), parse_rational(kappa)
    if C <= 0 or kappa <= 0:
        raise ValueError("C and kappa must be positive")
    return _audit(M, lambda w: C * kappa ** sum(w), max_weight)


def _audit(M: Mould, bound: Callable[[Word], Fraction], max_weight: int, nonempty: bool = False) -> Verdict:
    n = 0
    for w in _words_up_to_weight(max_weight, nonempty):
        v, b = abs(M(w)), bound(w)
        n += 1
        if v > b:
            return Verdict(False, w, v, b, checked=n)
    return Verdict(True, checked=n)


def audit_product_bound(M: Mould, N: Mould, C, kappa, C2, kappa2, max_weight: int) -> Verdict:
    """Both factors grow geometrically, and ``M x N`` obeys ``C C' (|w|+1) max(k,k')^||w||``."""
    for X, c, k in ((M, C, kappa), (N, C2, kappa2)):
        v = growth_audit(X, c, k, max_weight)
        if not v:
            v.note = f"hypothesis fails for {X.name}"
            return v
    C, kappa, C2, kappa2 = map(parse_rational, (C, kappa, C2, kappa2))
    K = max(kappa, kappa2)
    return _audit(mould_mul(M, N), lambda w: C * C2 * (len(w) + 1) * K ** sum(w), max_weight)


def audit_composition_bound(M: Mould, N: Mould, C, kappa, C2, kappa2, max_weight: int, corrected: bool = False) -> Verdict:
    """Both factors grow geometrically, and ``M o N`` obeys the composition bound.

    The plain bound is ``C (1+C')^(|w|-1) (k k')^||w||``; it only follows
    from the hypotheses when ``C' <= 1``.  ``corrected=True`` audits
    ``C C' (1+C')^(|w|-1) (k k')^||w||``, which always follows.
    Nonempty words only.
    """
    for X, c, k in ((M, C, kappa), (N, C2, kappa2)):
        v = growth_audit(X, c, k, max_weight)
        if not v:
            v.note = f"hypothesis fails for {X.name}"
            return v
    C, kappa, C2, kappa2 = map(parse_rational, (C, kappa, C2, kappa2))
    lead = C * C2 if corrected else C

    def bound(w: Word) -> Fraction:
        return lead * (1 + C2) ** (len(w) - 1) * (kappa * kappa2) ** sum(w)

    return _audit(mould_comp(M, N), bound, max_weight, nonempty=True)

