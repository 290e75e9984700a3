"""Words over a commutative-semigroup alphabet and their two coproducts.

The quasi-shuffle algebra ``(H, qsh)`` carries the deconcatenation coproduct
(making it a Hopf algebra) and the internal coproduct ``gamma`` (making it a
bialgebra); ``H`` with deconcatenation is a right comodule-Hopf algebra over
``H`` with ``gamma``.  Letters default to positive integers under addition.
"""

from __future__ import annotations

import itertools
import operator
import re
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Any

from .linalg import LinComb, lc_extend, lc_sum, tensor

__all__ = [
    "Alphabet",
    "NAT",
    "Word",
    "EMPTY",
    "parse_word",
    "concat",
    "weight",
    "qsh",
    "qsh_many",
    "qsh_lc",
    "shuffle",
    "shuffle_lc",
    "deconcat",
    "gamma",
    "gamma_via_surjections",
    "compositions",
    "counit_delta",
    "counit_gamma",
    "antipode",
    "antipode_right",
    "append_letter",
    "all_words",
    "words_of_weight",
]


@dataclass(frozen=True)
class Alphabet:
    """A commutative semigroup of letters with a total order.

    ``combine`` must be associative and commutative; ``zero`` is the weight of
    the empty word and is not itself a letter.
    """

    name: str
    combine: Callable[[Any, Any], Any]
    zero: Any = 0
    key: Callable[[Any], Any] = lambda a: a

    def total(self, letters: Iterable) -> Any:
        letters = tuple(letters)
        if not letters:
            return self.zero
        return reduce(self.combine, letters)


NAT = Alphabet("N>0", operator.add, 0)


def _vector_add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def multi_index_alphabet(n: int) -> Alphabet:
    """Nonzero multi-indices in N^n under componentwise addition."""
    return Alphabet(f"N^{n}", _vector_add, (0,) * n)


class Word(tuple):
    """Immutable word; printed as ``[1.2.3]`` (``[]`` when empty)."""

    __slots__ = ()

    def __new__(cls, letters: Iterable = ()):
        return super().__new__(cls, letters)

    def __add__(self, other):
        return Word(tuple.__add__(self, other))

    def __getitem__(self, i):
        r = tuple.__getitem__(self, i)
        return Word(r) if isinstance(i, slice) else r

    def __str__(self) -> str:
        return "[" + ".".join(str(a) for a in self) + "]"

    def __repr__(self) -> str:
        return f"Word({self})"

    def weight(self, alphabet: Alphabet = NAT):
        return alphabet.total(self)


EMPTY = Word()

_WORD_RE = re.compile(r"^\[\s*(\d+(?:\s*\.\s*\d+)*)?\s*\]$")


def parse_word(text: str) -> Word:
    """Parse ``[a.b.c]`` with positive-integer letters."""
    m = _WORD_RE.match(text.strip())
    if not m:
        raise ValueError(f"malformed word: {text!r}")
    if m.group(1) is None:
        return EMPTY
    letters = tuple(int(x) for x in m.group(1).split("."))
    if any(a <= 0 for a in letters):
        raise ValueError(f"letters must be positive integers: {text!r}")
    return Word(letters)


def concat(u: Word, v: Word) -> Word:
    return Word(tuple(u) + tuple(v))


def weight(w: Word, alphabet: Alphabet = NAT):
    return alphabet.total(w)


def append_letter(b, w: Word) -> Word:
    """The operator appending the letter ``b`` on the right."""
    return Word(tuple(w) + (b,))


# --- products ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _qsh(u: Word, v: Word, alphabet: Alphabet, contract: bool) -> LinComb:
    if not u:
        return LinComb.basis(v)
    if not v:
        return LinComb.basis(u)
    a, b = u[0], v[0]
    acc: dict = {}

    def add(prefix, lc):
        for w, c in lc.items():
            key = Word((prefix,) + tuple(w))
            acc[key] = acc.get(key, 0) + c

    add(a, _qsh(u[1:], v, alphabet, contract))
    add(b, _qsh(u, v[1:], alphabet, contract))
    if contract:
        add(alphabet.combine(a, b), _qsh(u[1:], v[1:], alphabet, contract))
    return LinComb(acc)


def qsh(u: Word, v: Word, alphabet: Alphabet = NAT) -> LinComb:
    """Quasi-shuffle product of two words (three-term recursion)."""
    return _qsh(Word(u), Word(v), alphabet, True)


def shuffle(u: Word, v: Word) -> LinComb:
    """Ordinary shuffle: the quasi-shuffle without contraction terms."""
    return _qsh(Word(u), Word(v), NAT, False)


def qsh_lc(a: LinComb, b: LinComb, alphabet: Alphabet = NAT) -> LinComb:
    """Bilinear extension of the quasi-shuffle."""
    return lc_sum(qsh(u, v, alphabet) * (c * d) for u, c in a.items() for v, d in b.items())


def shuffle_lc(a: LinComb, b: LinComb) -> LinComb:
    return lc_sum(shuffle(u, v) * (c * d) for u, c in a.items() for v, d in b.items())


def qsh_many(words: Iterable[Word], alphabet: Alphabet = NAT) -> LinComb:
    acc = LinComb.basis(EMPTY)
    for w in words:
        acc = lc_extend(lambda x, w=w: qsh(x, w, alphabet), acc)
    return acc


# --- coproducts ----------------------------------------------------------------


def deconcat(w: Word) -> LinComb:
    """Deconcatenation coproduct: sum of ``w' (x) w''`` over all splits."""
    w = Word(w)
    return LinComb(((w[:i], w[i:]), 1) for i in range(len(w) + 1))


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    """Block sizes of all compositions of ``n`` (one empty composition for 0)."""
    if n == 0:
        yield ()
        return
    for cuts in itertools.product((False, True), repeat=n - 1):
        sizes, run = [], 1
        for cut in cuts:
            if cut:
                sizes.append(run)
                run = 1
            else:
                run += 1
        sizes.append(run)
        yield tuple(sizes)


def blocks_of(w: Word, sizes: tuple[int, ...]) -> list[Word]:
    out, i = [], 0
    for k in sizes:
        out.append(w[i : i + k])
        i += k
    return out


@lru_cache(maxsize=None)
def _gamma(w: Word, alphabet: Alphabet) -> LinComb:
    if not w:
        return LinComb.basis((EMPTY, EMPTY))
    acc: dict = {}
    for sizes in compositions(len(w)):
        blocks = blocks_of(w, sizes)
        left = Word(alphabet.total(b) for b in blocks)
        for right, c in qsh_many(blocks, alphabet).items():
            key = (left, right)
            acc[key] = acc.get(key, 0) + c
    return LinComb(acc)


def gamma(w: Word, alphabet: Alphabet = NAT) -> LinComb:
    """Internal coproduct: block-weight word (x) quasi-shuffle of the blocks.

    The empty word is sent to ``[] (x) []``.
    """
    return _gamma(Word(w), alphabet)


def gamma_via_surjections(w: Word, alphabet: Alphabet = NAT) -> LinComb:
    """Same coproduct, summed over nondecreasing surjections of positions."""
    from .surjections import apply_surjection, block, nondecreasing_surjections

    w = Word(w)
    if not w:
        return LinComb.basis((EMPTY, EMPTY))
    parts = []
    for sigma in nondecreasing_surjections(len(w)):
        s = max(sigma)
        left = apply_surjection(w, sigma, alphabet)
        right = qsh_many([block(w, sigma, k) for k in range(1, s + 1)], alphabet)
        parts.append(tensor(LinComb.basis(left), right))
    return lc_sum(parts)


def counit_delta(w: Word) -> int:
    return 1 if len(w) == 0 else 0


def counit_gamma(w: Word) -> int:
    """Counit of the internal coproduct: indicator of length at most one."""
    return 1 if len(w) <= 1 else 0


# --- antipode ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _antipode(w: Word, alphabet: Alphabet) -> LinComb:
    if not w:
        return LinComb.basis(EMPTY)
    acc = LinComb.basis(w, -1)
    for i in range(1, len(w)):
        acc = acc - qsh_lc(_antipode(w[:i], alphabet), LinComb.basis(w[i:]), alphabet)
    return acc


def antipode(w: Word, alphabet: Alphabet = NAT) -> LinComb:
    """Antipode from ``S * Id = u eps`` (left recursion)."""
    return _antipode(Word(w), alphabet)


@lru_cache(maxsize=None)
def _antipode_right(w: Word, alphabet: Alphabet) -> LinComb:
    if not w:
        return LinComb.basis(EMPTY)
    acc = LinComb.basis(w, -1)
    for i in range(1, len(w)):
        acc = acc - qsh_lc(LinComb.basis(w[:i]), _antipode_right(w[i:], alphabet), alphabet)
    return acc


def antipode_right(w: Word, alphabet: Alphabet = NAT) -> LinComb:
    """Antipode from ``Id * S = u eps``; agrees with :func:`antipode`."""
    return _antipode_right(Word(w), alphabet)


# --- enumeration -------------------------------------------------------------


def all_words(letters: Iterable[int], max_len: int, min_len: int = 0) -> list[Word]:
    letters = sorted(set(letters))
    out = []
    for n in range(min_len, max_len + 1):
        out.extend(Word(p) for p in itertools.product(letters, repeat=n))
    return out


def words_of_weight(n: int) -> list[Word]:
    """All words over positive integers of weight exactly ``n``."""
    if n == 0:
        return [EMPTY]
    return sorted(Word(c) for c in compositions(n))
