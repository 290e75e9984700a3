"""Polynomial realization of words by Omega-quasi-symmetric functions.

Over a finite totally ordered alphabet ``X`` the word ``w = w1...wr`` is
realized as ``Q_w(X) = sum_{x1 < ... < xr} x1^w1 ... xr^wr``, with exponents
multiplying through the semigroup law.  Ordinal sum and lexicographic product
of alphabets then realize deconcatenation and the internal coproduct without
reference to either formula, which is what makes this module an oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any

from .linalg import LinComb, lc_sum, row_reduce
from .words import NAT, Alphabet, Word, blocks_of, compositions

__all__ = [
    "OrderedAlphabet",
    "Monomial",
    "poly_mul",
    "Q",
    "Q_lc",
    "split_pairs",
    "q_product_check",
    "Q_on_sum",
    "Q_on_product",
    "extract_tensor",
    "extract_words",
    "faithful",
]


def _sym_str(x: Any) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(_sym_str(y) for y in x) + ")"
    return str(x)


@dataclass(frozen=True)
class OrderedAlphabet:
    """A finite totally ordered list of distinct variable symbols."""

    symbols: tuple

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")

    @classmethod
    def named(cls, name: str, n: int) -> OrderedAlphabet:
        return cls(tuple(f"{name.lower()}{i}" for i in range(1, n + 1)))

    def __len__(self) -> int:
        return len(self.symbols)

    def __add__(self, other: OrderedAlphabet) -> OrderedAlphabet:
        """Ordinal sum: every symbol of ``other`` is bigger than those of ``self``."""
        if set(base_symbols(self)) & set(base_symbols(other)):
            raise ValueError("symbol collision in ordinal sum")
        return OrderedAlphabet(self.symbols + other.symbols)

    def __mul__(self, other: OrderedAlphabet) -> OrderedAlphabet:
        """Cartesian product with the lexicographic order."""
        if set(base_symbols(self)) & set(base_symbols(other)):
            raise ValueError("symbol collision in alphabet product")
        return OrderedAlphabet(tuple((x, y) for x in self.symbols for y in other.symbols))


def base_symbols(X: OrderedAlphabet) -> list:
    out = []

    def walk(s):
        if isinstance(s, tuple):
            for t in s:
                walk(t)
        else:
            out.append(s)

    for s in X.symbols:
        walk(s)
    return out


class Monomial(tuple):
    """Sorted tuple of ``(symbol, exponent)`` pairs; printed ``x1^1*x2^2``."""

    __slots__ = ()

    def __new__(cls, pairs=()):
        return super().__new__(cls, sorted(pairs, key=lambda p: _sym_str(p[0])))

    def __str__(self) -> str:
        if not self:
            return "1"
        return "*".join(f"{_sym_str(x)}^{e}" for x, e in self)

    def __repr__(self) -> str:
        return f"Monomial({self})"

    def mul(self, other: Monomial, alphabet: Alphabet = NAT) -> Monomial:
        acc = dict(self)
        for x, e in other:
            acc[x] = alphabet.combine(acc[x], e) if x in acc else e
        return Monomial(acc.items())


ONE = Monomial()


def poly_mul(a: LinComb, b: LinComb, alphabet: Alphabet = NAT) -> LinComb:
    acc: dict = {}
    for m, c in a.items():
        for n, d in b.items():
            k = m.mul(n, alphabet)
            acc[k] = acc.get(k, 0) + c * d
    return LinComb(acc)


def poly_prod(polys, alphabet: Alphabet = NAT) -> LinComb:
    acc = LinComb.basis(ONE)
    for p in polys:
        acc = poly_mul(acc, p, alphabet)
    return acc


def Q(w: Word, X: OrderedAlphabet) -> LinComb:
    """Monomial quasi-symmetric polynomial of ``w`` over ``X``."""
    return LinComb(
        (Monomial(zip(xs, w)), 1) for xs in itertools.combinations(X.symbols, len(w))
    )


def Q_lc(a: LinComb, X: OrderedAlphabet) -> LinComb:
    return lc_sum(Q(w, X) * c for w, c in a.items())


def split_pairs(poly: LinComb, alphabet: Alphabet = NAT) -> LinComb:
    """Identify each pair symbol ``(x, y)`` with the commuting product ``x y``."""

    def split(m: Monomial) -> Monomial:
        acc = ONE
        for x, e in m:
            if isinstance(x, tuple):
                for part in x:
                    acc = acc.mul(split(Monomial([(part, e)])), alphabet)
            else:
                acc = acc.mul(Monomial([(x, e)]), alphabet)
        return acc

    return poly.map_basis(split)


def q_product_check(u: Word, v: Word, X: OrderedAlphabet, alphabet: Alphabet = NAT) -> bool:
    """``Q_u(X) Q_v(X) == Q_{u qsh v}(X)``, given the quasi-shuffle expansion."""
    from .words import qsh

    return poly_mul(Q(u, X), Q(v, X), alphabet) == Q_lc(qsh(u, v, alphabet), X)


def Q_on_sum(w: Word, X: OrderedAlphabet, Y: OrderedAlphabet, alphabet: Alphabet = NAT) -> tuple[LinComb, LinComb]:
    """``Q_w(X+Y)`` and ``sum_{w = w'w''} Q_w'(X) Q_w''(Y)``, as polynomials."""
    lhs = Q(w, X + Y)
    rhs = lc_sum(poly_mul(Q(w[:i], X), Q(w[i:], Y), alphabet) for i in range(len(w) + 1))
    return lhs, rhs


def Q_on_product(w: Word, X: OrderedAlphabet, Y: OrderedAlphabet, alphabet: Alphabet = NAT) -> tuple[LinComb, LinComb]:
    """``Q_w(XY)`` and its expansion over block decompositions of ``w``."""
    lhs = split_pairs(Q(w, X * Y), alphabet)
    if not w:
        return lhs, LinComb.basis(ONE)
    parts = []
    for sizes in compositions(len(w)):
        blocks = blocks_of(w, sizes)
        left = Q(Word(alphabet.total(b) for b in blocks), X)
        parts.append(poly_mul(left, poly_prod((Q(b, Y) for b in blocks), alphabet), alphabet))
    return lhs, lc_sum(parts)


def _packed_exponents(m_pairs: list, X: OrderedAlphabet) -> Word | None:
    pos = {x: i for i, x in enumerate(X.symbols)}
    used = sorted(m_pairs, key=lambda p: pos[p[0]])
    if [pos[x] for x, _ in used] != list(range(len(used))):
        return None
    return Word(e for _, e in used)


def extract_words(poly: LinComb, X: OrderedAlphabet) -> LinComb:
    """Coefficients of a quasi-symmetric polynomial in the ``Q`` basis.

    Reads the coefficient of ``x1^a1 ... xr^ar`` (the first ``r`` variables in
    order) as the coefficient of ``Q_a``; faithful while ``|X|`` is at least
    the longest word involved.
    """
    acc = {}
    for m, c in poly.items():
        w = _packed_exponents(list(m), X)
        if w is not None:
            acc[w] = acc.get(w, 0) + c
    return LinComb(acc)


def extract_tensor(poly: LinComb, X: OrderedAlphabet, Y: OrderedAlphabet) -> LinComb:
    """Coefficients of ``Q_a(X) Q_b(Y)`` in a polynomial over ``X`` and ``Y``."""
    xs, ys = set(X.symbols), set(Y.symbols)
    acc = {}
    for m, c in poly.items():
        px = [(x, e) for x, e in m if x in xs]
        py = [(y, e) for y, e in m if y in ys]
        if len(px) + len(py) != len(m):
            raise ValueError(f"monomial {m} uses symbols outside X and Y")
        a, b = _packed_exponents(px, X), _packed_exponents(py, Y)
        if a is not None and b is not None:
            acc[(a, b)] = acc.get((a, b), 0) + c
    return LinComb(acc)


def faithful(words: list[Word], X: OrderedAlphabet) -> bool:
    """Whether ``{Q_w(X)}`` is linearly independent for the given words."""
    rows, _ = row_reduce([Q(w, X) for w in words])
    return len(rows) == len(set(words))


def parse_alphabet_spec(spec: str) -> tuple[str, OrderedAlphabet]:
    """Parse CLI alphabet declarations such as ``X=3``."""
    name, _, size = spec.partition("=")
    if not name or not size.isdigit():
        raise ValueError(f"bad alphabet declaration {spec!r}, expected NAME=SIZE")
    return name, OrderedAlphabet.named(name, int(size))
