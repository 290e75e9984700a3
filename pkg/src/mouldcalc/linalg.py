"""Exact rational scalars and sparse free-module arithmetic.

Every coefficient in the package is an exact rational: either a Python ``int``
or a :class:`fractions.Fraction`.  A :class:`LinComb` is a finitely supported
linear combination over hashable basis elements; tensors are linear
combinations over tuples of basis elements.
"""

from __future__ import annotations

import json
from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping
from fractions import Fraction
from numbers import Rational
from typing import Any

__all__ = [
    "LinComb",
    "parse_rational",
    "format_rational",
    "lc_add",
    "lc_scale",
    "lc_extend",
    "tensor",
    "tensor_map",
    "row_reduce",
    "row_space_membership",
    "annihilator_form",
]


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction.  Floats are refused."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    text = text.strip()
    if not text or any(c in text for c in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator: {text!r}") from None


def format_rational(c: Rational) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _basis_str(b: Any) -> str:
    if isinstance(b, tuple) and type(b) is tuple:
        return "(x)".join(_basis_str(x) for x in b)
    return str(b)


class LinComb:
    """Immutable sparse linear combination ``{basis: coefficient}``.

    Zero coefficients are never stored, so two combinations are equal iff
    their term dictionaries are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Hashable, Rational] | Iterable[tuple[Hashable, Rational]] = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for b, c in items:
            if isinstance(c, float):
                raise TypeError("floating-point coefficients are not allowed")
            acc[b] = acc.get(b, 0) + c
        self._terms = {b: c for b, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def _trusted(cls, terms: dict) -> LinComb:
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def basis(cls, b: Hashable, c: Rational = 1) -> LinComb:
        return cls._trusted({b: c}) if c != 0 else cls.zero()

    @classmethod
    def zero(cls) -> LinComb:
        return cls._trusted({})

    # mapping-ish access
    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, b) -> bool:
        return b in self._terms

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coeff(self, b: Hashable) -> Rational:
        return self._terms.get(b, 0)

    def __getitem__(self, b: Hashable) -> Rational:
        return self._terms.get(b, 0)

    def as_dict(self) -> dict:
        return dict(self._terms)

    # arithmetic
    def __add__(self, other: LinComb) -> LinComb:
        if not isinstance(other, LinComb):
            return NotImplemented
        if len(other._terms) > len(self._terms):
            self, other = other, self
        acc = dict(self._terms)
        for b, c in other._terms.items():
            v = acc.get(b, 0) + c
            if v:
                acc[b] = v
            else:
                acc.pop(b, None)
        return LinComb._trusted(acc)

    def __neg__(self) -> LinComb:
        return LinComb._trusted({b: -c for b, c in self._terms.items()})

    def __sub__(self, other: LinComb) -> LinComb:
        if not isinstance(other, LinComb):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c: Rational) -> LinComb:
        if isinstance(c, LinComb) or isinstance(c, float):
            return NotImplemented
        if c == 0:
            return LinComb.zero()
        if c == 1:
            return self
        return LinComb._trusted({b: v * c for b, v in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # presentation
    def sorted_items(self) -> list:
        try:
            return sorted(self._terms.items(), key=lambda kv: kv[0])
        except TypeError:
            return sorted(self._terms.items(), key=lambda kv: repr(kv[0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (b, c) in enumerate(self.sorted_items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = _basis_str(b) if mag == 1 else f"{format_rational(mag)}*{_basis_str(b)}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LinComb({self})"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"basis": _basis_str(b), "coeff": format_rational(c)}
                for b, c in self.sorted_items()
            ]
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def map_basis(self, f: Callable[[Any], Hashable]) -> LinComb:
        """Apply a basis-to-basis map and collect."""
        return LinComb((f(b), c) for b, c in self._terms.items())


def lc_add(a: LinComb, b: LinComb) -> LinComb:
    return a + b


def lc_scale(c: Rational, a: LinComb) -> LinComb:
    return a * c


def lc_extend(f: Callable[[Any], LinComb], a: LinComb) -> LinComb:
    """Linear extension of a basis map ``f`` to the combination ``a``."""
    acc: dict = {}
    for b, c in a.items():
        for b2, c2 in f(b).items():
            v = acc.get(b2, 0) + c * c2
            if v:
                acc[b2] = v
            else:
                acc.pop(b2, None)
    return LinComb._trusted(acc)


def lc_sum(parts: Iterable[LinComb]) -> LinComb:
    acc: dict = {}
    for p in parts:
        for b, c in p.items():
            v = acc.get(b, 0) + c
            if v:
                acc[b] = v
            else:
                acc.pop(b, None)
    return LinComb._trusted(acc)


def tensor(*factors: LinComb) -> LinComb:
    """Tensor product; basis elements of the result are tuples."""
    acc: dict = {(): 1}
    for f in factors:
        nxt: dict = {}
        for k, c in acc.items():
            for b, d in f.items():
                key = k + (b,)
                nxt[key] = nxt.get(key, 0) + c * d
        acc = nxt
    return LinComb(acc)


def tensor_map(fs: list[Callable[[Any], LinComb]], t: LinComb) -> LinComb:
    """Apply ``f_1 (x) ... (x) f_k`` to a k-fold tensor."""

    def on_basis(key):
        return tensor(*(f(b) for f, b in zip(fs, key)))

    return lc_extend(on_basis, t)


def flatten_tensor(t: LinComb) -> LinComb:
    """Turn nested pair keys ``((a, b), c)`` or ``(a, (b, c))`` into ``(a, b, c)``."""

    def flat(key):
        out: tuple = ()
        for part in key:
            if type(part) is tuple:
                out += flat(part)
            else:
                out += (part,)
        return out

    return t.map_basis(flat)


# --- exact Gaussian elimination -------------------------------------------


def _sort_basis(keys: Iterable) -> list:
    keys = list(keys)
    try:
        return sorted(keys)
    except TypeError:
        return sorted(keys, key=repr)


def row_reduce(vectors: list[LinComb], order: list | None = None) -> tuple[list[LinComb], list]:
    """Reduced row echelon form of the span of ``vectors``.

    Pivot choice is the first nonzero coordinate in ``order`` (default: the
    sorted union of supports).  Returns ``(rows, pivots)`` with each row
    normalized to pivot coefficient 1 and zero at every other pivot.
    """
    if order is None:
        support = set()
        for v in vectors:
            support.update(v.keys())
        order = _sort_basis(support)
    rank = {b: i for i, b in enumerate(order)}
    rows: list[dict] = []
    pivots: list = []
    for v in vectors:
        r = {b: Fraction(c) for b, c in v.items()}
        for p, row in zip(pivots, rows):
            c = r.get(p)
            if c:
                for b, x in row.items():
                    y = r.get(b, 0) - c * x
                    if y:
                        r[b] = y
                    else:
                        r.pop(b, None)
        if not r:
            continue
        p = min(r, key=rank.__getitem__)
        inv = 1 / r[p]
        r = {b: x * inv for b, x in r.items()}
        # back-eliminate the new pivot from earlier rows
        for i, row in enumerate(rows):
            c = row.get(p)
            if c:
                for b, x in r.items():
                    y = row.get(b, 0) - c * x
                    if y:
                        row[b] = y
                    else:
                        row.pop(b, None)
        rows.append(r)
        pivots.append(p)
    idx = sorted(range(len(pivots)), key=lambda i: rank[pivots[i]])
    return [LinComb._trusted(rows[i]) for i in idx], [pivots[i] for i in idx]


def row_space_membership(vectors: list[LinComb], probe: LinComb) -> tuple[bool, LinComb]:
    """Decide whether ``probe`` lies in the span of ``vectors``.

    Returns the flag and the remainder of ``probe`` after eliminating every
    pivot coordinate of the reduced basis.  The remainder is zero exactly when
    the probe is in the span.
    """
    order = None
    support = set(probe.keys())
    for v in vectors:
        support.update(v.keys())
    order = _sort_basis(support)
    rows, pivots = row_reduce(vectors, order)
    rem = probe
    for p, row in zip(pivots, rows):
        c = rem.coeff(p)
        if c:
            rem = rem - row * c
    return (not rem), rem


def annihilator_form(rows: list[LinComb], pivots: list, values: Mapping) -> dict:
    """Complete a linear form so that it kills a reduced row echelon span.

    ``values`` gives the form on (at least) the non-pivot coordinates; pivot
    coordinates are overwritten with the unique values making the form vanish
    on every row.  Returns a plain dict basis -> coefficient.
    """
    pivot_set = set(pivots)
    form = {b: Fraction(c) for b, c in values.items() if b not in pivot_set}
    for p, row in zip(pivots, rows):
        form[p] = -sum((c * form.get(b, 0) for b, c in row.items() if b != p), Fraction(0))
    return form


def pair(form: Mapping, v: LinComb) -> Fraction:
    return sum((c * form.get(b, 0) for b, c in v.items()), Fraction(0))
