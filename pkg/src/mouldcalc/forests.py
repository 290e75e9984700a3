"""Decorated rooted forests: canonical forms, coproducts, arborification.

Trees and forests are tuple subclasses kept in canonical order, so equality
is isomorphism of decorated forests and hashing is cheap.  Operations that
need vertex identities flatten a forest to parallel label/parent arrays.

Text form: ``tree := INT | INT "(" tree ("," tree)* ")"``, a forest is its
trees joined by ``*``, and the empty forest prints as ``()``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from functools import lru_cache
from typing import Iterable, Sequence

from .linalg import LinComb, lc_extend, lc_sum
from .words import EMPTY, NAT, Alphabet, Word

__all__ = [
    "Tree",
    "Forest",
    "UNIT",
    "parse_forest",
    "parse_tree",
    "aut",
    "bplus",
    "forest_mul",
    "forest_mul_lc",
    "forest_delta",
    "forest_delta_lc",
    "forest_antipode",
    "covering_subforests",
    "forest_gamma",
    "forest_gamma_lc",
    "counit_delta",
    "counit_gamma",
    "arborify",
    "arborify_lc",
    "arborify_simple",
    "graft",
    "gl_product",
    "gl_product_lc",
    "all_trees",
    "all_forests",
]


class Tree(tuple):
    """``(label, children)`` with children in canonical sorted order."""

    __slots__ = ()

    def __new__(cls, label, children: Iterable[Tree] = ()):
        return tuple.__new__(cls, (label, tuple(sorted(children))))

    @property
    def label(self):
        return self[0]

    @property
    def children(self) -> tuple[Tree, ...]:
        return self[1]

    def size(self) -> int:
        return 1 + sum(c.size() for c in self[1])

    def __str__(self) -> str:
        if not self[1]:
            return str(self[0])
        return f"{self[0]}(" + ",".join(str(c) for c in self[1]) + ")"

    def __repr__(self) -> str:
        return f"Tree({self})"


class Forest(tuple):
    """Multiset of trees in canonical order; the empty forest is the unit."""

    __slots__ = ()

    def __new__(cls, trees: Iterable[Tree] = ()):
        return tuple.__new__(cls, sorted(trees))

    def size(self) -> int:
        return sum(t.size() for t in self)

    def weight(self, alphabet: Alphabet = NAT):
        labels, _ = flatten(self)
        return alphabet.total(labels)

    def __mul__(self, other: Forest) -> Forest:
        if not isinstance(other, Forest):
            return NotImplemented
        return Forest(tuple(self) + tuple(other))

    def __str__(self) -> str:
        return "*".join(str(t) for t in self) if self else "()"

    def __repr__(self) -> str:
        return f"Forest({self})"


UNIT = Forest()


# --- text form --------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.s = text.replace(" ", "")
        self.i = 0

    def error(self, msg: str):
        raise ValueError(f"{msg} at position {self.i} in {self.s!r}")

    def peek(self) -> str:
        return self.s[self.i] if self.i < len(self.s) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.i += 1

    def tree(self) -> Tree:
        j = self.i
        while self.peek().isdigit():
            self.i += 1
        if j == self.i:
            self.error("expected a decoration")
        label = int(self.s[j : self.i])
        if label <= 0:
            self.error("decorations must be positive")
        kids = []
        if self.peek() == "(":
            self.i += 1
            kids.append(self.tree())
            while self.peek() == ",":
                self.i += 1
                kids.append(self.tree())
            self.expect(")")
        return Tree(label, kids)

    def forest(self) -> Forest:
        if self.s in ("()", ""):
            self.i = len(self.s)
            return UNIT
        trees = [self.tree()]
        while self.peek() == "*":
            self.i += 1
            trees.append(self.tree())
        if self.i != len(self.s):
            self.error("unexpected character")
        return Forest(trees)


def parse_forest(text: str) -> Forest:
    return _Parser(text).forest()


def parse_tree(text: str) -> Tree:
    p = _Parser(text)
    t = p.tree()
    if p.i != len(p.s):
        p.error("unexpected character")
    return t


# --- structure --------------------------------------------------------------


@lru_cache(maxsize=None)
def aut(F) -> int:
    """Order of the decorated automorphism group of a tree or forest."""
    if isinstance(F, Tree):
        return aut(Forest(F.children))
    out = 1
    for t, m in Counter(F).items():
        out *= math.factorial(m) * aut(t) ** m
    return out


def bplus(b, F: Forest) -> Tree:
    return Tree(b, F)


def flatten(F: Forest) -> tuple[list, list[int]]:
    """Preorder labels and parent indices (``-1`` for roots)."""
    labels: list = []
    parent: list[int] = []

    def walk(t: Tree, p: int):
        i = len(labels)
        labels.append(t[0])
        parent.append(p)
        for c in t[1]:
            walk(c, i)

    for t in F:
        walk(t, -1)
    return labels, parent


def build(labels: Sequence, parent: Sequence[int], vertices: Iterable[int] | None = None) -> Forest:
    """Forest on ``vertices`` keeping the edges to parents inside the set."""
    vs = list(range(len(labels))) if vertices is None else sorted(vertices)
    inside = set(vs)
    kids: dict[int, list[int]] = {v: [] for v in vs}
    roots = []
    for v in vs:
        p = parent[v]
        if p in inside:
            kids[p].append(v)
        else:
            roots.append(v)

    def make(v: int) -> Tree:
        return Tree(labels[v], [make(c) for c in kids[v]])

    return Forest(make(r) for r in roots)


def forest_mul(F: Forest, G: Forest) -> Forest:
    return F * G


def forest_mul_lc(a: LinComb, b: LinComb) -> LinComb:
    acc: dict = {}
    for F, c in a.items():
        for G, d in b.items():
            k = F * G
            acc[k] = acc.get(k, 0) + c * d
    return LinComb(acc)


def _order_ideals(parent: Sequence[int]) -> list[frozenset]:
    """Vertex sets closed under taking parents."""
    n = len(parent)
    kids: list[list[int]] = [[] for _ in range(n)]
    roots = []
    for v, p in enumerate(parent):
        (kids[p] if p >= 0 else roots).append(v)

    def containing(v: int) -> list[frozenset]:
        # ideals of the subtree at v that contain v
        out = [frozenset([v])]
        for c in kids[v]:
            options = [frozenset()] + containing(c)
            out = [a | b for a in out for b in options]
        return out

    ideals = [frozenset()]
    for r in roots:
        options = [frozenset()] + containing(r)
        ideals = [a | b for a in ideals for b in options]
    return ideals


@lru_cache(maxsize=None)
def forest_delta(F: Forest) -> LinComb:
    """Admissible cuts: sum of ``crown (x) trunk``, the trunk an order ideal."""
    labels, parent = flatten(F)
    everything = frozenset(range(len(labels)))
    acc: dict = {}
    for trunk in _order_ideals(parent):
        key = (build(labels, parent, everything - trunk), build(labels, parent, trunk))
        acc[key] = acc.get(key, 0) + 1
    return LinComb(acc)


def forest_delta_lc(a: LinComb) -> LinComb:
    return lc_extend(forest_delta, a)


def counit_delta(F: Forest) -> int:
    return 1 if not F else 0


def counit_gamma(F: Forest) -> int:
    """Counit of the internal coproduct: indicator of edgeless forests."""
    return 1 if all(not t.children for t in F) else 0


@lru_cache(maxsize=None)
def forest_antipode(F: Forest) -> LinComb:
    if not F:
        return LinComb.basis(UNIT)
    acc = LinComb.basis(F, -1)
    for (crown, trunk), c in forest_delta(F).items():
        if crown and trunk:
            acc = acc - forest_mul_lc(forest_antipode(crown), LinComb.basis(trunk)) * c
    return acc


@lru_cache(maxsize=None)
def _covering(F: Forest, alphabet: Alphabet) -> tuple:
    labels, parent = flatten(F)
    edges = [v for v in range(len(labels)) if parent[v] >= 0]
    out = []
    for keep in itertools.product((False, True), repeat=len(edges)):
        kept = {v for v, k in zip(edges, keep) if k}
        g_parent = [parent[v] if v in kept else -1 for v in range(len(labels))]
        G = build(labels, g_parent)
        # block of each vertex is represented by its topmost vertex
        top = list(range(len(labels)))
        for v in range(len(labels)):
            if v in kept:
                top[v] = top[parent[v]]
        tops = sorted(set(top))
        members: dict[int, list] = {t: [] for t in tops}
        for v in range(len(labels)):
            members[top[v]].append(labels[v])
        index = {t: i for i, t in enumerate(tops)}
        q_labels = [alphabet.total(members[t]) for t in tops]
        q_parent = [index[top[parent[t]]] if parent[t] >= 0 else -1 for t in tops]
        out.append((G, build(q_labels, q_parent)))
    return tuple(out)


def covering_subforests(F: Forest, alphabet: Alphabet = NAT) -> list[tuple[Forest, Forest]]:
    """``(G, F/G)`` for every subset of edges kept inside blocks."""
    return list(_covering(F, alphabet))


@lru_cache(maxsize=None)
def _gamma(F: Forest, alphabet: Alphabet) -> LinComb:
    acc: dict = {}
    for G, Q in _covering(F, alphabet):
        acc[(Q, G)] = acc.get((Q, G), 0) + 1
    return LinComb(acc)


def forest_gamma(F: Forest, alphabet: Alphabet = NAT) -> LinComb:
    """``sum over covering subforests G of F/G (x) G``."""
    return _gamma(F, alphabet)


def forest_gamma_lc(a: LinComb, alphabet: Alphabet = NAT) -> LinComb:
    return lc_extend(lambda F: _gamma(F, alphabet), a)


# --- arborification ---------------------------------------------------------


def _remove(F: Forest, drop: set[int], labels, parent) -> Forest:
    return build(labels, parent, set(range(len(labels))) - drop)


@lru_cache(maxsize=None)
def _arborify(F: Forest, alphabet: Alphabet, contract: bool) -> LinComb:
    if not F:
        return LinComb.basis(EMPTY)
    labels, parent = flatten(F)
    has_child = {p for p in parent if p >= 0}
    leaves = [v for v in range(len(labels)) if v not in has_child]
    sizes = range(1, len(leaves) + 1) if contract else (1,)
    acc: dict = {}
    for k in sizes:
        for chosen in itertools.combinations(leaves, k):
            letter = alphabet.total(labels[v] for v in chosen)
            rest = _remove(F, set(chosen), labels, parent)
            for w, c in _arborify(rest, alphabet, contract).items():
                key = Word((letter,) + tuple(w))
                acc[key] = acc.get(key, 0) + c
    return LinComb(acc)


def arborify(F: Forest, alphabet: Alphabet = NAT) -> LinComb:
    """Contracting arborification.

    Sum over surjections onto ``{1..s}`` that strictly increase from child to
    parent; letter ``k`` combines the decorations in the ``k``-th fiber, so
    roots come last.  Built by peeling off nonempty sets of leaves.
    """
    return _arborify(Forest(F), alphabet, True)


def arborify_lc(a: LinComb, alphabet: Alphabet = NAT) -> LinComb:
    return lc_extend(lambda F: arborify(F, alphabet), a)


def arborify_simple(F: Forest) -> LinComb:
    """Sum of linear extensions only (no contractions)."""
    return _arborify(Forest(F), NAT, False)


# --- grafting ---------------------------------------------------------------


def _graft_all(s: Tree, t: Tree) -> list[Tree]:
    out = [Tree(t[0], t[1] + (s,))]
    kids = t[1]
    for i, c in enumerate(kids):
        for r in _graft_all(s, c):
            out.append(Tree(t[0], kids[:i] + (r,) + kids[i + 1 :]))
    return out


def graft(s: Tree, t: Tree) -> LinComb:
    """Pre-Lie product: ``s`` grafted at every vertex of ``t``."""
    return LinComb((r, 1) for r in _graft_all(s, t))


@lru_cache(maxsize=None)
def gl_product(F: Forest, G: Forest) -> LinComb:
    """Grossman-Larson product: each tree of ``F`` goes on a vertex of ``G`` or the root level."""
    labels, parent = flatten(G)
    n = len(labels)
    acc: dict = {}
    for targets in itertools.product(range(-1, n), repeat=len(F)):
        extra: dict[int, list[Tree]] = {}
        loose = []
        for t, v in zip(F, targets):
            (loose if v < 0 else extra.setdefault(v, [])).append(t)
        kids: dict[int, list[int]] = {v: [] for v in range(n)}
        roots = []
        for v in range(n):
            (kids[parent[v]] if parent[v] >= 0 else roots).append(v)

        def make(v: int) -> Tree:
            return Tree(labels[v], [make(c) for c in kids[v]] + extra.get(v, []))

        H = Forest([make(r) for r in roots] + loose)
        acc[H] = acc.get(H, 0) + 1
    return LinComb(acc)


def gl_product_lc(a: LinComb, b: LinComb) -> LinComb:
    return lc_sum(gl_product(F, G) * (c * d) for F, c in a.items() for G, d in b.items())


# --- enumeration ------------------------------------------------------------


def all_trees(n: int, letters: Iterable) -> list[Tree]:
    """Decorated trees with exactly ``n`` vertices, sorted."""
    return list(_trees(n, tuple(sorted(set(letters)))))


def all_forests(max_vertices: int, letters: Iterable, min_vertices: int = 0) -> list[Forest]:
    """Decorated forests by vertex count, then canonical order."""
    letters = tuple(sorted(set(letters)))
    return [F for n in range(min_vertices, max_vertices + 1) for F in _forests(n, letters)]


@lru_cache(maxsize=None)
def _trees(n: int, letters: tuple) -> tuple[Tree, ...]:
    if n < 1:
        return ()
    return tuple(sorted(Tree(a, F) for a in letters for F in _forests(n - 1, letters)))


@lru_cache(maxsize=None)
def _forests(n: int, letters: tuple) -> tuple[Forest, ...]:
    pool = [t for k in range(1, n + 1) for t in _trees(k, letters)]
    sizes = [t.size() for t in pool]
    out = []

    def rec(remaining: int, start: int, acc: list):
        if remaining == 0:
            out.append(Forest(acc))
            return
        for i in range(start, len(pool)):
            if sizes[i] <= remaining:
                acc.append(pool[i])
                rec(remaining - sizes[i], i, acc)
                acc.pop()

    rec(n, 0, [])
    return tuple(sorted(set(out)))
