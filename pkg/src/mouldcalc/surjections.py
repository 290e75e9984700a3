"""Packed words, quasi-shuffles and weak quasi-shuffles as surjections.

A surjection ``{1..n} -> {1..s}`` is stored as its packed word, a tuple of
positive integers whose set of values is exactly ``{1..s}``.  A
:class:`SplitSurjection` additionally records the split point ``p`` that
separates the first ``p`` positions from the remaining ``q``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .linalg import LinComb, lc_sum
from .words import NAT, Alphabet, Word, qsh_many

__all__ = [
    "SplitSurjection",
    "is_surjection",
    "standardize",
    "compose",
    "enumerate_qsh",
    "enumerate_qsh_all",
    "enumerate_wqsh",
    "factorize_wqsh",
    "fiber_qsh",
    "apply_surjection",
    "block",
    "nondecreasing_surjections",
    "qsh_via_surjections",
    "paquets_sides",
    "format_packed",
    "parse_split",
]

_DIGITS = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def format_packed(images: Sequence[int]) -> str:
    if any(x >= len(_DIGITS) for x in images):
        return ",".join(str(x) for x in images)
    return "".join(_DIGITS[x] for x in images)


def _parse_packed(text: str) -> tuple[int, ...]:
    text = text.strip()
    if "," in text:
        return tuple(int(x) for x in text.split(","))
    return tuple(_DIGITS.index(ch.upper()) for ch in text)


def is_surjection(images: Sequence[int]) -> bool:
    return set(images) == set(range(1, len(set(images)) + 1))


@dataclass(frozen=True, order=True)
class SplitSurjection:
    images: tuple[int, ...]
    p: int

    def __post_init__(self):
        if not 0 <= self.p <= len(self.images):
            raise ValueError(f"split point {self.p} out of range")
        if not is_surjection(self.images):
            raise ValueError(f"not a packed word: {self.images}")

    @property
    def q(self) -> int:
        return len(self.images) - self.p

    @property
    def s(self) -> int:
        return max(self.images, default=0)

    @property
    def type(self) -> int:
        return len(self.images) - self.s

    def left(self) -> tuple[int, ...]:
        return self.images[: self.p]

    def right(self) -> tuple[int, ...]:
        return self.images[self.p :]

    def is_qsh(self) -> bool:
        return _strict(self.left()) and _strict(self.right())

    def is_wqsh(self) -> bool:
        return _weak(self.left()) and _weak(self.right())

    def __str__(self) -> str:
        return f"{format_packed(self.left())}|{format_packed(self.right())}"


def parse_split(text: str) -> SplitSurjection:
    """Parse ``"1224|113"``."""
    if text.count("|") != 1:
        raise ValueError(f"expected exactly one '|' in {text!r}")
    a, b = text.split("|")
    left, right = _parse_packed(a) if a.strip() else (), _parse_packed(b) if b.strip() else ()
    return SplitSurjection(tuple(left) + tuple(right), len(left))


def _strict(xs: Sequence[int]) -> bool:
    return all(x < y for x, y in zip(xs, xs[1:]))


def _weak(xs: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(xs, xs[1:]))


def standardize(w: Sequence[int]) -> tuple[int, ...]:
    """The permutation ordering positions by value, ties broken by position."""
    order = sorted(range(len(w)), key=lambda i: (w[i], i))
    out = [0] * len(w)
    for rank, i in enumerate(order, start=1):
        out[i] = rank
    return tuple(out)


def compose(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    """``outer o inner`` for surjections given as packed words."""
    return tuple(outer[j - 1] for j in inner)


def enumerate_qsh(p: int, q: int, r: int) -> list[SplitSurjection]:
    """All ``(p,q)``-quasi-shuffles of type ``r``, in lexicographic order."""
    if p < 0 or q < 0 or r < 0 or r > min(p, q):
        return []
    n = p + q - r
    full = set(range(1, n + 1))
    out = []
    for left in itertools.combinations(range(1, n + 1), p):
        forced = sorted(full - set(left))
        for shared in itertools.combinations(left, r):
            right = tuple(sorted(forced + list(shared)))
            out.append(SplitSurjection(tuple(left) + right, p))
    out.sort()
    return out


def enumerate_qsh_all(p: int, q: int) -> list[SplitSurjection]:
    """All quasi-shuffles of every type, ordered by type then lexicographically."""
    return [eta for r in range(min(p, q) + 1) for eta in enumerate_qsh(p, q, r)]


def enumerate_wqsh(p: int, q: int) -> list[SplitSurjection]:
    """All weak ``(p,q)``-quasi-shuffles of every type, lexicographic."""
    if p == q == 0:
        return [SplitSurjection((), 0)]
    out = []
    for s in range(1, p + q + 1):
        for left in itertools.combinations_with_replacement(range(1, s + 1), p):
            for right in itertools.combinations_with_replacement(range(1, s + 1), q):
                if set(left) | set(right) == set(range(1, s + 1)):
                    out.append(SplitSurjection(left + right, p))
    out.sort()
    return out


def factorize_wqsh(phi: SplitSurjection) -> tuple[SplitSurjection, SplitSurjection]:
    """Unique ``phi = delta o sigma`` with sigma nondecreasing, delta a quasi-shuffle.

    Returns ``(sigma, delta)``; ``sigma`` keeps the split point of ``phi`` and
    ``delta`` is split after the number of values taken on the first block.
    """
    if not phi.is_wqsh():
        raise ValueError(f"{phi} is not a weak quasi-shuffle")
    first = sorted(set(phi.left()))
    second = sorted(set(phi.right()))
    t1 = len(first)
    delta = SplitSurjection(tuple(first) + tuple(second), t1)
    sigma = tuple(first.index(x) + 1 for x in phi.left()) + tuple(
        t1 + second.index(x) + 1 for x in phi.right()
    )
    return SplitSurjection(sigma, phi.p), delta


def fiber_qsh(phi: SplitSurjection) -> list[tuple[SplitSurjection, tuple[int, ...]]]:
    """Quasi-shuffles ``eta`` through which ``phi`` factorizes order-compatibly.

    Each is returned with the nondecreasing surjection ``sigma[eta]`` such that
    ``phi = sigma[eta] o eta``.  Built block by block: the preimage of each
    value of ``phi`` is quasi-shuffled independently and the results are
    concatenated.
    """
    if not phi.is_wqsh():
        raise ValueError(f"{phi} is not a weak quasi-shuffle")
    n = len(phi.images)
    pre = []
    for k in range(1, phi.s + 1):
        a = [j for j in range(phi.p) if phi.images[j] == k]
        b = [j for j in range(phi.p, n) if phi.images[j] == k]
        pre.append((a, b))
    choices = [enumerate_qsh_all(len(a), len(b)) for a, b in pre]
    out = []
    for pick in itertools.product(*choices):
        eta = [0] * n
        sigma: list[int] = []
        offset = 0
        for k, ((a, b), local) in enumerate(zip(pre, pick), start=1):
            for pos, val in zip(a + b, local.images):
                eta[pos] = offset + val
            offset += local.s
            sigma.extend([k] * local.s)
        out.append((SplitSurjection(tuple(eta), phi.p), tuple(sigma)))
    return out


def apply_surjection(w: Word, sigma: Sequence[int], alphabet: Alphabet = NAT) -> Word:
    """The word whose k-th letter combines the letters in the k-th preimage."""
    if len(w) != len(sigma):
        raise ValueError("word and surjection lengths differ")
    s = max(sigma, default=0)
    return Word(alphabet.total(w[j] for j in range(len(w)) if sigma[j] == k) for k in range(1, s + 1))


def block(w: Word, sigma: Sequence[int], k: int) -> Word:
    """Subword of ``w`` at the preimage positions of ``k``."""
    if len(w) != len(sigma):
        raise ValueError("word and surjection lengths differ")
    return Word(w[j] for j in range(len(w)) if sigma[j] == k)


def nondecreasing_surjections(n: int) -> list[tuple[int, ...]]:
    """Nondecreasing surjections ``{1..n} -> {1..s}`` for all ``s >= 1``."""
    out = []
    for cuts in itertools.product((0, 1), repeat=max(n - 1, 0)):
        if n == 0:
            break
        seq, k = [1], 1
        for c in cuts:
            k += c
            seq.append(k)
        out.append(tuple(seq))
    out.sort()
    return out


def qsh_via_surjections(u: Word, v: Word, alphabet: Alphabet = NAT) -> LinComb:
    """Quasi-shuffle as a sum over quasi-shuffle surjections."""
    w = Word(tuple(u) + tuple(v))
    return LinComb(
        (apply_surjection(w, eta.images, alphabet), 1) for eta in enumerate_qsh_all(len(u), len(v))
    )


def paquets_sides(u: Word, v: Word, phi: SplitSurjection, alphabet: Alphabet = NAT) -> tuple[LinComb, LinComb]:
    """Both sides of the fiber identity relating ``phi`` to its factorization."""
    w = Word(tuple(u) + tuple(v))
    lhs = []
    for eta, sig in fiber_qsh(phi):
        we = apply_surjection(w, eta.images, alphabet)
        lhs.append(qsh_many([block(we, sig, k) for k in range(1, phi.s + 1)], alphabet))
    sigma, _ = factorize_wqsh(phi)
    rhs = qsh_many([block(w, sigma.images, k) for k in range(1, sigma.s + 1)], alphabet)
    return lc_sum(lhs), rhs
