"""Exact mould calculus over quasi-shuffle words and decorated rooted forests."""

from .linalg import LinComb
from .words import EMPTY, NAT, Alphabet, Word, deconcat, gamma, parse_word, qsh, shuffle

__all__ = ["LinComb", "Word", "EMPTY", "NAT", "Alphabet", "parse_word", "qsh", "shuffle", "deconcat", "gamma"]
__version__ = "0.1.0"
