"""Small result record shared by predicates and verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Verdict:
    """Outcome of an identity check; truthy iff it passed.

    On failure ``counterexample`` holds the offending inputs and ``lhs`` /
    ``rhs`` the two sides that disagreed.
    """

    ok: bool
    counterexample: Any = None
    lhs: Any = None
    rhs: Any = None
    checked: int = 0
    note: str = ""
    extra: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return f"ok ({self.checked} cases)"
        return f"counterexample {_fmt(self.counterexample)}: lhs={_fmt(self.lhs)} rhs={_fmt(self.rhs)}"


def _fmt(x: Any) -> str:
    if isinstance(x, tuple) and type(x) is tuple:
        return "(" + ", ".join(_fmt(y) for y in x) + ")"
    if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, int):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    return str(x)


def check_all(cases, lhs_fn, rhs_fn) -> Verdict:
    """Compare two callables on every case; stop at the first disagreement."""
    n = 0
    for case in cases:
        a, b = lhs_fn(case), rhs_fn(case)
        n += 1
        if a != b:
            return Verdict(False, case, a, b, checked=n)
    return Verdict(True, checked=n)
