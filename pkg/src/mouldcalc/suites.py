"""Named verification suites: each runs a block of exact identity checks.

A suite returns a :class:`SuiteReport` listing one outcome per identity:
``PASS``, ``FAIL`` (with the first counterexample and both sides), or
``EXPECTED-FAIL`` for statements that are known not to hold and whose
failure is asserted.  Reports are deterministic for fixed bounds and seed.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import forests as fo
from . import moulds as mo
from . import qsym as qs
from . import surjections as sj
from . import words as wd
from .arbomoulds import (
    I_arbo,
    arbo_comp,
    arbo_diamond,
    arbo_mul,
    arbo_mul_trunk_first,
    arborify_mould,
    eps_arbo,
    gl_series_mul,
    is_separative,
    random_arbo_mould,
    remark_difference,
    s_series,
)
from .checks import Verdict, check_all
from .linalg import LinComb, flatten_tensor, lc_extend, lc_sum, tensor
from .words import EMPTY, Word

PASS, FAIL, XFAIL = "PASS", "FAIL", "EXPECTED-FAIL"

SUITES = (
    "words-hopf",
    "gamma-bialgebra",
    "comodule",
    "wqsh",
    "qsym-oracle",
    "mould-algebra",
    "growth",
    "forest-hopf",
    "forest-gamma",
    "arborification",
    "arbomould-algebra",
    "s-series",
)

BASIS_LIMIT = 10**6


class BoundsTooLarge(ValueError):
    pass


@dataclass
class Bounds:
    """Search bounds; ``None`` fields take the suite's default."""

    letters: tuple[int, ...] | None = None
    max_len: int | None = None
    max_weight: int | None = None
    max_vertices: int | None = None
    seed: int = 0
    seeds: int = 5

    def word_letters(self, default=(1, 2, 3)) -> tuple[int, ...]:
        return tuple(self.letters) if self.letters else default

    def forest_letters(self) -> tuple[int, ...]:
        return tuple(self.letters) if self.letters else (1, 2)

    def length(self, default: int = 4) -> int:
        return self.max_len if self.max_len is not None else default

    def weight(self, default: int) -> int:
        return self.max_weight if self.max_weight is not None else default

    def vertices(self, default: int = 4) -> int:
        return self.max_vertices if self.max_vertices is not None else default


@dataclass
class Outcome:
    name: str
    status: str
    checked: int = 0
    detail: str = ""

    def line(self) -> str:
        head = f"{self.status:<13} {self.name}"
        if self.status == PASS:
            return f"{head} [{self.checked} cases]"
        return f"{head}\n    {self.detail}"


@dataclass
class SuiteReport:
    suite: str
    bounds: dict
    outcomes: list[Outcome] = field(default_factory=list)
    duration: float | None = None

    @property
    def failed(self) -> list[Outcome]:
        return [o for o in self.outcomes if o.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failed

    def render(self, timings: bool = False) -> str:
        lines = [f"suite {self.suite}", "bounds " + " ".join(f"{k}={v}" for k, v in self.bounds.items())]
        lines += [o.line() for o in self.outcomes]
        counts = {s: sum(o.status == s for o in self.outcomes) for s in (PASS, FAIL, XFAIL)}
        summary = f"summary passed={counts[PASS]} failed={counts[FAIL]} expected-fail={counts[XFAIL]}"
        if timings and self.duration is not None:
            summary += f" seconds={self.duration:.2f}"
        lines.append(summary)
        return "\n".join(lines)

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "bounds": self.bounds,
            "results": [
                {"name": o.name, "status": o.status, "checked": o.checked, "detail": o.detail}
                for o in self.outcomes
            ],
            "ok": self.ok,
        }
        if timings and self.duration is not None:
            out["seconds"] = round(self.duration, 3)
        return out


class _Recorder:
    def __init__(self):
        self.outcomes: list[Outcome] = []

    def expect(self, name: str, verdict: Verdict):
        if verdict.ok:
            self.outcomes.append(Outcome(name, PASS, verdict.checked))
        else:
            self.outcomes.append(Outcome(name, FAIL, verdict.checked, _describe(verdict)))

    def expect_fail(self, name: str, verdict: Verdict, note: str):
        if verdict.ok:
            self.outcomes.append(
                Outcome(name, FAIL, verdict.checked, "expected a counterexample, identity held within bounds")
            )
        else:
            self.outcomes.append(Outcome(name, XFAIL, verdict.checked, f"{note}; {_describe(verdict)}"))


def _describe(v: Verdict) -> str:
    text = v.describe()
    return f"{text} ({v.note})" if v.note else text


def check_true(cases: Iterable, pred: Callable[[Any], Verdict | bool]) -> Verdict:
    n = 0
    for case in cases:
        r = pred(case)
        n += 1
        if isinstance(r, Verdict):
            if not r.ok:
                r.counterexample = (case, r.counterexample)
                r.checked = n
                return r
        elif not r:
            return Verdict(False, case, False, True, checked=n)
    return Verdict(True, checked=n)


# --- generic tensor helpers -------------------------------------------------


def coassoc_sides(cop: Callable, x) -> tuple[LinComb, LinComb]:
    once = cop(x)
    left = lc_extend(lambda k: tensor(cop(k[0]), LinComb.basis(k[1])), once)
    right = lc_extend(lambda k: tensor(LinComb.basis(k[0]), cop(k[1])), once)
    return flatten_tensor(left), flatten_tensor(right)


def pair_product(mul: Callable) -> Callable:
    """Componentwise product on two-fold tensors from a basis product."""

    def prod(s: LinComb, t: LinComb) -> LinComb:
        acc = LinComb.zero()
        for (a, b), c in s.items():
            for (x, y), d in t.items():
                acc = acc + tensor(mul(a, x), mul(b, y)) * (c * d)
        return acc

    return prod


def counit_sides(cop: Callable, counit: Callable, x) -> tuple[LinComb, LinComb, LinComb]:
    t = cop(x)
    left = lc_sum(LinComb.basis(b, c * counit(a)) for (a, b), c in t.items())
    right = lc_sum(LinComb.basis(a, c * counit(b)) for (a, b), c in t.items())
    return left, right, LinComb.basis(x)


def antipode_sides(cop, anti, mul_lc, unit, counit, x) -> tuple[LinComb, LinComb, LinComb]:
    t = cop(x)
    left = lc_sum(mul_lc(anti(a), LinComb.basis(b)) * c for (a, b), c in t.items())
    right = lc_sum(mul_lc(LinComb.basis(a), anti(b)) * c for (a, b), c in t.items())
    return left, right, LinComb.basis(unit, counit(x))


def comodule_sides(delta, gamma, mul, x) -> tuple[LinComb, LinComb]:
    """``(delta (x) Id) gamma`` against ``(Id (x) Id (x) m) t23 (gamma (x) gamma) delta``."""
    lhs = flatten_tensor(lc_extend(lambda k: tensor(delta(k[0]), LinComb.basis(k[1])), gamma(x)))
    acc: dict = {}
    for (a, b), c in delta(x).items():
        for (a1, a2), d in gamma(a).items():
            for (b1, b2), e in gamma(b).items():
                for m, f in mul(a2, b2).items():
                    key = (a1, b1, m)
                    acc[key] = acc.get(key, 0) + c * d * e * f
    return lhs, LinComb(acc)


def _pairs(items: list, size: Callable, limit: int, ordered: bool = False):
    for i, a in enumerate(items):
        for b in items if ordered else items[i:]:
            if size(a) + size(b) <= limit:
                yield a, b


def _triples(items: list, size: Callable, limit: int):
    for a in items:
        for b in items:
            if size(a) + size(b) > limit:
                continue
            for c in items:
                if size(a) + size(b) + size(c) <= limit:
                    yield a, b, c


def _pair_eq(lhs: Callable, rhs: Callable) -> Callable:
    return lambda case: lhs(*case) == rhs(*case)


# --- estimate guard ---------------------------------------------------------


def estimate_basis(name: str, b: Bounds) -> int:
    """Rough count of the work a suite will do; guards against runaway bounds."""
    if name in ("words-hopf", "gamma-bialgebra", "comodule", "mould-algebra"):
        # triples of total length k, each product with about 3^k terms
        L = len(b.word_letters())
        return sum(math.comb(k + 2, 2) * (3 * L) ** k for k in range(b.length() + 1))
    if name == "qsym-oracle":
        return len(b.word_letters((1, 2))) ** b.length() * math.comb(b.length() ** 2, b.length())
    if name == "wqsh":
        return 3 ** (2 * b.length(6))
    if name == "growth":
        return 2 ** b.weight(8)
    if name in ("forest-hopf", "forest-gamma", "arborification", "arbomould-algebra"):
        return (3 * len(b.forest_letters())) ** b.vertices()
    if name == "s-series":
        return (3 * len(b.forest_letters())) ** (2 * b.vertices(3))
    return 0


# --- word suites ------------------------------------------------------------


def _words(b: Bounds, default_letters=(1, 2, 3), nonempty: bool = False) -> list[Word]:
    return wd.all_words(b.word_letters(default_letters), b.length(), min_len=1 if nonempty else 0)


def suite_words_hopf(b: Bounds, r: _Recorder) -> None:
    n = b.length()
    ws = _words(b)
    qsh_t = pair_product(wd.qsh)
    r.expect("qsh([1],[2]) golden", check_all([None], lambda _: str(wd.qsh(Word([1]), Word([2]))), lambda _: "[1.2] + [2.1] + [3]"))
    r.expect(
        "qsh([1.2],[3]) golden",
        check_all([None], lambda _: str(wd.qsh(Word([1, 2]), Word([3]))), lambda _: "[1.2.3] + [1.3.2] + [1.5] + [3.1.2] + [4.2]"),
    )
    r.expect("qsh commutative", check_all(_pairs(ws, len, n), lambda p: wd.qsh(*p), lambda p: wd.qsh(p[1], p[0])))
    r.expect(
        "qsh associative",
        check_all(
            _triples(ws, len, n),
            lambda t: wd.qsh_lc(wd.qsh(t[0], t[1]), LinComb.basis(t[2])),
            lambda t: wd.qsh_lc(LinComb.basis(t[0]), wd.qsh(t[1], t[2])),
        ),
    )
    r.expect("qsh unit", check_all(ws, lambda w: wd.qsh(EMPTY, w), lambda w: LinComb.basis(w)))
    r.expect(
        "shuffle associative and commutative",
        check_true(
            _triples(ws, len, n),
            lambda t: wd.shuffle_lc(wd.shuffle(t[0], t[1]), LinComb.basis(t[2]))
            == wd.shuffle_lc(LinComb.basis(t[0]), wd.shuffle(t[1], t[2]))
            and wd.shuffle(t[0], t[1]) == wd.shuffle(t[1], t[0]),
        ),
    )
    r.expect("qsh via surjections", check_all(_pairs(ws, len, n, True), lambda p: wd.qsh(*p), lambda p: sj.qsh_via_surjections(*p)))
    r.expect("deconcatenation coassociative", check_true(ws, lambda w: _eq2(coassoc_sides(wd.deconcat, w))))
    r.expect(
        "deconcatenation multiplicative",
        check_all(
            _pairs(ws, len, n),
            lambda p: lc_extend(wd.deconcat, wd.qsh(*p)),
            lambda p: qsh_t(wd.deconcat(p[0]), wd.deconcat(p[1])),
        ),
    )
    r.expect("deconcatenation counit", check_true(ws, lambda w: _eq3(counit_sides(wd.deconcat, wd.counit_delta, w))))
    r.expect(
        "antipode laws",
        check_true(
            ws,
            lambda w: _eq3(antipode_sides(wd.deconcat, wd.antipode, wd.qsh_lc, EMPTY, wd.counit_delta, w)),
        ),
    )
    r.expect("antipode left = right recursion", check_all(ws, wd.antipode, wd.antipode_right))
    r.expect(
        "antipode antimultiplicative",
        check_all(
            _pairs(ws, len, n),
            lambda p: lc_extend(wd.antipode, wd.qsh(*p)),
            lambda p: wd.qsh_lc(wd.antipode(p[0]), wd.antipode(p[1])),
        ),
    )


def _eq2(sides) -> bool:
    return sides[0] == sides[1]


def _eq3(sides) -> bool:
    return sides[0] == sides[2] and sides[1] == sides[2]


def suite_gamma_bialgebra(b: Bounds, r: _Recorder) -> None:
    n = b.length()
    ws = _words(b)
    qsh_t = pair_product(wd.qsh)
    r.expect(
        "gamma([1]) and gamma([1.2]) golden",
        check_all(
            [None],
            lambda _: (str(wd.gamma(Word([1]))), str(wd.gamma(Word([1, 2])))),
            lambda _: ("[1](x)[1]", "[1.2](x)[1.2] + [1.2](x)[2.1] + [1.2](x)[3] + [3](x)[1.2]"),
        ),
    )
    r.expect("gamma coassociative", check_true(ws, lambda w: _eq2(coassoc_sides(wd.gamma, w))))
    r.expect(
        "gamma multiplicative",
        check_all(
            _pairs(ws, len, n),
            lambda p: lc_extend(wd.gamma, wd.qsh(*p)),
            lambda p: qsh_t(wd.gamma(p[0]), wd.gamma(p[1])),
        ),
    )
    r.expect(
        "gamma internal",
        check_true(ws, lambda w: all(sum(a) == sum(w) == sum(c) for a, c in wd.gamma(w).keys())),
    )
    r.expect("gamma counit", check_true(ws, lambda w: _eq3(counit_sides(wd.gamma, wd.counit_gamma, w))))
    r.expect("gamma via surjections", check_all(ws, wd.gamma, wd.gamma_via_surjections))


def suite_comodule(b: Bounds, r: _Recorder) -> None:
    ws = _words(b)
    r.expect("coaction compatible with deconcatenation", check_true(ws, lambda w: _eq2(comodule_sides(wd.deconcat, wd.gamma, wd.qsh, w))))
    r.expect(
        "coaction compatible with the counit",
        check_all(
            ws,
            lambda w: lc_sum(LinComb.basis(c2, c * wd.counit_delta(c1)) for (c1, c2), c in wd.gamma(w).items()),
            lambda w: LinComb.basis(EMPTY, wd.counit_delta(w)),
        ),
    )
    r.expect(
        "coaction compatible with the antipode",
        check_all(
            ws,
            lambda w: lc_sum(tensor(wd.antipode(a), LinComb.basis(c2)) * c for (a, c2), c in wd.gamma(w).items()),
            lambda w: lc_extend(wd.gamma, wd.antipode(w)),
        ),
    )


def suite_wqsh(b: Bounds, r: _Recorder) -> None:
    total = b.length(6)
    splits = [(p, q) for p in range(total + 1) for q in range(total + 1 - p)]
    phi = sj.parse_split("1224|113")
    sigma, delta = sj.factorize_wqsh(phi)
    r.expect("standardization golden", check_all([None], lambda _: sj.standardize((1, 3, 2, 2, 4)), lambda _: (1, 4, 2, 3, 5)))
    r.expect("factorization golden", check_all([None], lambda _: (str(delta), str(sigma)), lambda _: ("124|13", "1223|445")))
    table = [f"{e}  {sj.format_packed(s)}" for e, s in sj.fiber_qsh(phi)]
    r.expect(
        "fiber table golden",
        check_all(
            [None],
            lambda _: table,
            lambda _: ["1457|236  1112234", "2457|136  1112234", "3457|126  1112234", "1346|125  112234", "2346|125  112234"],
        ),
    )
    r.expect(
        "standardization of 1224|112334",
        check_all([None], lambda _: sj.format_packed(sj.standardize(sj.parse_split("1224|112334").images)), lambda _: "145923678A"),
    )
    r.expect("fiber cardinality 75", check_all([None], lambda _: len(sj.fiber_qsh(sj.parse_split("1224|112334"))), lambda _: 75))
    all_w = [phi for p, q in splits for phi in sj.enumerate_wqsh(p, q)]
    r.expect(
        "qsh enumeration by type",
        check_true(
            splits,
            lambda pq: [e for e in sj.enumerate_qsh_all(*pq)] == sorted(
                (e for e in sj.enumerate_wqsh(*pq) if e.is_qsh()), key=lambda e: (e.type, e)
            ),
        ),
    )
    r.expect("unique factorization", check_true(all_w, lambda phi: _factorization_unique(phi)))
    r.expect("fiber against brute force", check_true(all_w, lambda phi: _fiber_brute(phi) == sorted(sj.fiber_qsh(phi))))
    r.expect(
        "paquets identity",
        check_true(
            all_w,
            lambda phi: _eq2(sj.paquets_sides(Word(range(1, phi.p + 1)), Word(range(phi.p + 1, phi.p + phi.q + 1)), phi)),
        ),
    )


def _factorization_unique(phi: sj.SplitSurjection) -> bool:
    """Exactly one pair (nondecreasing sigma with separated blocks, qsh delta) composes to phi."""
    sigma, delta = sj.factorize_wqsh(phi)
    if sj.compose(delta.images, sigma.images) != phi.images or not delta.is_qsh():
        return False
    count = 0
    for cand in sj.enumerate_wqsh(phi.p, phi.q):
        if not (_weakly_sorted_overall(cand) and _blocks_separate(cand)):
            continue
        for d in sj.enumerate_qsh_all(len(set(cand.left())), len(set(cand.right()))):
            if sj.compose(d.images, cand.images) == phi.images:
                count += 1
    return count == 1


def _weakly_sorted_overall(s: sj.SplitSurjection) -> bool:
    xs = s.images
    return all(x <= y for x, y in zip(xs, xs[1:]))


def _blocks_separate(s: sj.SplitSurjection) -> bool:
    return not set(s.left()) & set(s.right())


def _fiber_brute(phi: sj.SplitSurjection) -> list:
    out = []
    for eta in sj.enumerate_qsh_all(phi.p, phi.q):
        sigma = [0] * eta.s
        ok = True
        for j, e in enumerate(eta.images):
            if sigma[e - 1] not in (0, phi.images[j]):
                ok = False
                break
            sigma[e - 1] = phi.images[j]
        if ok and all(x <= y for x, y in zip(sigma, sigma[1:])):
            out.append((eta, tuple(sigma)))
    return sorted(out)


def suite_qsym_oracle(b: Bounds, r: _Recorder) -> None:
    ws = _words(b, (1, 2))
    n = b.length()
    X, Y = qs.OrderedAlphabet.named("x", n), qs.OrderedAlphabet.named("y", n)
    r.expect(
        "gamma from Q(XY)",
        check_all(ws, lambda w: qs.extract_tensor(qs.split_pairs(qs.Q(w, X * Y)), X, Y), lambda w: wd.gamma(w)),
    )
    r.expect("Q(XY) block expansion", check_true(ws, lambda w: _eq2(qs.Q_on_product(w, X, Y))))
    r.expect("deconcatenation from Q(X+Y)", check_all(ws, lambda w: qs.extract_tensor(qs.Q(w, X + Y), X, Y), wd.deconcat))
    r.expect("Q(X+Y) split expansion", check_true(ws, lambda w: _eq2(qs.Q_on_sum(w, X, Y))))
    r.expect("Q multiplicative for qsh", check_true(_pairs(ws, len, n), lambda p: qs.q_product_check(p[0], p[1], X)))
    r.expect("Q basis faithful", check_true([None], lambda _: qs.faithful(ws, X)))
    Z = qs.OrderedAlphabet.named("z", 2)
    Xs, Ys = qs.OrderedAlphabet.named("x", 2), qs.OrderedAlphabet.named("y", 2)
    short = [w for w in ws if len(w) <= 3]
    r.expect(
        "alphabet operations associative",
        check_true(
            short,
            lambda w: qs.Q(w, (Xs + Ys) + Z) == qs.Q(w, Xs + (Ys + Z))
            and qs.split_pairs(qs.Q(w, (Xs * Ys) * Z)) == qs.split_pairs(qs.Q(w, Xs * (Ys * Z))),
        ),
    )


# --- moulds -----------------------------------------------------------------


def _mould_eq(M: mo.Mould, N: mo.Mould, ws: Iterable[Word]) -> Verdict:
    return check_all(ws, M, N)


def suite_mould_algebra(b: Bounds, r: _Recorder) -> None:
    ws = _words(b)
    W = b.weight(8)
    WS = b.weight(6) if b.max_weight is not None else 6
    light = [w for w in ws if sum(w) <= W]
    eps, I, exp, J, log = (mo.builtin(x) for x in ("eps", "I", "exp", "J", "log"))
    gens = [mo.gen_symmetrel(b.seed + k, W) for k in (0, 1)]
    seeds = [b.seed + k for k in range(b.seeds)]
    outcomes: dict[str, list[Verdict]] = {}

    def add(name: str, v: Verdict):
        outcomes.setdefault(name, []).append(v)

    for s in seeds:
        M, N, P = (mo.random_mould(3 * s + k, f"R{3 * s + k}") for k in range(3))
        mul, comp, dia = mo.mould_mul, mo.mould_comp, mo.mould_diamond
        add("product associative", _mould_eq(mul(mul(M, N), P), mul(M, mul(N, P)), ws))
        add("product unit", check_true(ws, lambda w: mul(eps, M)(w) == M(w) == mul(M, eps)(w)))
        add("composition associative", _mould_eq(comp(comp(M, N), P), comp(M, comp(N, P)), ws))
        add("composition right unit", _mould_eq(comp(M, I), M, ws))
        add("composition left unit on nonempty words", _mould_eq(comp(I, N), N, [w for w in ws if w]))
        add("diamond associative", _mould_eq(dia(dia(M, N), P), dia(M, dia(N, P)), ws))
        add("right distributivity", _mould_eq(comp(mul(M, N), P), mul(comp(M, P), comp(N, P)), ws))
        add(
            "product dual to deconcatenation",
            check_all(ws, mul(M, N), lambda w: sum((c * M(a) * N(bb) for (a, bb), c in wd.deconcat(w).items()), Fraction(0))),
        )
        add(
            "diamond dual to gamma",
            check_all(ws, dia(M, N), lambda w: sum((c * M(a) * N(bb) for (a, bb), c in wd.gamma(w).items()), Fraction(0))),
        )
        add("diamond equals composition for J", _mould_eq(dia(M, J), comp(M, J), ws))
        for g in gens:
            add("diamond equals composition for generated symmetrel", _mould_eq(dia(M, g), comp(M, g), light))
        add("non-symmetral M gives M o exp not symmetrel", Verdict(not mo.is_symmetrel(comp(M, exp), b.length(), b.word_letters()).ok))
        sample = mo.random_mould(3 * s, unit=1)
        add("M o exp symmetral only for symmetrel M", Verdict(not mo.is_symmetral(comp(sample, exp), b.length(), b.word_letters()).ok))

    for name, vs in outcomes.items():
        r.expect(f"{name} ({len(seeds)} seeds)", _merge(vs))

    sym = lambda X: mo.is_symmetrel(X, b.length(), b.word_letters(), W)
    r.expect("J symmetrel", mo.is_symmetrel(J, b.length(), b.word_letters()))
    r.expect("generated moulds symmetrel", _merge([sym(g) for g in gens]))
    r.expect("symmetrel closed under composition", _merge([sym(mo.mould_comp(g, h)) for g in gens for h in gens] + [sym(mo.mould_comp(J, g)) for g in gens]))
    r.expect("exp symmetral", mo.is_symmetral(exp, b.length(), b.word_letters()))
    r.expect("symmetrel N gives N o exp symmetral", _merge([mo.is_symmetral(mo.mould_comp(X, exp), b.length(), b.word_letters(), W) for X in [J] + gens]))
    r.expect("exp o log symmetrel", mo.is_symmetrel(mo.mould_comp(exp, log), b.length(), b.word_letters()))
    r.expect_fail(
        "exp o exp symmetrel",
        mo.is_symmetrel(mo.mould_comp(exp, exp), b.length(), b.word_letters()),
        "exp o exp is not symmetrel; the equivalence runs the other way (N symmetrel iff N o exp symmetral)",
    )
    R = mo.random_mould(b.seed, "R")
    r.expect_fail(
        "diamond equals composition for non-symmetrel N",
        _mould_eq(mo.mould_diamond(R, mo.random_mould(b.seed + 1)), mo.mould_comp(R, mo.random_mould(b.seed + 1)), ws[1:]),
        "only holds for symmetrel N",
    )

    # truncated word series
    M, N = mo.random_mould(b.seed, "A"), mo.random_mould(b.seed + 1, "B")
    r.expect("series product", check_true([WS], lambda k: mo.word_series(mo.mould_mul(M, N), k) == mo.word_series(M, k) * mo.word_series(N, k)))
    r.expect("series composition", check_true([WS], lambda k: mo.word_series(mo.mould_comp(M, N), k) == mo.substitute(N, mo.word_series(M, k))))
    r.expect("substitution by I is the identity", check_true([WS], lambda k: mo.substitute(I, mo.word_series(M, k)) == mo.word_series(M, k)))
    r.expect(
        "substitutions compose",
        check_true([WS], lambda k: mo.substitute(N, mo.substitute(M, mo.word_series(J, k))) == mo.substitute(mo.mould_comp(M, N), mo.word_series(J, k))),
    )


def _merge(vs: list[Verdict]) -> Verdict:
    total = 0
    for v in vs:
        total += v.checked or 1
        if not v.ok:
            v.checked = total
            return v
    return Verdict(True, checked=total)


def suite_growth(b: Bounds, r: _Recorder) -> None:
    W = b.weight(8)
    exp, J, one = mo.builtin("exp"), mo.builtin("J"), mo.builtin("one")
    G1 = mo.random_geometric_mould(b.seed, Fraction(1), Fraction(3, 2), "G1")
    G2 = mo.random_geometric_mould(b.seed + 1, Fraction(1), Fraction(2), "G2")
    H = mo.random_geometric_mould(b.seed + 2, Fraction(2), Fraction(1), "H")
    r.expect("exp geometric (1, 1)", mo.growth_audit(exp, 1, 1, W))
    r.expect("J geometric (1, 1)", mo.growth_audit(J, 1, 1, W))
    r.expect("exp x exp within (n+1)", mo._audit(mo.mould_mul(exp, exp), lambda w: len(w) + 1, W))
    pairs = [("exp", exp, 1, 1, exp, 1, 1), ("J", J, 1, 1, J, 1, 1), ("random", G1, 1, Fraction(3, 2), G2, 1, 2)]
    for label, M, C, k, N, C2, k2 in pairs:
        r.expect(f"product bound ({label})", mo.audit_product_bound(M, N, C, k, C2, k2, W))
        r.expect(f"composition bound ({label})", mo.audit_composition_bound(M, N, C, k, C2, k2, W))
    r.expect("corrected composition bound (C' = 2)", mo.audit_composition_bound(G1, H, 1, Fraction(3, 2), 2, 1, W, corrected=True))
    r.expect_fail(
        "composition bound with C' = 2",
        mo.audit_composition_bound(one, mo.Mould(lambda w: 2, "two"), 1, 1, 2, 1, W),
        "the bound C(1+C')^(|w|-1) needs C' <= 1; in general a factor C' is missing",
    )


# --- forests ----------------------------------------------------------------


def _forests(b: Bounds, nonempty: bool = False, limit: int | None = None) -> list[fo.Forest]:
    V = b.vertices() if limit is None else limit
    return fo.all_forests(V, b.forest_letters(), 1 if nonempty else 0)


def _fsize(F) -> int:
    return F.size()


def _fmul(F, G) -> LinComb:
    return LinComb.basis(F * G)


def suite_forest_hopf(b: Bounds, r: _Recorder) -> None:
    V = b.vertices()
    fs = _forests(b)
    mul_t = pair_product(_fmul)
    r.expect("delta coassociative", check_true(fs, lambda F: _eq2(coassoc_sides(fo.forest_delta, F))))
    r.expect(
        "delta multiplicative",
        check_all(_pairs(fs, _fsize, V), lambda p: fo.forest_delta(p[0] * p[1]), lambda p: mul_t(fo.forest_delta(p[0]), fo.forest_delta(p[1]))),
    )
    r.expect("delta counit", check_true(fs, lambda F: _eq3(counit_sides(fo.forest_delta, fo.counit_delta, F))))
    r.expect(
        "B+ cocycle",
        check_true(
            [(a, F) for a in b.forest_letters() for F in _forests(b, limit=V - 1)],
            lambda aF: fo.forest_delta(fo.Forest([fo.bplus(*aF)]))
            == lc_sum(
                [LinComb.basis((c, fo.Forest([fo.bplus(aF[0], t)])), k) for (c, t), k in fo.forest_delta(aF[1]).items()]
            )
            + LinComb.basis((fo.Forest([fo.bplus(*aF)]), fo.UNIT)),
        ),
    )
    r.expect(
        "antipode laws",
        check_true(fs, lambda F: _eq3(antipode_sides(fo.forest_delta, fo.forest_antipode, fo.forest_mul_lc, fo.UNIT, fo.counit_delta, F))),
    )
    small = _forests(b, limit=2)
    r.expect(
        "GL pairing with symmetry factors",
        check_true(_pairs_ordered(small), lambda p: _gl_pairing(p[0], p[1], V)),
    )
    r.expect(
        "GL associative",
        check_all(
            _triples(fs, _fsize, V),
            lambda t: fo.gl_product_lc(fo.gl_product(t[0], t[1]), LinComb.basis(t[2])),
            lambda t: fo.gl_product_lc(LinComb.basis(t[0]), fo.gl_product(t[1], t[2])),
        ),
    )
    r.expect("GL unit", check_true(fs, lambda F: fo.gl_product(fo.UNIT, F) == LinComb.basis(F) == fo.gl_product(F, fo.UNIT)))
    trees2 = [t for n in (1, 2) for t in fo.all_trees(n, b.forest_letters())]
    r.expect("pre-Lie identity", check_true(itertools.product(trees2, repeat=3), lambda t: _prelie(*t)))
    trees = [t for n in range(1, V) for t in fo.all_trees(n, b.forest_letters())]
    r.expect(
        "GL on trees is graft plus disjoint union",
        check_all(
            _pairs(trees, lambda t: t.size(), V, True),
            lambda p: fo.gl_product(fo.Forest([p[0]]), fo.Forest([p[1]])),
            lambda p: LinComb.basis(fo.Forest(p)) + graft_forests(fo.graft(p[0], p[1])),
        ),
    )


def _pairs_ordered(items):
    return itertools.product(items, repeat=2)


def graft_forests(lc: LinComb) -> LinComb:
    return lc.map_basis(lambda t: fo.Forest([t]))


def _gl_pairing(F, G, V: int) -> Verdict:
    """Coefficients of F#G equal |Aut F||Aut G|/|Aut H| times those of F (x) G in delta(H)."""
    n = F.size() + G.size()
    letters = sorted({lab for X in (F, G) for lab in fo.flatten(X)[0]}) or [1]
    expected = LinComb(
        (H, Fraction(fo.aut(F) * fo.aut(G), fo.aut(H)) * fo.forest_delta(H).coeff((F, G)))
        for H in fo.all_forests(n, letters, n)
    )
    got = fo.gl_product(F, G)
    return Verdict(got == expected, (F, G), got, expected)


def _graft_lc(a: LinComb, b: LinComb) -> LinComb:
    return lc_sum(fo.graft(s, t) * (c * d) for s, c in a.items() for t, d in b.items())


def _prelie(a, b, c) -> bool:
    A, B, C = (LinComb.basis(x) for x in (a, b, c))
    left = _graft_lc(_graft_lc(A, B), C) - _graft_lc(A, _graft_lc(B, C))
    right = _graft_lc(_graft_lc(B, A), C) - _graft_lc(B, _graft_lc(A, C))
    return left == right


def suite_forest_gamma(b: Bounds, r: _Recorder) -> None:
    V = b.vertices()
    fs = _forests(b)
    mul_t = pair_product(_fmul)
    r.expect("gamma coassociative", check_true(fs, lambda F: _eq2(coassoc_sides(fo.forest_gamma, F))))
    r.expect(
        "gamma multiplicative",
        check_all(_pairs(fs, _fsize, V), lambda p: fo.forest_gamma(p[0] * p[1]), lambda p: mul_t(fo.forest_gamma(p[0]), fo.forest_gamma(p[1]))),
    )
    r.expect(
        "gamma internal",
        check_true(fs, lambda F: all(Q.weight() == F.weight() == G.weight() for Q, G in fo.forest_gamma(F).keys())),
    )
    r.expect("gamma counit", check_true(fs, lambda F: _eq3(counit_sides(fo.forest_gamma, fo.counit_gamma, F))))
    r.expect(
        "covering subforests are edge subsets",
        check_true(fs, lambda F: len(fo.covering_subforests(F)) == 2 ** (F.size() - len(F))),
    )
    r.expect("coaction compatible with delta", check_true(fs, lambda F: _eq2(comodule_sides(fo.forest_delta, fo.forest_gamma, _fmul, F))))
    r.expect(
        "coaction compatible with the counit",
        check_all(
            fs,
            lambda F: lc_sum(LinComb.basis(G, c * fo.counit_delta(Q)) for (Q, G), c in fo.forest_gamma(F).items()),
            lambda F: LinComb.basis(fo.UNIT, fo.counit_delta(F)),
        ),
    )
    r.expect(
        "coaction compatible with the antipode",
        check_all(
            fs,
            lambda F: lc_sum(tensor(fo.forest_antipode(Q), LinComb.basis(G)) * c for (Q, G), c in fo.forest_gamma(F).items()),
            lambda F: fo.forest_gamma_lc(fo.forest_antipode(F)),
        ),
    )


def suite_arborification(b: Bounds, r: _Recorder) -> None:
    V = b.vertices()
    fs = _forests(b)
    ar = fo.arborify
    ar_t = lambda t: lc_extend(lambda k: tensor(ar(k[0]), ar(k[1])), t)
    r.expect("arborification golden", check_all([None], lambda _: str(ar(fo.parse_forest("3(1,2)"))), lambda _: "[1.2.3] + [2.1.3] + [3.3]"))
    r.expect("arborification against surjection sum", check_all(fs, ar, _arborify_brute))
    r.expect(
        "arborification multiplicative",
        check_all(_pairs(fs, _fsize, V), lambda p: ar(p[0] * p[1]), lambda p: wd.qsh_lc(ar(p[0]), ar(p[1]))),
    )
    r.expect("arborification respects deconcatenation", check_all(fs, lambda F: ar_t(fo.forest_delta(F)), lambda F: lc_extend(wd.deconcat, ar(F))))
    r.expect(
        "arborification intertwines B+ and L",
        check_all(
            [(a, F) for a in b.forest_letters() for F in _forests(b, limit=V - 1)],
            lambda aF: ar(fo.Forest([fo.bplus(*aF)])),
            lambda aF: ar(aF[1]).map_basis(lambda w: wd.append_letter(aF[0], w)),
        ),
    )
    r.expect("arborification respects the internal coproducts", check_all(fs, lambda F: ar_t(fo.forest_gamma(F)), lambda F: lc_extend(wd.gamma, ar(F))))
    r.expect("arborification respects the internal counits", check_all(fs, fo.counit_gamma, lambda F: sum(c * wd.counit_gamma(w) for w, c in ar(F).items())))
    r.expect(
        "simple arborification is a shuffle morphism",
        check_all(
            _pairs(fs, _fsize, V),
            lambda p: fo.arborify_simple(p[0] * p[1]),
            lambda p: wd.shuffle_lc(fo.arborify_simple(p[0]), fo.arborify_simple(p[1])),
        ),
    )


def _arborify_brute(F: fo.Forest) -> LinComb:
    labels, parent = fo.flatten(F)
    n = len(labels)
    acc: dict = {}
    for sigma in itertools.product(range(1, n + 1), repeat=n):
        s = max(sigma, default=0)
        if set(sigma) != set(range(1, s + 1)):
            continue
        if any(parent[v] >= 0 and not sigma[v] < sigma[parent[v]] for v in range(n)):
            continue
        w = Word(sum(labels[v] for v in range(n) if sigma[v] == k) for k in range(1, s + 1))
        acc[w] = acc.get(w, 0) + 1
    return LinComb(acc)


# --- arborescent moulds -----------------------------------------------------


def suite_arbomould_algebra(b: Bounds, r: _Recorder) -> None:
    fs = _forests(b)
    s = b.seed
    M, N, P = (random_arbo_mould(3 * s + k) for k in range(3))
    eps, Iu = eps_arbo(), I_arbo()
    eq = lambda X, Y: check_all(fs, X, Y)
    r.expect("product associative", eq(arbo_mul(arbo_mul(M, N), P), arbo_mul(M, arbo_mul(N, P))))
    r.expect("product unit", check_true(fs, lambda F: arbo_mul(eps, M)(F) == M(F) == arbo_mul(M, eps)(F)))
    r.expect("composition associative", eq(arbo_comp(arbo_comp(M, N), P), arbo_comp(M, arbo_comp(N, P))))
    r.expect("diamond associative", eq(arbo_diamond(arbo_diamond(M, N), P), arbo_diamond(M, arbo_diamond(N, P))))
    r.expect("right distributivity", eq(arbo_comp(arbo_mul(M, N), P), arbo_mul(arbo_comp(M, P), arbo_comp(N, P))))
    r.expect("I right unit", eq(arbo_comp(M, Iu), M))
    nonempty = fs[1:]
    r.expect_fail("I left unit", check_all(nonempty, arbo_comp(Iu, N), N), "I is only a right unit")
    r.expect_fail(
        "arborified I equals the right unit",
        eq(arborify_mould(mo.builtin("I")), Iu),
        "arborifying I gives a different mould (contractions produce length-one words)",
    )
    r.expect_fail("I separative", is_separative(Iu, b.vertices(), b.forest_letters()), "I is not separative")

    wm, wn = mo.random_mould(3 * s, "m"), mo.random_mould(3 * s + 1, "n")
    W = 2 * b.vertices() if max(b.forest_letters()) <= 2 else max(b.forest_letters()) * b.vertices()
    g = mo.gen_symmetrel(s, W)
    A = arborify_mould
    separative = [eps, A(mo.builtin("J")), A(g)]
    r.expect("arborified symmetrel moulds separative", _merge([is_separative(X, b.vertices(), b.forest_letters()) for X in separative]))
    r.expect("composition equals diamond for separative N", _merge([eq(arbo_comp(M, X), arbo_diamond(M, X)) for X in separative]))
    r.expect_fail(
        "composition equals diamond for non-separative N",
        check_all(nonempty, arbo_comp(M, N), arbo_diamond(M, N)),
        "needs N separative",
    )
    r.expect("arborification of the product", eq(A(mo.mould_mul(wm, wn)), arbo_mul(A(wm), A(wn))))
    r.expect("arborification of diamond", eq(A(mo.mould_diamond(wm, wn)), arbo_diamond(A(wm), A(wn))))
    r.expect_fail(
        "arborification of the product, trunk-first pairing",
        eq(A(mo.mould_mul(wm, wn)), arbo_mul_trunk_first(A(wm), A(wn))),
        "the left factor must sit on the crown",
    )
    r.expect("arborification of composition for symmetrel N", eq(A(mo.mould_comp(wm, g)), arbo_comp(A(wm), A(g))))
    r.expect_fail(
        "arborification of composition for general N",
        eq(A(mo.mould_comp(wm, wn)), arbo_comp(A(wm), A(wn))),
        "differs at two isolated vertices by M[a+b](N(a qsh b) - N[a]N[b])",
    )
    pairs = list(itertools.product(b.forest_letters()[:2], repeat=2))
    r.expect("two-vertex difference formula (symbolic)", check_true(pairs, lambda ab: _sym_eq(*remark_difference(*ab))))


def _sym_eq(lhs, rhs) -> bool:
    import sympy

    return sympy.expand(lhs - rhs) == 0


def suite_s_series(b: Bounds, r: _Recorder) -> None:
    V = b.vertices(3)
    L = b.forest_letters()
    s = b.seed
    M, N = random_arbo_mould(s), random_arbo_mould(s + 1)
    wm, wn = arborify_mould(mo.random_mould(s)), arborify_mould(mo.random_mould(s + 1))
    r.expect("S-series of eps is the unit", check_true([None], lambda _: s_series(eps_arbo(), V, L).coeffs == LinComb.basis(fo.UNIT)))
    r.expect(
        "S-series multiply by GL",
        check_true(
            [(M, N), (wm, wn)],
            lambda p: s_series(arbo_mul(*p), V, L) == gl_series_mul(s_series(p[0], V, L), s_series(p[1], V, L)),
        ),
    )


RUNNERS = {
    "words-hopf": suite_words_hopf,
    "gamma-bialgebra": suite_gamma_bialgebra,
    "comodule": suite_comodule,
    "wqsh": suite_wqsh,
    "qsym-oracle": suite_qsym_oracle,
    "mould-algebra": suite_mould_algebra,
    "growth": suite_growth,
    "forest-hopf": suite_forest_hopf,
    "forest-gamma": suite_forest_gamma,
    "arborification": suite_arborification,
    "arbomould-algebra": suite_arbomould_algebra,
    "s-series": suite_s_series,
}


def _bounds_dict(name: str, b: Bounds) -> dict:
    if name in ("forest-hopf", "forest-gamma", "arborification", "arbomould-algebra"):
        d = {"letters": ",".join(map(str, b.forest_letters())), "max_vertices": b.vertices()}
    elif name == "s-series":
        d = {"letters": ",".join(map(str, b.forest_letters())), "max_vertices": b.vertices(3)}
    elif name == "growth":
        d = {"max_weight": b.weight(8)}
    elif name == "wqsh":
        d = {"max_p_plus_q": b.length(6)}
    elif name == "qsym-oracle":
        d = {"letters": ",".join(map(str, b.word_letters((1, 2)))), "max_len": b.length(), "alphabet_size": b.length()}
    else:
        d = {"letters": ",".join(map(str, b.word_letters())), "max_len": b.length()}
    if name == "mould-algebra":
        d["max_weight"] = b.weight(8)
        d["seeds"] = b.seeds
    d["seed"] = b.seed
    return d


def run_suite(name: str, bounds: Bounds | None = None) -> list[SuiteReport]:
    """Run one suite, or every suite for ``all``; returns the reports."""
    bounds = bounds or Bounds()
    names = SUITES if name == "all" else (name,)
    for n in names:
        if n not in RUNNERS:
            raise KeyError(f"unknown suite {n!r}; known: {', '.join(SUITES + ('all',))}")
        est = estimate_basis(n, bounds)
        if est > BASIS_LIMIT:
            raise BoundsTooLarge(f"suite {n}: estimated size {est} exceeds {BASIS_LIMIT}; lower the bounds")
    reports = []
    for n in names:
        rec = _Recorder()
        t0 = time.perf_counter()
        RUNNERS[n](bounds, rec)
        reports.append(SuiteReport(n, _bounds_dict(n, bounds), rec.outcomes, time.perf_counter() - t0))
    return reports


def render_reports(reports: list[SuiteReport], as_json: bool = False, timings: bool = False) -> str:
    if as_json:
        return json.dumps([r.to_json(timings) for r in reports], indent=2)
    return "\n\n".join(r.render(timings) for r in reports)
