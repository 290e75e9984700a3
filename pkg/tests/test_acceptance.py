"""Acceptance criteria, one test each, with their runtime budgets.

Every comparison is exact.  Each test records a PASS/FAIL line that is
printed in the terminal summary.
"""

import subprocess
import sys
import time

from mouldcalc import forests as fo
from mouldcalc import moulds as mo
from mouldcalc import surjections as sj
from mouldcalc import words as wd
from mouldcalc.linalg import tensor
from mouldcalc.suites import FAIL, PASS, XFAIL, Bounds, run_suite
from mouldcalc.words import Word


def _suites(*names, bounds=None):
    reports = [r for n in names for r in run_suite(n, bounds or Bounds(seed=0))]
    failed = [f"{r.suite}: {o.name}" for r in reports for o in r.outcomes if o.status == FAIL]
    return reports, failed


def _status(reports, name):
    return next(o.status for r in reports for o in r.outcomes if o.name == name)


def _finish(report, number, t0, limit, failures):
    dt = time.perf_counter() - t0
    ok = not failures and (limit is None or dt < limit)
    detail = "; ".join(failures) if failures else ""
    if limit is not None and dt >= limit:
        detail = (detail + "; " if detail else "") + "over time budget"
    report(number, ok, dt, limit, detail)
    assert not failures, failures
    assert limit is None or dt < limit, f"{dt:.2f} s exceeds {limit} s"


def test_criterion_01_golden_examples(report):
    t0 = time.perf_counter()
    w1, w2, w3 = Word([1]), Word([2]), Word([3])
    phi = sj.parse_split("1224|113")
    sigma, delta = sj.factorize_wqsh(phi)
    q12 = wd.qsh(w1, w2)
    cases = {
        "qsh([1],[2])": (str(q12), "[1.2] + [2.1] + [3]"),
        "qsh([1.2],[3])": (str(wd.qsh(Word([1, 2]), w3)), "[1.2.3] + [1.3.2] + [1.5] + [3.1.2] + [4.2]"),
        "gamma([1])": (str(wd.gamma(w1)), "[1](x)[1]"),
        "gamma([1.2])": (str(wd.gamma(Word([1, 2]))), "[1.2](x)[1.2] + [1.2](x)[2.1] + [1.2](x)[3] + [3](x)[1.2]"),
        "gamma of qsh([1],[2]) is group-like": (wd.gamma(Word([1, 2])) + wd.gamma(Word([2, 1])) + wd.gamma(w3), tensor(q12, q12)),
        "Std(13224)": (sj.format_packed(sj.standardize((1, 3, 2, 2, 4))), "14235"),
        "factorization of 1224|113": ((str(delta), str(sigma)), ("124|13", "1223|445")),
        "fiber table of 1224|113": (
            [f"{e}  {sj.format_packed(s)}" for e, s in sj.fiber_qsh(phi)],
            ["1457|236  1112234", "2457|136  1112234", "3457|126  1112234", "1346|125  112234", "2346|125  112234"],
        ),
        "fiber cardinality for 1224|112334": (len(sj.fiber_qsh(sj.parse_split("1224|112334"))), 75),
        "arborification of 3(1,2)": (str(fo.arborify(fo.parse_forest("3(1,2)"))), "[1.2.3] + [2.1.3] + [3.3]"),
    }
    failures = [f"{k}: got {got!s}, want {want!s}" for k, (got, want) in cases.items() if got != want]
    _finish(report, 1, t0, 1.0, failures)


def test_criterion_02_word_bialgebra_suite(report):
    t0 = time.perf_counter()
    _, failures = _suites("words-hopf", "gamma-bialgebra")
    _finish(report, 2, t0, 60.0, failures)


def test_criterion_03_comodule_hopf_suite(report):
    t0 = time.perf_counter()
    _, failures = _suites("comodule")
    _finish(report, 3, t0, 120.0, failures)


def test_criterion_04_qsym_oracle(report):
    t0 = time.perf_counter()
    reports, failures = _suites("qsym-oracle")
    assert reports[0].bounds["alphabet_size"] == 4 and reports[0].bounds["letters"] == "1,2"
    _finish(report, 4, t0, 60.0, failures)


def test_criterion_05_mould_algebra(report):
    """Includes the statement that exp o exp is symmetrel, asserted as given."""
    t0 = time.perf_counter()
    reports, failures = _suites("mould-algebra")
    for name in ("diamond equals composition for J (5 seeds)", "exp symmetral", "symmetrel closed under composition"):
        if _status(reports, name) != PASS:
            failures.append(name)
    exp = mo.builtin("exp")
    v = mo.is_symmetrel(mo.mould_comp(exp, exp), 4, (1, 2, 3))
    if not v:
        failures.append(f"exp o exp symmetrel: {v.describe()}")
    _finish(report, 5, t0, 120.0, failures)


def test_criterion_06_growth(report):
    t0 = time.perf_counter()
    reports, failures = _suites("growth")
    assert reports[0].bounds["max_weight"] == 8
    _finish(report, 6, t0, 30.0, failures)


def test_criterion_07_forest_suite(report):
    t0 = time.perf_counter()
    reports, failures = _suites("forest-hopf", "forest-gamma")
    for name in ("B+ cocycle", "GL pairing with symmetry factors", "pre-Lie identity", "coaction compatible with delta"):
        if _status(reports, name) != PASS:
            failures.append(name)
    _finish(report, 7, t0, 180.0, failures)


def test_criterion_08_arborification(report):
    t0 = time.perf_counter()
    _, failures = _suites("arborification")
    _finish(report, 8, t0, 120.0, failures)


def test_criterion_09_arbomould_suite(report):
    t0 = time.perf_counter()
    reports, failures = _suites("arbomould-algebra", "s-series")
    wanted = {
        "I right unit": PASS,
        "I left unit": XFAIL,
        "two-vertex difference formula (symbolic)": PASS,
        "composition equals diamond for separative N": PASS,
        "arborification of the product": PASS,
        "arborification of diamond": PASS,
        "S-series multiply by GL": PASS,
    }
    failures += [f"{k}: {_status(reports, k)}" for k, st in wanted.items() if _status(reports, k) != st]
    _finish(report, 9, t0, 180.0, failures)


def test_criterion_10_determinism(report):
    t0 = time.perf_counter()
    cmd = [sys.executable, "-m", "mouldcalc", "check", "--suite", "all", "--seed", "0"]
    runs = [subprocess.run(cmd, capture_output=True, timeout=600) for _ in range(2)]
    failures = []
    if any(r.returncode != 0 for r in runs):
        failures.append(f"exit codes {[r.returncode for r in runs]}")
    if runs[0].stdout != runs[1].stdout:
        failures.append("reports differ")
    if not runs[0].stdout:
        failures.append("empty report")
    _finish(report, 10, t0, None, failures)
