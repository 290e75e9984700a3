import json
import subprocess
import sys

import pytest

from mouldcalc import moulds as mo
from mouldcalc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


@pytest.mark.parametrize(
    "expr,want",
    [
        ("qsh [1] [2]", "[1.2] + [2.1] + [3]"),
        ("shuffle [1] [2]", "[1.2] + [2.1]"),
        ("gamma [1.2]", "[1.2](x)[1.2] + [1.2](x)[2.1] + [1.2](x)[3] + [3](x)[1.2]"),
        ("std 13224", "14235"),
        ("factorize 1224|113", "delta=124|13 sigma=1223|445"),
        ("fiber-count 1224|112334", "75"),
        ("arborify 3(1,2)", "[1.2.3] + [2.1.3] + [3.3]"),
        ("canon 3(2,1)*1", "1*3(1,2)"),
        ("aut 1(2,2)", "2"),
        ("gl 1 2", "1*2 + 2(1)"),
        ("graft 1 2", "2(1)"),
        ("bplus 3 1*2", "3(1,2)"),
        ("mould(exp o exp) [1.2]", "1"),
        ("mould(exp x J) [1]", "0"),
        ("arbomould(arb:exp) 3(1,2)", "5/6"),
    ],
)
def test_eval(capsys, expr, want):
    code, out, _ = run(capsys, "eval", *expr.split(" "))
    assert code == 0 and out == want


def test_eval_fiber_table(capsys):
    code, out, _ = run(capsys, "eval", "fiber", "1224|113")
    lines = out.splitlines()
    assert code == 0 and lines[0].split() == ["eta", "sigma[eta]"]
    assert [line.split() for line in lines[1:]] == [
        ["1457|236", "1112234"],
        ["2457|136", "1112234"],
        ["3457|126", "1112234"],
        ["1346|125", "112234"],
        ["2346|125", "112234"],
    ]


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "qsh", "[1]", "[1]", "--json")
    assert code == 0
    data = json.loads(out)
    assert {t["basis"]: t["coeff"] for t in data["terms"]} == {"[1.1]": "2", "[2]": "1"}


@pytest.mark.parametrize(
    "expr,fragment",
    [
        ("frobnicate [1]", "unknown operation"),
        ("qsh [1]", "takes 2"),
        ("qsh [1] [x]", "bad word"),
        ("qsh [1 [2]", "unbalanced"),
        ("mould(exp o) [1]", "unexpected end"),
        ("mould(foo) [1]", "unknown mould"),
        ("arborify 1(2", "unbalanced"),
    ],
)
def test_eval_errors(capsys, expr, fragment):
    code, _, err = run(capsys, "eval", expr)
    assert code == 2
    assert fragment in err and err.startswith("error:")


def test_mould_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "mould", "eval", "exp", "[1.1]", "[3]")
    assert code == 0 and out.splitlines() == ["[1.1]: 1/2", "[3]: 1"]
    code, out, _ = run(capsys, "mould", "comp", "exp", "log", "[1.2]")
    assert code == 0 and out == "[1.2]: 0"
    code, out, _ = run(capsys, "mould", "check-symmetrel", "J")
    assert code == 0 and out == "true"
    code, out, _ = run(capsys, "mould", "check-symmetrel", "exp")
    assert code == 1 and out.startswith("false") and "counterexample" in out
    code, out, _ = run(capsys, "mould", "check-symmetral", "exp", "--json")
    assert code == 0 and json.loads(out)["result"] is True


def test_gen_symmetrel_output_is_symmetrel(capsys, tmp_path):
    code, out, _ = run(capsys, "mould", "gen-symmetrel", "--seed", "3", "--max-weight", "5")
    assert code == 0
    M = mo.mould_from_json(out)
    assert mo.is_symmetrel(M, 5, range(1, 6), 5)
    path = tmp_path / "g.json"
    path.write_text(out)
    code, out, _ = run(capsys, "mould", "diamond", "rand:1", f"@{path}", "[1.2]")
    code2, out2, _ = run(capsys, "mould", "comp", "rand:1", f"@{path}", "[1.2]")
    assert code == code2 == 0 and out == out2


def test_growth_audit(capsys):
    assert run(capsys, "mould", "growth-audit", "exp", "--C", "1", "--kappa", "1", "--max-weight", "6")[0] == 0
    code, out, _ = run(capsys, "mould", "growth-audit", "one", "--C", "1/2", "--kappa", "1", "--max-weight", "3")
    assert code == 1 and "counterexample" in out
    assert run(capsys, "mould", "growth-audit", "exp", "--C", "0.5", "--kappa", "1")[0] == 2


def test_arbomould_commands(capsys):
    code, out, _ = run(capsys, "arbomould", "arborify", "exp o J", "3(1,2)", "1*2")
    assert code == 0 and out.splitlines() == ["3(1,2): -17/6", "1*2: 2"]
    code, out, _ = run(capsys, "arbomould", "comp", "rand:0", "I", "1(2)")
    code2, out2, _ = run(capsys, "arbomould", "eval", "rand:0", "1(2)")
    assert code == code2 == 0 and out == out2
    code, out, _ = run(capsys, "arbomould", "eval", "eps", "--max-vertices", "1", "--json")
    assert json.loads(out)["entries"] == {"()": "1", "1": "0", "2": "0"}


def test_check_suite(capsys):
    code, out, _ = run(capsys, "check", "--suite", "words-hopf", "--max-len", "3")
    assert code == 0
    assert out.startswith("suite words-hopf\nbounds letters=1,2,3 max_len=3 seed=0")
    assert "failed=0" in out
    code, out, _ = run(capsys, "check", "--suite", "growth", "--json", "--max-weight", "5")
    data = json.loads(out)
    assert code == 0 and data[0]["suite"] == "growth"
    assert {r["status"] for r in data[0]["results"]} == {"PASS", "EXPECTED-FAIL"}
    assert "seconds" not in data[0]


def test_check_rejects_huge_bounds(capsys):
    code, _, err = run(capsys, "check", "--suite", "words-hopf", "--max-len", "12")
    assert code == 2 and "exceeds" in err


def test_qsym(capsys):
    code, out, _ = run(capsys, "qsym", "Q", "[1.2]", "--alphabet", "X=2")
    assert code == 0 and out == "x1^1*x2^2"
    code, out, _ = run(capsys, "qsym", "sum", "[1.2]", "--alphabet", "X=3", "Y=3")
    assert code == 0 and out.splitlines()[-1] == "matches deconcatenation: true"
    code, out, _ = run(capsys, "qsym", "product", "[1.2]", "--alphabet", "X=3", "Y=3")
    assert code == 0 and out.splitlines()[0] == "[1.2](x)[1.2] + [1.2](x)[2.1] + [1.2](x)[3] + [3](x)[1.2]"
    assert run(capsys, "qsym", "Q", "[1]", "--alphabet", "X=2", "Y=2")[0] == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "mouldcalc", "eval", "qsh [1] [2]"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "[1.2] + [2.1] + [3]"
    r = subprocess.run([sys.executable, "-m", "mouldcalc", "nonsense"], capture_output=True, text=True)
    assert r.returncode == 2
