import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mouldcalc import forests as fo
from mouldcalc import words as wd
from mouldcalc.linalg import LinComb, lc_sum
from mouldcalc.words import Word

P = fo.parse_forest
SMALL = fo.all_forests(4, (1, 2))
forest = st.sampled_from(SMALL)


def test_canonical_text():
    assert str(P("3(2,1)")) == "3(1,2)"
    assert str(P("2*1(2)*1")) == "1*1(2)*2"
    assert P("3(1,2)") == P("3(2,1)")
    assert str(fo.UNIT) == "()" and P("()") == fo.UNIT
    assert str(fo.parse_tree("1(2(3),4)")) == "1(2(3),4)"
    assert P("1(2)").size() == 2 and P("1*2(3)").weight() == 6


@pytest.mark.parametrize("bad", ["1(", "1()", "(1)", "0", "1**2", "1,2", "a", "1(2)3"])
def test_parse_errors(bad):
    with pytest.raises(ValueError, match="position"):
        P(bad)


@pytest.mark.parametrize(
    "text,order",
    [("1", 1), ("1*1", 2), ("1*2", 1), ("1(2,2)", 2), ("1(2,3)", 1), ("1(2(3),2(3))", 2), ("1(1(1),1(1))*1(1(1),1(1))", 8), ("1(1,1,1)", 6)],
)
def test_aut(text, order):
    assert fo.aut(P(text)) == order


def test_enumeration_counts():
    assert [len(fo.all_forests(n, (1,), n)) for n in range(6)] == [1, 1, 2, 4, 9, 20]
    assert len(SMALL) == 143
    assert [len(fo.all_trees(n, (1,))) for n in range(1, 6)] == [1, 1, 2, 4, 9]


def cuts_oracle(F):
    """Admissible cuts by brute force.

    Each vertex owns the edge to its parent, with a virtual edge above every
    root.  A cut is a set of such edges meeting each root-to-vertex path at
    most once; the trunk is what stays attached to the top.
    """
    labels, parent = fo.flatten(F)
    n = len(labels)

    def path(v):
        out = {v}
        while parent[v] >= 0:
            v = parent[v]
            out.add(v)
        return out

    acc = {}
    for k in range(n + 1):
        for cut in map(set, itertools.combinations(range(n), k)):
            if any(len(cut & path(v)) > 1 for v in range(n)):
                continue
            trunk = {v for v in range(n) if not cut & path(v)}
            key = (fo.build(labels, parent, set(range(n)) - trunk), fo.build(labels, parent, trunk))
            acc[key] = acc.get(key, 0) + 1
    return LinComb(acc)


def test_delta_examples():
    assert str(fo.forest_delta(P("1"))) == "()(x)1 + 1(x)()"
    assert fo.forest_delta(P("1(2)")) == LinComb({(fo.UNIT, P("1(2)")): 1, (P("2"), P("1")): 1, (P("1(2)"), fo.UNIT): 1})
    assert len(fo.forest_delta(P("1(1(1(1)))"))) == 5


@given(forest)
def test_delta_against_edge_cuts(F):
    assert fo.forest_delta(F) == cuts_oracle(F)


@given(forest)
def test_antipode_and_counit(F):
    conv = lc_sum(fo.forest_mul_lc(fo.forest_antipode(c), LinComb.basis(t)) * k for (c, t), k in fo.forest_delta(F).items())
    assert conv == LinComb.basis(fo.UNIT, fo.counit_delta(F))
    assert lc_sum(LinComb.basis(t, k * fo.counit_delta(c)) for (c, t), k in fo.forest_delta(F).items()) == LinComb.basis(F)


def test_antipode_small():
    assert fo.forest_antipode(P("1")) == LinComb.basis(P("1"), -1)
    assert fo.forest_antipode(P("1(2)")) == LinComb({P("1(2)"): -1, P("1*2"): 1})


def test_covering_subforests_example():
    got = sorted((str(G), str(Q)) for G, Q in fo.covering_subforests(P("1(2)")))
    assert got == [("1(2)", "3"), ("1*2", "1(2)")]
    assert fo.forest_gamma(P("1(2)")) == LinComb({(P("1(2)"), P("1*2")): 1, (P("3"), P("1(2)")): 1})
    cherry = fo.forest_gamma(P("3(1,2)"))
    assert cherry.coeff((P("5(1)"), P("1*3(2)"))) == 1 and cherry.coeff((P("4(2)"), P("2*3(1)"))) == 1
    assert cherry.coeff((P("6"), P("3(1,2)"))) == 1
    assert len(cherry) == 4


@given(forest)
def test_gamma_counit_and_size(F):
    assert len(fo.covering_subforests(F)) == 2 ** (F.size() - len(F))
    left = lc_sum(LinComb.basis(G, k * fo.counit_gamma(Q)) for (Q, G), k in fo.forest_gamma(F).items())
    right = lc_sum(LinComb.basis(Q, k * fo.counit_gamma(G)) for (Q, G), k in fo.forest_gamma(F).items())
    assert left == right == LinComb.basis(F)


def test_gamma_counit_values():
    assert [fo.counit_gamma(P(t)) for t in ("()", "1*2", "1(2)")] == [1, 1, 0]


def arborify_rec(F, contract=True):
    """Recursive oracle: multiplicative for the (quasi-)shuffle, B+ appends the root letter."""
    prod = wd.qsh_lc if contract else wd.shuffle_lc
    acc = LinComb.basis(wd.EMPTY)
    for t in F:
        inner = arborify_rec(fo.Forest(t.children), contract)
        acc = prod(acc, inner.map_basis(lambda w, a=t.label: wd.append_letter(a, w)))
    return acc


def test_arborification_example():
    assert str(fo.arborify(P("3(1,2)"))) == "[1.2.3] + [2.1.3] + [3.3]"
    assert str(fo.arborify_simple(P("3(1,2)"))) == "[1.2.3] + [2.1.3]"
    assert fo.arborify(P("1*2")) == wd.qsh(Word([1]), Word([2]))


@given(forest)
def test_arborification_against_recursion(F):
    assert fo.arborify(F) == arborify_rec(F)
    assert fo.arborify_simple(F) == arborify_rec(F, contract=False)


def test_graft_examples():
    a, b = fo.parse_tree("1"), fo.parse_tree("2")
    assert fo.graft(a, b) == LinComb.basis(fo.parse_tree("2(1)"))
    assert fo.graft(a, fo.parse_tree("2(3)")) == LinComb({fo.parse_tree("2(1,3)"): 1, fo.parse_tree("2(3(1))"): 1})
    assert fo.graft(a, fo.parse_tree("2(3,3)")).coeff(fo.parse_tree("2(3,3(1))")) == 2


def test_grossman_larson_examples():
    assert fo.gl_product(P("1"), P("2")) == LinComb({P("1*2"): 1, P("2(1)"): 1})
    assert fo.gl_product(fo.UNIT, P("1(2)")) == LinComb.basis(P("1(2)"))
    assert fo.gl_product(P("1*1"), P("2")) == LinComb({P("1*1*2"): 1, P("1*2(1)"): 2, P("2(1,1)"): 1})


def test_bplus():
    assert fo.bplus(3, P("1*2")) == fo.parse_tree("3(1,2)")
