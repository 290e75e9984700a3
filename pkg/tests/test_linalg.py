import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from mouldcalc.linalg import (
    LinComb,
    annihilator_form,
    flatten_tensor,
    format_rational,
    lc_extend,
    pair,
    parse_rational,
    row_reduce,
    row_space_membership,
    tensor,
    tensor_map,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=7)
combos = st.dictionaries(st.sampled_from("abcde"), fractions, max_size=5).map(LinComb)


def test_zero_terms_dropped_and_duplicates_merged():
    assert LinComb({"x": 0}) == LinComb.zero()
    assert LinComb([("x", 1), ("x", 2)]) == LinComb.basis("x", 3)
    assert not LinComb([("x", 1), ("x", -1)])


def test_floats_refused():
    with pytest.raises(TypeError):
        LinComb({"x": 0.5})


def test_text_and_json():
    a = LinComb({"x": 1, "y": Fraction(-1, 2)})
    assert str(a) == "x - 1/2*y"
    assert str(LinComb.zero()) == "0"
    data = json.loads(a.dumps())
    assert data == {"terms": [{"basis": "x", "coeff": "1"}, {"basis": "y", "coeff": "-1/2"}]}


@pytest.mark.parametrize("text,value", [("3/4", Fraction(3, 4)), ("-2", Fraction(-2)), (" 6/4 ", Fraction(3, 2))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1.5", "1e3", "", "abc", "1/0"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


@given(fractions)
def test_rational_round_trip(q):
    assert parse_rational(format_rational(q)) == q


@given(combos, combos, combos, fractions)
def test_vector_space_laws(a, b, c, k):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a - a == LinComb.zero()
    assert (a + b) * k == a * k + b * k
    assert hash(a + b) == hash(b + a)


@given(combos, combos)
def test_tensor_bilinear(a, b):
    assert tensor(a + b, b) == tensor(a, b) + tensor(b, b)
    assert tensor(a, b * 3) == tensor(a, b) * 3


def test_tensor_map_and_flatten():
    a = LinComb({"x": 2})
    t = tensor(a, LinComb({"y": 1}))
    dup = lambda s: LinComb({s + s: 1})
    assert tensor_map([dup, dup], t) == LinComb({("xx", "yy"): 2})
    nested = LinComb({(("a", "b"), "c"): 1, ("a", ("b", "c")): 2})
    assert flatten_tensor(nested) == LinComb({("a", "b", "c"): 3})


def test_lc_extend_is_linear():
    f = lambda s: LinComb({s: 1, s.upper(): 2})
    a = LinComb({"x": 1, "y": -1})
    assert lc_extend(f, a) == LinComb({"x": 1, "X": 2, "y": -1, "Y": -2})


vectors = st.lists(st.dictionaries(st.integers(0, 5), st.integers(-4, 4), max_size=6).map(LinComb), max_size=6)


@given(vectors)
def test_row_reduce_matches_sympy_rank(vs):
    rows, pivots = row_reduce(vs)
    mat = sympy.Matrix([[v.coeff(i) for i in range(6)] for v in vs]) if vs else sympy.zeros(0, 6)
    assert len(rows) == mat.rank()
    for p, r in zip(pivots, rows):
        assert r.coeff(p) == 1
        assert all(other.coeff(p) == 0 for other in rows if other is not r)


@given(vectors, st.dictionaries(st.integers(0, 5), st.integers(-4, 4), max_size=6).map(LinComb))
def test_membership_against_sympy(vs, probe):
    inside, rem = row_space_membership(vs, probe)
    base = [[v.coeff(i) for i in range(6)] for v in vs]
    rank = sympy.Matrix(base).rank() if base else 0
    rank_with = sympy.Matrix(base + [[probe.coeff(i) for i in range(6)]]).rank()
    assert inside == (rank == rank_with)
    assert inside == (not rem)


@given(vectors, st.dictionaries(st.integers(0, 5), fractions, min_size=6, max_size=6))
def test_annihilator_kills_span(vs, values):
    rows, pivots = row_reduce(vs, list(range(6)))
    form = annihilator_form(rows, pivots, values)
    assert all(pair(form, v) == 0 for v in vs)
    free = set(range(6)) - set(pivots)
    assert all(form[b] == values[b] for b in free)
