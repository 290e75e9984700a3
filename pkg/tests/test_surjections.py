import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mouldcalc import surjections as sj
from mouldcalc import words as wd
from mouldcalc.words import Word

sizes = st.tuples(st.integers(0, 3), st.integers(0, 3))


def all_surjections(n):
    for s in range(0 if n == 0 else 1, n + 1):
        for f in itertools.product(range(1, s + 1), repeat=n):
            if set(f) == set(range(1, s + 1)):
                yield f


def brute(p, q, weak):
    ok = (lambda xs: all(a <= b for a, b in zip(xs, xs[1:]))) if weak else (lambda xs: all(a < b for a, b in zip(xs, xs[1:])))
    return sorted(sj.SplitSurjection(f, p) for f in all_surjections(p + q) if ok(f[:p]) and ok(f[p:]))


def brute_fiber(phi):
    """Quasi-shuffles eta with phi = sigma o eta for a nondecreasing sigma."""
    out = []
    for eta in brute(phi.p, phi.q, weak=False):
        sigma = {}
        if all(sigma.setdefault(e, x) == x for e, x in zip(eta.images, phi.images)):
            seq = tuple(sigma[k] for k in range(1, eta.s + 1))
            if all(a <= b for a, b in zip(seq, seq[1:])):
                out.append((eta, seq))
    return sorted(out)


def test_packed_text():
    assert sj.format_packed((1, 4, 5, 9, 2, 3, 6, 7, 8, 10)) == "145923678A"
    phi = sj.parse_split("1224|113")
    assert (phi.p, phi.q, phi.s, phi.type) == (4, 3, 4, 3)
    assert str(phi) == "1224|113"
    with pytest.raises(ValueError):
        sj.parse_split("13|2|")
    with pytest.raises(ValueError):
        sj.parse_split("13|")


def test_standardization():
    assert sj.format_packed(sj.standardize((1, 3, 2, 2, 4))) == "14235"
    assert sj.format_packed(sj.standardize(sj.parse_split("1224|112334").images)) == "145923678A"


@given(st.lists(st.integers(1, 5), max_size=8))
def test_standardization_is_order_compatible(w):
    s = sj.standardize(w)
    assert sorted(s) == list(range(1, len(w) + 1))
    for i, j in itertools.combinations(range(len(w)), 2):
        assert (s[i] < s[j]) == (w[i] <= w[j])


@pytest.mark.parametrize("p,q", [(p, q) for p in range(4) for q in range(4)])
def test_enumerations_against_brute_force(p, q):
    assert sorted(sj.enumerate_qsh_all(p, q)) == brute(p, q, weak=False)
    assert sj.enumerate_wqsh(p, q) == brute(p, q, weak=True)
    assert len(sj.enumerate_qsh_all(p, q)) == sum(math.comb(p, k) * math.comb(q, k) * 2**k for k in range(min(p, q) + 1))
    for r in range(min(p, q) + 1):
        assert all(e.type == r for e in sj.enumerate_qsh(p, q, r))
        assert len(sj.enumerate_qsh(p, q, r)) == math.comb(p + q - r, p) * math.comb(p, r)


def test_factorization_example():
    sigma, delta = sj.factorize_wqsh(sj.parse_split("1224|113"))
    assert str(delta) == "124|13"
    assert str(sigma) == "1223|445"


@given(sizes, st.data())
def test_factorization_composes(pq, data):
    options = sj.enumerate_wqsh(*pq)
    phi = data.draw(st.sampled_from(options))
    sigma, delta = sj.factorize_wqsh(phi)
    assert sj.compose(delta.images, sigma.images) == phi.images
    assert delta.is_qsh()
    assert list(sigma.images) == sorted(sigma.images)
    assert not set(sigma.left()) & set(sigma.right())


def test_factorization_rejects_non_weak():
    with pytest.raises(ValueError):
        sj.factorize_wqsh(sj.SplitSurjection((2, 1), 2))


def test_fiber_table():
    rows = [f"{e}  {sj.format_packed(s)}" for e, s in sj.fiber_qsh(sj.parse_split("1224|113"))]
    assert rows == ["1457|236  1112234", "2457|136  1112234", "3457|126  1112234", "1346|125  112234", "2346|125  112234"]


def test_fiber_cardinality():
    assert len(sj.fiber_qsh(sj.parse_split("1224|112334"))) == 75


@pytest.mark.parametrize("p,q", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_fiber_against_brute_force(p, q):
    for phi in sj.enumerate_wqsh(p, q):
        assert sorted(sj.fiber_qsh(phi)) == brute_fiber(phi)


@pytest.mark.parametrize("p,q", [(1, 2), (2, 2), (3, 1)])
def test_paquets_identity(p, q):
    u, v = Word(range(1, p + 1)), Word(range(p + 1, p + q + 1))
    for phi in sj.enumerate_wqsh(p, q):
        lhs, rhs = sj.paquets_sides(u, v, phi)
        assert lhs == rhs


def test_apply_and_block():
    w = Word([1, 2, 3, 4])
    assert sj.apply_surjection(w, (1, 2, 1, 3)) == Word([4, 2, 4])
    assert sj.block(w, (1, 2, 1, 2), 2) == Word([2, 4])
    assert sj.nondecreasing_surjections(3) == [(1, 1, 1), (1, 1, 2), (1, 2, 2), (1, 2, 3)]


@given(st.lists(st.integers(1, 3), max_size=3).map(Word), st.lists(st.integers(1, 3), max_size=3).map(Word))
def test_qsh_via_surjections(u, v):
    assert sj.qsh_via_surjections(u, v) == wd.qsh(u, v)
