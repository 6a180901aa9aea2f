import random

import pytest
from hypothesis import given, strategies as st

from kanlift.density import (Lasso, LiftedStreamPred, PredObj, StreamParam, all_lassos,
                             comonad_laws_check, comultiply, decision_bound, lasso_tail,
                             product_density_lift, product_density_lift_direct,
                             product_formula_vs_direct, stream_density_member)
from kanlift.errors import AmbientMismatch, InvalidStructure
from kanlift.finset import FinSet, product_set

A, R = FinSet("ab"), FinSet(["r"])
X = PredObj(FinSet("xy"), frozenset("x"))
RA = product_set(R, A)


def test_product_example_both_ways():
    s = PredObj(RA, frozenset({("r", "a")}))
    expected = frozenset({("x", "a")})
    assert product_density_lift(A, R, s, X).member_set == expected
    assert product_density_lift_direct(A, R, s, X).member_set == expected


def test_product_trivial_cases():
    assert not product_density_lift(A, R, PredObj(RA, frozenset()), X).member_set
    full_x = PredObj(X.ambient, frozenset(X.ambient.elements))
    full = product_density_lift(A, R, PredObj(RA, frozenset(RA.elements)), full_x)
    assert full.member_set == frozenset(product_set(X.ambient, A).elements)


def test_product_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        product_density_lift(A, R, PredObj(A, frozenset()), X)


def test_formula_equals_enumeration_exhaustively():
    assert product_formula_vs_direct(2).ok


def test_tail_examples():
    assert lasso_tail(Lasso((), (0, 1)), 0) == Lasso((), (0, 1))
    assert lasso_tail(Lasso((), (0, 1)), 1) == Lasso((), (1, 0))
    assert lasso_tail(Lasso(("a",), ("b",)), 5) == Lasso((), ("b",))


def test_canonical_form():
    v = Lasso((1, 0, 1), (0, 1, 0, 1))
    assert v.prefix == () and v.cycle == (1, 0)
    with pytest.raises(InvalidStructure):
        Lasso((0,), ())


lassos = st.builds(Lasso, st.lists(st.sampled_from("xy"), max_size=4).map(tuple),
                   st.lists(st.sampled_from("xy"), min_size=1, max_size=4).map(tuple))


@given(lassos, st.integers(0, 4))
def test_canonicalisation_preserves_stream(v, k):
    pumped = Lasso(v.prefix + v.cycle * k, v.cycle * (k + 1))
    n = decision_bound(v, pumped) + 5
    assert pumped == v and pumped.take(n) == v.take(n)
    assert Lasso(v.prefix, v.cycle) == v


@given(lassos, lassos)
def test_equality_iff_streams_agree(v, w):
    n = decision_bound(v, w)
    assert (v == w) == (v.take(n) == w.take(n))


@given(lassos, st.integers(0, 8), st.integers(0, 8))
def test_tail_composes(v, i, j):
    assert lasso_tail(v, i + j) == lasso_tail(lasso_tail(v, i), j)
    assert lasso_tail(v, i)[j] == v[i + j]


PARAM = StreamParam(FinSet([0, 1]), frozenset({Lasso((), (0, 1))}))


def test_stream_membership_examples():
    for c in "xy":
        assert stream_density_member(PARAM, X, Lasso((), ("x", c)))
    assert not stream_density_member(PARAM, X, Lasso((), ("y", "x")))
    empty = PredObj(X.ambient, frozenset())
    for v in all_lassos("xy", 1, 2):
        assert not stream_density_member(PARAM, empty, v)
        assert not stream_density_member(StreamParam(PARAM.r, frozenset()), X, v)


def test_stream_param_validation():
    with pytest.raises(InvalidStructure):
        StreamParam(FinSet([0]), frozenset({Lasso((), (1,))}))


def reencode(v, rng):
    k = rng.randint(0, 3)
    shift = rng.randint(0, 3)
    cycle = v.cycle * rng.randint(1, 3)
    prefix = v.prefix + cycle * k + cycle[:shift]
    return Lasso.__new__(Lasso), prefix, cycle[shift:] + cycle[:shift]


def test_membership_is_representation_invariant():
    rng = random.Random(1)
    for v in all_lassos("xy", 2, 3):
        want = stream_density_member(PARAM, X, v)
        for _ in range(20):
            _, prefix, cycle = reencode(v, rng)
            assert stream_density_member(PARAM, X, Lasso(prefix, cycle)) == want


def test_comultiplication_lands_in_double_lift():
    lifted = LiftedStreamPred(PARAM, X)
    v = Lasso((), ("x", "y"))
    assert lifted.contains(v)
    assert stream_density_member(PARAM, lifted, comultiply(v))


def test_comonad_laws():
    samples = [(PARAM, X, all_lassos("xy", 1, 2))]
    assert comonad_laws_check(samples).ok
    assert comonad_laws_check([]).ok
