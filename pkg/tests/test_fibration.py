import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kanlift import fibration as fib
from kanlift.errors import EmptyList, InvalidStructure, TagMismatch, UnsupportedTag
from kanlift.fibration import INF, Tag
from kanlift.finset import FinFun, FinSet, constant, enumerate_functions, identity

from conftest import carrier, preorders

SMALL = [c for n in range(4) for c in [carrier(n)]]


def test_preorder_is_closed(chain2):
    assert ("a", "a") in chain2.data and ("a", "b") in chain2.data
    assert ("b", "a") not in chain2.data


def test_reindex_along_constant_is_total(chain2):
    dom = FinSet("xyz")
    r = fib.reindex(constant(dom, chain2.carrier, "a"), chain2)
    assert r == fib.top(Tag.PRE, dom)


def test_reindex_identity_topology(sierpinski):
    assert fib.reindex(identity(sierpinski.carrier), sierpinski) == sierpinski


def test_reindex_metric_into_point():
    point = fib.pseudometric(FinSet(["x"]), [[0]])
    r = fib.reindex(constant(FinSet("ab"), point.carrier, "x"), point)
    assert r.data == ((0, 0), (0, 0))


def test_meet_of_opposite_chains():
    c = FinSet("ab")
    m = fib.fibred_meet([fib.preorder(c, [("a", "b")]), fib.preorder(c, [("b", "a")])])
    assert m == fib.preorder(c)


def test_meet_of_sierpinski_and_opposite_is_discrete():
    c = FinSet([0, 1])
    s1 = fib.topology(c, [[], [1], [0, 1]])
    s0 = fib.topology(c, [[], [0], [0, 1]])
    meet = fib.fibred_meet([s1, s0])
    assert set(meet.opens) == {frozenset(), frozenset([0]), frozenset([1]), frozenset([0, 1])}


def test_meet_with_zero_metric():
    c = FinSet("ab")
    d = fib.pseudometric(c, [[0, Fraction(1, 3)], [Fraction(1, 3), 0]])
    assert fib.fibred_meet([fib.top(Tag.MET, c), d]) == d


def test_meet_errors():
    with pytest.raises(EmptyList):
        fib.fibred_meet([])
    c = FinSet("a")
    with pytest.raises(TagMismatch):
        fib.fibred_meet([fib.top(Tag.PRE, c), fib.top(Tag.TOP, c)])


def test_is_morphism_examples(chain2, sierpinski):
    assert fib.is_morphism(identity(chain2.carrier), chain2, chain2)
    antichain = fib.preorder(chain2.carrier)
    assert not fib.is_morphism(identity(chain2.carrier), chain2, antichain)
    for v in sierpinski.carrier:
        assert fib.is_morphism(constant(FinSet("xyz"), sierpinski.carrier, v),
                               fib.topology(FinSet("xyz"), [[], ["x"], ["x", "y", "z"]]),
                               sierpinski)


def test_metric_morphism_is_non_expansive():
    c = FinSet("ab")
    near = fib.pseudometric(c, {("a", "b"): Fraction(1, 4)})
    far = fib.pseudometric(c, {("a", "b"): 1})
    f = identity(c)
    assert fib.is_morphism(f, far, near)
    assert not fib.is_morphism(f, near, far)


def test_hom_counts(chain2, sierpinski):
    assert len(list(fib.hom_enumerate(chain2, chain2))) == 3
    maps = list(fib.hom_enumerate(sierpinski, sierpinski))
    assert {f.images for f in maps} == {(0, 1), (0, 0), (1, 1)}
    empty = fib.top(Tag.PRE, FinSet([]))
    assert len(list(fib.hom_enumerate(empty, chain2))) == 1


def test_specialisation_matches_continuity():
    for x in fib.all_topologies(carrier(2)):
        for y in fib.all_topologies(carrier(2)):
            for f in enumerate_functions(x.carrier, y.carrier):
                assert fib.is_morphism(f, x, y) == fib.is_continuous(f, x, y)


def test_topology_validation():
    with pytest.raises(InvalidStructure):
        fib.topology(FinSet([0, 1]), [[0], [0, 1]])
    with pytest.raises(InvalidStructure):
        fib.topology(FinSet([0, 1, 2]), [[], [0], [1], [0, 1, 2]])


def test_metric_validation():
    c = FinSet("abc")
    with pytest.raises(InvalidStructure):
        fib.pseudometric(c, {("a", "b"): 1, ("b", "c"): 1, ("a", "c"): 3})
    d = fib.pseudometric(c, {("a", "b"): 1, ("b", "c"): INF, ("a", "c"): INF})
    assert d.dist("b", "c") == INF


def test_topology_enumeration_counts():
    assert [len(fib.all_topologies(carrier(n))) for n in range(4)] == [1, 1, 4, 29]


def test_power_singleton_is_copy(chain2):
    p = fib.power_object(FinSet(["1"]), chain2)
    assert {(a[0], b[0]) for a, b in p.data} == set(chain2.data)


def test_power_of_chain_is_componentwise(chain2):
    p = fib.power_object(FinSet([1, 2]), chain2)
    assert len(p.carrier) == 4
    assert (("a", "a"), ("b", "b")) in p.data
    assert (("a", "b"), ("b", "a")) not in p.data


def test_power_of_sierpinski_product_topology(sierpinski):
    p = fib.power_object(FinSet([1, 2]), sierpinski)
    sub = [[t for t in p.carrier if t[0] == 1], [t for t in p.carrier if t[1] == 1]]
    assert p == fib.generate_topology(p.carrier, sub)


def test_power_unsupported():
    with pytest.raises(UnsupportedTag):
        fib.power_object(FinSet([1]), fib.top(Tag.MET, FinSet("a")))


def test_power_is_morphism_agrees_with_materialised(m):
    from kanlift.monad import union_op
    for x in fib.all_preorders(carrier(2)):
        tx = m.T(x.carrier)
        for s in [fib.top(Tag.PRE, tx), fib.preorder(tx, [(frozenset(), frozenset("a"))])]:
            for n in range(1, 3):
                a = FinSet(range(n))
                alpha = union_op(a).component(x.carrier)
                direct = fib.is_morphism(alpha, fib.power_object(a, s), s)
                assert fib.power_is_morphism(a, s, alpha, s) == direct


@settings(max_examples=60, deadline=None)
@given(preorders(), st.data())
def test_reindex_functorial(s, data):
    c = s.carrier
    if not len(c):
        return
    mid = carrier(data.draw(st.integers(1, 3)))
    dom = carrier(data.draw(st.integers(0, 3)))
    g = FinFun(mid, c, [data.draw(st.sampled_from(c.elements)) for _ in mid])
    f = FinFun(dom, mid, [data.draw(st.sampled_from(mid.elements)) for _ in dom])
    assert fib.reindex(g.after(f), s) == fib.reindex(f, fib.reindex(g, s))
    assert fib.reindex(identity(c), s) == s


@settings(max_examples=60, deadline=None)
@given(preorders(), st.data())
def test_reindex_preserves_meets(s, data):
    c = s.carrier
    other = data.draw(st.sampled_from(fib.all_preorders(c)))
    dom = carrier(data.draw(st.integers(0, 3)))
    if not len(c) and len(dom):
        return
    f = FinFun(dom, c, [data.draw(st.sampled_from(c.elements)) for _ in dom])
    assert fib.reindex(f, fib.fibred_meet([s, other])) == fib.fibred_meet(
        [fib.reindex(f, s), fib.reindex(f, other)])


@pytest.mark.parametrize("tag", [Tag.PRE, Tag.TOP])
def test_meet_is_greatest_lower_bound(tag):
    for n in range(4):
        objs = fib.all_preorders(carrier(n), tag)
        for a, b in itertools.product(objs, repeat=2):
            m = fib.fibred_meet([a, b])
            assert fib.leq(m, a) and fib.leq(m, b)
            for z in objs:
                if fib.leq(z, a) and fib.leq(z, b):
                    assert fib.leq(z, m)


def test_morphisms_compose():
    objs = fib.all_preorders(carrier(2))
    for x, y, z in itertools.product(objs, repeat=3):
        for f in fib.hom_enumerate(x, y):
            for g in fib.hom_enumerate(y, z):
                assert fib.is_morphism(g.after(f), x, z)


def test_binrel_reindex_and_morphism():
    c1, c2 = FinSet("ab"), FinSet([0, 1])
    r = fib.binrel(c1, c2, [("a", 0), ("b", 1)])
    swap = (FinFun(c1, c1, {"a": "b", "b": "a"}), FinFun(c2, c2, {0: 1, 1: 0}))
    assert fib.reindex(swap, r) == r
    assert fib.is_morphism(swap, r, r)
