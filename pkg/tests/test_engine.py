import pytest

from kanlift import engine as E
from kanlift import fibration as fib
from kanlift.errors import CarrierMismatch, NotClosed, TagMismatch
from kanlift.fibration import FibreObject, LiftingParam, Tag
from kanlift.finset import FinSet
from kanlift.monad import union_op
from kanlift.suites import carriers, samples_for

A, B = frozenset("a"), frozenset("b")
AB, NONE = frozenset("ab"), frozenset()


def lift(m, kind, x):
    return E.codensity_lift(m, E.BUILTIN_PARAMS[E.Kind(kind)](), x).result


def test_lower_preorder_on_chain(m, chain2):
    r = lift(m, "lower-pre", chain2).data
    assert all((NONE, v) in r for v in (NONE, A, B, AB))
    assert (A, B) in r and (B, A) not in r and (AB, B) in r


def test_convex_is_meet_of_single_parameters(m, chain2):
    lo, up = lift(m, "lower-pre", chain2), lift(m, "upper-pre", chain2)
    conv = lift(m, "convex", chain2)
    assert conv == fib.fibred_meet([lo, up])
    assert conv == E.closed_form_lift("convex", chain2)


def test_lower_vietoris_on_sierpinski(m, sierpinski):
    z, o = frozenset([0]), frozenset([1])
    zo = z | o
    expected = fib.generate_topology(m.T(sierpinski.carrier), [[o, zo], [z, o, zo]])
    assert lift(m, "lower-vietoris", sierpinski) == expected


def test_closed_form_examples():
    chain = fib.preorder(FinSet("ab"), [("a", "b")])
    assert (B, A) not in E.closed_form_lift("lower-pre", chain).data
    discrete = fib.preorder(FinSet("ab"))
    assert (A, AB) not in E.closed_form_lift("upper-pre", discrete).data
    indiscrete = fib.top(Tag.TOP, FinSet("ab"))
    opens = set(E.closed_form_lift("lower-vietoris", indiscrete).opens)
    assert opens == {NONE, frozenset([A, B, AB]), frozenset([NONE, A, B, AB])}


def test_closed_form_tag_mismatch(sierpinski):
    with pytest.raises(TagMismatch):
        E.closed_form_lift("lower-pre", sierpinski)


def test_parameter_tag_mismatch(m, sierpinski):
    with pytest.raises(TagMismatch):
        E.codensity_lift(m, E.lower_pre_param(), sierpinski)


def test_parameter_not_above_TR(m, chain2):
    bad = LiftingParam.single(FinSet(["*"]), fib.top(Tag.PRE, FinSet([1, 2, 3])))
    with pytest.raises(CarrierMismatch):
        E.codensity_lift(m, bad, chain2)


def test_empty_hom_family_gives_top(m):
    x = fib.predicate(FinSet("a"), ["a"])
    s = fib.predicate(m.T(FinSet(["*"])), [])
    out = E.codensity_lift(m, LiftingParam.single(FinSet(["*"]), s), x)
    assert out.witness_count == 0
    assert out.result == fib.top(Tag.PRED, m.T(x.carrier))


@pytest.mark.parametrize("kind", [k.value for k in E.Kind])
def test_engine_matches_closed_form_up_to_two_points(m, kind):
    for x in samples_for(kind, 2):
        assert lift(m, kind, x) == E.closed_form_lift(kind, x)


def test_lifting_laws_on_two_points(m):
    samples = samples_for("lower-pre", 2)
    assert E.verify_lifting_laws(m, lambda x: lift(m, "lower-pre", x), samples).ok


def test_lifting_laws_catch_irreflexive_mutant(m):
    def broken(x):
        r = lift(m, "lower-pre", x)
        return FibreObject(Tag.PRE, r.carrier, frozenset((u, v) for u, v in r.data if u != v))

    report = E.verify_lifting_laws(m, broken, samples_for("lower-pre", 2))
    unit = report.checks[0]
    assert not unit.passed and unit.witness is not None


def test_lifting_laws_vacuous(m):
    assert E.verify_lifting_laws(m, lambda x: x, []).ok


@pytest.mark.parametrize("param", [E.lower_vietoris_param, E.upper_vietoris_param,
                                   E.lower_pre_param, E.upper_pre_param])
def test_union_lifts_for_finite_arity(m, param):
    for a in carriers(4):
        assert E.algop_lift_exists(m, param(), union_op(a))


def test_union_components_are_morphisms(m):
    op = union_op(FinSet([0, 1]))
    for x in samples_for("lower-vietoris", 2):
        assert E.algop_component_is_morphism(op, lift(m, "lower-vietoris", x), x.carrier)


def test_closedness_examples(m, chain2):
    tx = m.T(chain2.carrier)
    assert E.is_closed(m, chain2, fib.top(Tag.PRE, tx))
    assert E.is_closed(m, chain2, lift(m, "lower-pre", chain2))
    x = fib.predicate(FinSet("a"), ["a"])
    assert not E.is_closed(m, x, fib.predicate(m.T(x.carrier), []))


def test_phi_identity_and_top(m, chain2):
    s = lift(m, "upper-pre", chain2)
    assert E.phi(m, s, chain2, chain2) == s
    top = fib.top(Tag.PRE, m.T(chain2.carrier))
    for y in samples_for("lower-pre", 2):
        assert E.phi(m, top, chain2, y) == fib.top(Tag.PRE, m.T(y.carrier))


def test_phi_rejects_non_closed(m):
    x = fib.predicate(FinSet("a"), ["a"])
    with pytest.raises(NotClosed):
        E.phi(m, fib.predicate(m.T(x.carrier), []), x, x)
