"""Codensity lifting of finite monads along posetal fibrations.

With a parameter ``(R, S)`` the lifted object over ``X`` is the meet, in
the fibre above ``T(pX)``, of the inverse images ``(f#)*(S)`` where ``f``
ranges over all morphisms ``X → S`` of the total category.  A family of
parameters contributes the meet over all of its entries.

Unit and multiplication of the lifted monad are not separate data: in a
posetal fibration they exist iff the corresponding base maps are
morphisms, which is what :func:`verify_lifting_laws` checks.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from . import fibration as fib
from .errors import CarrierMismatch, NotClosed, TagMismatch, UnsupportedTag
from .fibration import FibreObject, LiftingParam, Tag
from .finset import FinSet
from .monad import AlgebraicOp, FiniteMonad, powerset_monad
from .report import Report

POINT = FinSet(["*"])


# --- base-category helpers (BREL lives over pairs of sets) -----------------

def apply_T(m: FiniteMonad, carrier):
    if isinstance(carrier, tuple):
        return tuple(m.T(c) for c in carrier)
    return m.T(carrier)


def unit_of(m: FiniteMonad, carrier):
    if isinstance(carrier, tuple):
        return tuple(m.unit(c) for c in carrier)
    return m.unit(carrier)


def kleisli_of(m: FiniteMonad, f):
    if isinstance(f, tuple):
        return tuple(m.kleisli(g) for g in f)
    return m.kleisli(f)


@dataclass(frozen=True)
class LiftedObject:
    base: FibreObject
    result: FibreObject
    witness_count: int


def codensity_lift(m: FiniteMonad, param: LiftingParam, x: FibreObject) -> LiftedObject:
    target = apply_T(m, x.carrier)
    acc = None
    seen = set()
    count = 0
    for r, s in param.entries:
        if s.tag is not x.tag:
            raise TagMismatch(f"parameter is {s.tag.value} but the object is {x.tag.value}")
        if s.carrier != apply_T(m, r):
            raise CarrierMismatch("parameter object is not above T R")
        for f in fib.hom_enumerate(x, s):
            count += 1
            pulled = fib.reindex(kleisli_of(m, f), s)
            if pulled in seen:
                continue
            seen.add(pulled)
            acc = pulled if acc is None else fib.fibred_meet([acc, pulled])
    if acc is None:
        acc = fib.top(x.tag, target)
    return LiftedObject(x, acc, count)


# --- built-in parameters for the powerset monad ----------------------------

EMPTY, STAR = frozenset(), frozenset(["*"])
T1 = FinSet([EMPTY, STAR])


def lower_pre_param() -> LiftingParam:
    return LiftingParam.single(POINT, fib.preorder(T1, [(EMPTY, STAR)]))


def upper_pre_param() -> LiftingParam:
    return LiftingParam.single(POINT, fib.preorder(T1, [(STAR, EMPTY)]))


def convex_pre_param() -> LiftingParam:
    return LiftingParam(lower_pre_param().entries + upper_pre_param().entries)


def lower_vietoris_param() -> LiftingParam:
    return LiftingParam.single(POINT, fib.topology(T1, [(), (STAR,), (EMPTY, STAR)]))


def upper_vietoris_param() -> LiftingParam:
    return LiftingParam.single(POINT, fib.topology(T1, [(), (EMPTY,), (EMPTY, STAR)]))


class Kind(str, Enum):
    LOWER_PRE = "lower-pre"
    UPPER_PRE = "upper-pre"
    CONVEX_PRE = "convex"
    LOWER_VIETORIS = "lower-vietoris"
    UPPER_VIETORIS = "upper-vietoris"


BUILTIN_PARAMS = {
    Kind.LOWER_PRE: lower_pre_param,
    Kind.UPPER_PRE: upper_pre_param,
    Kind.CONVEX_PRE: convex_pre_param,
    Kind.LOWER_VIETORIS: lower_vietoris_param,
    Kind.UPPER_VIETORIS: upper_vietoris_param,
}


def closed_form_lift(kind, x: FibreObject) -> FibreObject:
    """Hoare/Smyth/Egli-Milner orders and lower/upper Vietoris topologies."""
    kind = Kind(kind)
    tx = powerset_monad().T(x.carrier)
    subsets = list(tx)
    if kind in (Kind.LOWER_PRE, Kind.UPPER_PRE, Kind.CONVEX_PRE):
        if x.tag is not Tag.PRE:
            raise TagMismatch("preorder liftings need a PRE object")
        le = x.data

        def lower(u, v):
            return all(any((i, j) in le for j in v) for i in u)

        def upper(u, v):
            return all(any((i, j) in le for i in u) for j in v)

        rel = {Kind.LOWER_PRE: lower, Kind.UPPER_PRE: upper,
               Kind.CONVEX_PRE: lambda u, v: lower(u, v) and upper(u, v)}[kind]
        pairs = frozenset((u, v) for u in subsets for v in subsets if rel(u, v))
        return FibreObject(Tag.PRE, tx, pairs)
    if x.tag is not Tag.TOP:
        raise TagMismatch("Vietoris liftings need a TOP object")
    if kind is Kind.LOWER_VIETORIS:
        subbasis = [[v for v in subsets if v & u] for u in x.opens]
    else:
        subbasis = [[v for v in subsets if v <= u] for u in x.opens]
    return fib.generate_topology(tx, subbasis)


def verify_lifting_laws(m: FiniteMonad, lift, samples) -> Report:
    """Unit and Kleisli-extension membership conditions of a lifting.

    ``lift`` maps a fibre object ``X`` to an object above ``T(pX)``.  For
    each sample ``X`` the unit must be a morphism ``X → lift(X)``; for each
    pair ``X, Y`` every morphism ``f: X → lift(Y)`` must extend to a
    morphism ``f#: lift(X) → lift(Y)``.
    """
    samples = list(samples)
    lifted = [lift(x) for x in samples]
    report = Report(f"lifting laws for {m.name}")

    witness = None
    for x, lx in zip(samples, lifted):
        if not fib.is_morphism(unit_of(m, x.carrier), x, lx):
            witness = {"X": x}
            break
    report.record("unit is a morphism X -> lift(X)", witness is None, len(samples), witness)

    witness, cases = None, 0
    for (x, lx), (y, ly) in itertools.product(zip(samples, lifted), repeat=2):
        for f in fib.hom_enumerate(x, ly):
            cases += 1
            if not fib.is_morphism(kleisli_of(m, f), lx, ly):
                witness = {"X": x, "Y": y, "f": f}
                break
        if witness is not None:
            break
    report.record("extension f# is a morphism lift(X) -> lift(Y)",
                  witness is None, cases, witness)
    return report


# --- algebraic operations --------------------------------------------------

def algop_lift_exists(m: FiniteMonad, param: LiftingParam, op: AlgebraicOp) -> bool:
    """Whether ``op`` lifts to the codensity lifting with a single parameter.

    For a faithful posetal fibration a lifting exists iff the component
    ``α_R`` is a morphism ``A ⋔ S → S``.
    """
    if len(param.entries) != 1:
        raise ValueError("algebraic-operation lifting needs a single parameter")
    r, s = param.entries[0]
    if s.tag not in (Tag.PRED, Tag.PRE, Tag.TOP):
        raise UnsupportedTag(f"powers of {s.tag.value} objects are not supported")
    alpha = op.component(r)
    return fib.is_morphism(alpha, fib.power_object(op.arity, s), s)


def algop_component_is_morphism(op: AlgebraicOp, lifted: FibreObject, x: FinSet) -> bool:
    """Whether ``α_X: A ⋔ lifted → lifted`` is a morphism (``lifted`` above ``T X``)."""
    return fib.power_is_morphism(op.arity, lifted, op.component(x), lifted)


# --- closed objects --------------------------------------------------------

def is_closed(m: FiniteMonad, x: FibreObject, s: FibreObject) -> bool:
    """``s`` above ``T(pX)`` is closed w.r.t. ``x``: the unit is a morphism
    ``x → s`` and every ``f: x → s`` extends to ``f#: s → s``."""
    if s.carrier != apply_T(m, x.carrier):
        raise CarrierMismatch("closed objects live above T(pX)")
    if s.tag is not x.tag:
        raise TagMismatch("object and candidate live in different fibrations")
    if not fib.is_morphism(unit_of(m, x.carrier), x, s):
        return False
    return all(fib.is_morphism(kleisli_of(m, f), s, s) for f in fib.hom_enumerate(x, s))


def phi(m: FiniteMonad, s: FibreObject, x: FibreObject, y: FibreObject) -> FibreObject:
    """Evaluate at ``y`` the lifting seeded by the closed object ``s`` at ``x``."""
    if not is_closed(m, x, s):
        raise NotClosed("parameter is not closed with respect to x")
    return codensity_lift(m, LiftingParam.single(x.carrier, s), y).result
