"""Membership oracles for the liftings of the sub-Giry monad, and
simulation / bisimulation checks for finite LMPs.

The lifted relations on measures are never materialised.  Each check
quantifies over the finitely many measurable sets of the state spaces.
Checkers come in pairs: ``*_witness`` returns ``None`` or a counterexample
dict, and ``is_*`` wraps it as a bool.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import ActionMismatch, InvalidStructure, NotReflexive, SpaceMismatch
from .measurable import LMP, FinMeasSpace, SubProb

ZERO, ONE = Fraction(0), Fraction(1)


@dataclass(frozen=True)
class RelParam:
    """A relation ``S₀`` on ``[0, 1]`` used as the lifting parameter.

    The subset characterisations assume ``S₀`` is closed under indicator
    thresholds, convex hulls and pointwise suprema; this holds for LEQ and
    EQ.  Other relations must be certified by the caller.
    """

    name: str
    holds: Callable[[Fraction, Fraction], bool]
    certified: bool = False

    def __call__(self, a, b) -> bool:
        return self.holds(a, b)


LEQ = RelParam("LEQ", lambda a, b: a <= b, certified=True)
EQ = RelParam("EQ", lambda a, b: a == b, certified=True)


def custom_param(name: str, holds) -> RelParam:
    warnings.warn(f"relation {name!r} is caller-certified: the subset characterisation "
                  "is only sound if it is closed under thresholds, convex hulls and suprema",
                  stacklevel=2)
    return RelParam(name, holds, certified=False)


@dataclass(frozen=True)
class BRelObj:
    rel: frozenset
    space1: FinMeasSpace
    space2: FinMeasSpace

    def __post_init__(self):
        rel = frozenset(self.rel)
        for a, b in rel:
            if a not in self.space1.carrier or b not in self.space2.carrier:
                raise InvalidStructure(f"pair {(a, b)!r} outside the carriers")
        object.__setattr__(self, "rel", rel)


@dataclass(frozen=True)
class ERelObj:
    rel: frozenset
    space: FinMeasSpace

    def __post_init__(self):
        rel = frozenset(self.rel)
        for a, b in rel:
            if a not in self.space.carrier or b not in self.space.carrier:
                raise InvalidStructure(f"pair {(a, b)!r} outside the carrier")
        object.__setattr__(self, "rel", rel)


# --- relation helpers -------------------------------------------------------

def rel_image(r, xs) -> frozenset:
    xs = frozenset(xs)
    return frozenset(b for a, b in r if a in xs)


def rel_compose(r1, r2) -> frozenset:
    """``r1 ; r2`` (first ``r1``, then ``r2``)."""
    succ: dict = {}
    for b, c in r2:
        succ.setdefault(b, set()).add(c)
    return frozenset((a, c) for a, b in r1 for c in succ.get(b, ()))


def diagonal(space: FinMeasSpace) -> frozenset:
    return frozenset((x, x) for x in space.carrier)


def _sorted(space: FinMeasSpace, xs) -> list:
    return [x for x in space.carrier if x in xs]


# --- lifted relations -------------------------------------------------------

def brel_member(x: BRelObj, s0: RelParam, v1: SubProb, v2: SubProb) -> bool:
    if v1.space != x.space1 or v2.space != x.space2:
        raise SpaceMismatch("measures are not on the object's spaces")
    sp1, sp2 = x.space1, x.space2
    for mv in sp1.masks():
        V = sp1.union(mv)
        for mw in sp2.masks():
            W = sp2.union(mw)
            if all(s0(ONE if a in V else ZERO, ONE if b in W else ZERO) for a, b in x.rel):
                if not s0(v1.at_mask(mv), v2.at_mask(mw)):
                    return False
    return True


def erel_member(x: ERelObj, s0: RelParam, v1: SubProb, v2: SubProb) -> bool:
    if v1.space != x.space or v2.space != x.space:
        raise SpaceMismatch("measures are not on the object's space")
    sp = x.space
    for mv in sp.masks():
        V = sp.union(mv)
        if all(s0(ONE if a in V else ZERO, ONE if b in V else ZERO) for a, b in x.rel):
            if not s0(v1.at_mask(mv), v2.at_mask(mv)):
                return False
    return True


# --- simulations and bisimulations -----------------------------------------

def _check_actions(lmp1: LMP, lmp2: LMP) -> None:
    if set(lmp1.actions) != set(lmp2.actions):
        raise ActionMismatch("the LMPs have different action sets")


def _check_rel(r, c1, c2) -> frozenset:
    r = frozenset(r)
    for a, b in r:
        if a not in c1 or b not in c2:
            raise InvalidStructure(f"pair {(a, b)!r} outside the state spaces")
    return r


def simulation_single_witness(lmp: LMP, r):
    sp = lmp.space
    r = _check_rel(r, sp.carrier, sp.carrier)
    if not diagonal(sp) <= r:
        raise NotReflexive("a simulation on a single LMP must be reflexive")
    invariant = [m for m in sp.masks() if rel_image(r, sp.union(m)) <= sp.union(m)]
    for s1, s2 in sorted(r, key=lambda p: (sp.carrier.index(p[0]), sp.carrier.index(p[1]))):
        for a in lmp.actions:
            k1, k2 = lmp(a, s1), lmp(a, s2)
            for m in invariant:
                if k1.at_mask(m) > k2.at_mask(m):
                    U = _sorted(sp, sp.union(m))
                    return {"pair": [s1, s2], "action": a, "V": U, "W": U,
                            "lhs": k1.at_mask(m), "rhs": k2.at_mask(m)}
    return None


def is_simulation_single(lmp: LMP, r) -> bool:
    return simulation_single_witness(lmp, r) is None


def _sorted_pairs(r, c1, c2):
    return sorted(r, key=lambda p: (c1.index(p[0]), c2.index(p[1])))


def simulation_two_witness(lmp1: LMP, lmp2: LMP, r, exhaustive: bool = False):
    """First violation of ``r[V] ⊆ W ⇒ k₁(a,s₁)(V) ≤ k₂(a,s₂)(W)``.

    By monotonicity of measures it suffices to test, for each ``V``, the
    least measurable ``W`` containing ``r[V]``; ``exhaustive=True`` tests
    every measurable ``W`` instead.
    """
    _check_actions(lmp1, lmp2)
    sp1, sp2 = lmp1.space, lmp2.space
    r = _check_rel(r, sp1.carrier, sp2.carrier)
    tests = []
    for mv in sp1.masks():
        img = rel_image(r, sp1.union(mv))
        if exhaustive:
            tests += [(mv, mw) for mw in sp2.masks() if img <= sp2.union(mw)]
        else:
            tests.append((mv, sp2.hull_mask(img)))
    for s1, s2 in _sorted_pairs(r, sp1.carrier, sp2.carrier):
        for a in lmp1.actions:
            k1, k2 = lmp1(a, s1), lmp2(a, s2)
            for mv, mw in tests:
                if k1.at_mask(mv) > k2.at_mask(mw):
                    return {"pair": [s1, s2], "action": a,
                            "V": _sorted(sp1, sp1.union(mv)), "W": _sorted(sp2, sp2.union(mw)),
                            "lhs": k1.at_mask(mv), "rhs": k2.at_mask(mw)}
    return None


def is_simulation_two(lmp1: LMP, lmp2: LMP, r) -> bool:
    return simulation_two_witness(lmp1, lmp2, r) is None


def closed_pairs(r, sp1: FinMeasSpace, sp2: FinMeasSpace) -> list:
    """All measurable ``(V, W)`` (as block masks) that are ``r``-closed."""
    out = []
    w_masks = list(sp2.masks())
    for mv in sp1.masks():
        V = sp1.union(mv)
        need = frozenset(b for a, b in r if a in V)
        forbid = frozenset(b for a, b in r if a not in V)
        if need & forbid:
            continue
        for mw in w_masks:
            W = sp2.union(mw)
            if need <= W and not (forbid & W):
                out.append((mv, mw))
    return out


def bisimulation_witness(lmp1: LMP, lmp2: LMP, r):
    _check_actions(lmp1, lmp2)
    sp1, sp2 = lmp1.space, lmp2.space
    r = _check_rel(r, sp1.carrier, sp2.carrier)
    tests = closed_pairs(r, sp1, sp2)
    for s1, s2 in _sorted_pairs(r, sp1.carrier, sp2.carrier):
        for a in lmp1.actions:
            k1, k2 = lmp1(a, s1), lmp2(a, s2)
            for mv, mw in tests:
                if k1.at_mask(mv) != k2.at_mask(mw):
                    return {"pair": [s1, s2], "action": a,
                            "V": _sorted(sp1, sp1.union(mv)), "W": _sorted(sp2, sp2.union(mw)),
                            "lhs": k1.at_mask(mv), "rhs": k2.at_mask(mw)}
    return None


def is_bisimulation(lmp1: LMP, lmp2: LMP, r) -> bool:
    return bisimulation_witness(lmp1, lmp2, r) is None


def preserves_measurable_sets(r, space1: FinMeasSpace, space2: FinMeasSpace) -> bool:
    return all(space2.is_measurable(rel_image(r, space1.union(m))) for m in space1.masks())


# --- greatest fixpoints -----------------------------------------------------

def _pair_ok_two(lmp1, lmp2, r, s1, s2) -> bool:
    sp1, sp2 = lmp1.space, lmp2.space
    for a in lmp1.actions:
        k1, k2 = lmp1(a, s1), lmp2(a, s2)
        for mv in sp1.masks():
            mw = sp2.hull_mask(rel_image(r, sp1.union(mv)))
            if k1.at_mask(mv) > k2.at_mask(mw):
                return False
    return True


def simulation_functional(lmp1: LMP, lmp2: LMP, r) -> frozenset:
    """Pairs of ``r`` that satisfy the simulation condition relative to ``r``."""
    _check_actions(lmp1, lmp2)
    return frozenset(p for p in r if _pair_ok_two(lmp1, lmp2, r, *p))


def largest_simulation_two(lmp1: LMP, lmp2: LMP, start=None) -> frozenset:
    """Greatest fixpoint of :func:`simulation_functional` below ``start``
    (default: the total relation)."""
    _check_actions(lmp1, lmp2)
    if start is None:
        start = itertools.product(lmp1.space.carrier, lmp2.space.carrier)
    r = _check_rel(start, lmp1.space.carrier, lmp2.space.carrier)
    while True:
        nxt = simulation_functional(lmp1, lmp2, r)
        if nxt == r:
            return r
        r = nxt


def largest_simulation_single(lmp: LMP) -> frozenset:
    """Greatest reflexive simulation on one LMP."""
    sp = lmp.space
    r = frozenset(itertools.product(sp.carrier, repeat=2))
    while True:
        invariant = [m for m in sp.masks() if rel_image(r, sp.union(m)) <= sp.union(m)]
        nxt = frozenset((s1, s2) for s1, s2 in r
                        if all(lmp(a, s1).at_mask(m) <= lmp(a, s2).at_mask(m)
                               for a in lmp.actions for m in invariant))
        if nxt == r:
            return r
        r = nxt
