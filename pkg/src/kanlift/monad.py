"""Monads on finite sets whose ``T X`` is finite and enumerable.

A monad is given as a Kleisli triple: the object map, the unit at each
carrier, and the extension ``f ↦ f#`` of ``f: X → T Y`` to
``f#: T X → T Y``. Multiplication is recovered as ``kleisli(id_{TX})``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

from .finset import (FinFun, FinSet, enumerate_functions, identity,
                     power_set_of_tuples, powerset_elements)
from .report import Report


@dataclass(frozen=True)
class FiniteMonad:
    name: str
    apply_T: Callable[[FinSet], FinSet]
    unit_at: Callable[[FinSet], FinFun]
    extend: Callable[[FinFun], Callable]

    def T(self, x: FinSet) -> FinSet:
        return self.apply_T(x)

    def unit(self, x: FinSet) -> FinFun:
        return self.unit_at(x)

    def kleisli(self, f: FinFun) -> FinFun:
        """``f#: T(dom f) → cod f`` for ``f: X → T Y``."""
        ext = self.extend(f)
        tx = self.T(f.dom)
        return FinFun(tx, f.cod, tuple(ext(v) for v in tx), check=False)

    def mu(self, x: FinSet) -> FinFun:
        return self.kleisli(identity(self.T(x)))


@lru_cache(maxsize=None)
def _powerset_carrier(x: FinSet) -> FinSet:
    return FinSet(powerset_elements(x))


def _powerset_unit(x: FinSet) -> FinFun:
    return FinFun(x, _powerset_carrier(x), tuple(frozenset((e,)) for e in x), check=False)


def _powerset_extend(f: FinFun):
    def ext(v):
        out = frozenset()
        for e in v:
            out |= f(e)
        return out
    return ext


def powerset_monad() -> FiniteMonad:
    return FiniteMonad("powerset", _powerset_carrier, _powerset_unit, _powerset_extend)


@dataclass(frozen=True)
class AlgebraicOp:
    """An ``A``-ary algebraic operation ``α_X: A ⋔ T X → T X``.

    ``A ⋔ T X`` is the set of ``|A|``-tuples over ``T X`` (one slot per
    element of ``arity``, in order).
    """

    name: str
    monad: FiniteMonad
    arity: FinSet
    combine: Callable[[tuple], object]

    def component(self, x: FinSet) -> FinFun:
        tx = self.monad.T(x)
        dom = power_set_of_tuples(self.arity, tx)
        return FinFun(dom, tx, tuple(self.combine(t) for t in dom), check=False)


def union_op(arity: FinSet) -> AlgebraicOp:
    def combine(family):
        return frozenset().union(*family)
    return AlgebraicOp(f"union^{len(arity)}", powerset_monad(), arity, combine)


def check_naturality(op: AlgebraicOp, carriers: Iterable[FinSet]) -> Report:
    """``f# ∘ α_X = α_Y ∘ (A ⋔ f#)`` for all ``f: X → T Y``."""
    m = op.monad
    report = Report(f"naturality of {op.name}")
    carriers = list(carriers)
    cases, witness = 0, None
    for x, y in itertools.product(carriers, repeat=2):
        ax = op.component(x)
        ay = op.component(y)
        for f in enumerate_functions(x, m.T(y)):
            fs = m.kleisli(f)
            for fam in ax.dom:
                cases += 1
                if fs(ax(fam)) != ay(tuple(fs(v) for v in fam)):
                    witness = witness or {"X": x, "Y": y, "f": f, "family": fam}
    report.record("naturality in Kleisli morphisms", witness is None, cases, witness)
    return report


def verify_monad_laws(m: FiniteMonad, carriers: Iterable[FinSet]) -> Report:
    """Extensional check of the three Kleisli-triple laws on every carrier."""
    carriers = list(carriers)
    report = Report(f"monad laws for {m.name}")

    cases, witness = 0, None
    for x in carriers:
        cases += 1
        if m.kleisli(m.unit(x)) != identity(m.T(x)) and witness is None:
            witness = {"X": x}
    report.record("kleisli(unit) = id", witness is None, cases, witness)

    cases, witness = 0, None
    for x, y in itertools.product(carriers, repeat=2):
        ux = m.unit(x)
        for f in enumerate_functions(x, m.T(y)):
            cases += 1
            if m.kleisli(f).after(ux) != f and witness is None:
                witness = {"X": x, "Y": y, "f": f}
    report.record("kleisli(f) . unit = f", witness is None, cases, witness)

    cases, witness = 0, None
    for x, y, z in itertools.product(carriers, repeat=3):
        gs = [(g, m.kleisli(g)) for g in enumerate_functions(y, m.T(z))]
        for f in enumerate_functions(x, m.T(y)):
            fs = m.kleisli(f)
            for g, gsharp in gs:
                cases += 1
                lhs = gsharp.after(fs)
                rhs = m.kleisli(gsharp.after(f))
                if lhs != rhs and witness is None:
                    witness = {"X": x, "Y": y, "Z": z, "f": f, "g": g}
    report.record("kleisli(g) . kleisli(f) = kleisli(kleisli(g) . f)",
                  witness is None, cases, witness)
    return report
