"""Density lifting of comonads along the subobject fibration ``Pred → Set``.

Two comonads are covered: the product comonad ``D_A I = I × A`` (fully
finite), and the stream comonad ``D I = ℕ ⇒ I`` restricted to
eventually-periodic streams (lassos).  Stream membership is decided via
the existential characterisation of the lifted predicate, which only
inspects finitely many tails of a lasso.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AmbientMismatch, InvalidStructure
from .finset import FinSet, Subset, enumerate_functions, product_set
from .report import Report


@dataclass(frozen=True)
class PredObj:
    ambient: FinSet
    member_set: frozenset

    def __post_init__(self):
        object.__setattr__(self, "member_set", Subset(self.ambient, self.member_set).members)

    def contains(self, x) -> bool:
        return x in self.member_set

    def members(self) -> list:
        return [x for x in self.ambient if x in self.member_set]


# --- product comonad ---------------------------------------------------------

def _check_param(a: FinSet, r: FinSet, s: PredObj) -> None:
    if s.ambient != product_set(r, a):
        raise AmbientMismatch("parameter predicate must live over R × A")


def product_density_lift(a: FinSet, r: FinSet, s: PredObj, x: PredObj) -> PredObj:
    """Closed form: ``X₀ × S₀[R]`` inside ``X₁ × A``."""
    _check_param(a, r, s)
    support = {ak for _, ak in s.member_set}
    ambient = product_set(x.ambient, a)
    return PredObj(ambient, frozenset((i, ak) for i, ak in ambient
                                      if i in x.member_set and ak in support))


def product_density_lift_direct(a: FinSet, r: FinSet, s: PredObj, x: PredObj) -> PredObj:
    """``{(f(i, a), a) | f ∈ Pred(S, X), (i, a) ∈ S₀}`` by enumerating all ``f``."""
    _check_param(a, r, s)
    ambient = product_set(x.ambient, a)
    out = set()
    for f in enumerate_functions(s.ambient, x.ambient):
        if all(f(p) in x.member_set for p in s.member_set):
            out |= {(f(p), p[1]) for p in s.member_set}
    return PredObj(ambient, frozenset(out))


# --- lassos --------------------------------------------------------------------

def _primitive_root(word: tuple) -> tuple:
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word[:p] * (n // p) == word:
            return word[:p]
    return word


@dataclass(frozen=True)
class Lasso:
    """The stream ``prefix · cycle · cycle · …`` in canonical form.

    Canonical form: the cycle is primitive and the prefix is as short as
    possible.  Two lassos denote the same stream iff they are equal.
    """

    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        prefix, cycle = tuple(self.prefix), tuple(self.cycle)
        if not cycle:
            raise InvalidStructure("a lasso needs a nonempty cycle")
        cycle = _primitive_root(cycle)
        while prefix and prefix[-1] == cycle[-1]:
            prefix = prefix[:-1]
            cycle = cycle[-1:] + cycle[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "cycle", cycle)

    def __getitem__(self, i: int):
        p = len(self.prefix)
        if i < p:
            return self.prefix[i]
        return self.cycle[(i - p) % len(self.cycle)]

    def take(self, n: int) -> tuple:
        return tuple(self[i] for i in range(n))

    def __repr__(self):
        pre = "".join(map(str, self.prefix))
        cyc = "".join(map(str, self.cycle))
        return f"Lasso({pre}({cyc})^ω)"


def lasso_tail(v: Lasso, i: int) -> Lasso:
    p = len(v.prefix)
    if i < p:
        return Lasso(v.prefix[i:], v.cycle)
    k = (i - p) % len(v.cycle)
    return Lasso((), v.cycle[k:] + v.cycle[:k])


def decision_bound(*lassos: Lasso) -> int:
    """Index bound beyond which all tails of ``lassos`` repeat jointly."""
    return (max(len(v.prefix) for v in lassos)
            + math.lcm(*(len(v.cycle) for v in lassos)))


@dataclass(frozen=True)
class StreamParam:
    r: FinSet
    s0: frozenset

    def __post_init__(self):
        s0 = frozenset(self.s0)
        for v in s0:
            if not isinstance(v, Lasso):
                raise InvalidStructure("stream parameter entries must be lassos")
            if any(c not in self.r for c in v.prefix + v.cycle):
                raise InvalidStructure(f"{v!r} is not a stream over R")
        object.__setattr__(self, "s0", s0)


def _sorted_lassos(vs) -> list:
    return sorted(vs, key=lambda v: (len(v.prefix), len(v.cycle), repr(v)))


def stream_density_witness(param: StreamParam, x_pred, x_stream: Lasso):
    """The ``v ∈ S₀`` certifying membership of ``x_stream``, or ``None``.

    ``x_pred`` is anything with a ``contains`` method (a :class:`PredObj`
    or a lifted predicate).  Indices ``i ≥ B`` repeat those below ``B``
    (see :func:`decision_bound`), so checking ``i < B`` is exact.
    """
    for v in _sorted_lassos(param.s0):
        bound = decision_bound(v, x_stream)
        values = {}
        ok = True
        for i in range(bound):
            tail = lasso_tail(v, i)
            xi = x_stream[i]
            if tail in param.s0 and not x_pred.contains(xi):
                ok = False
                break
            if values.setdefault(tail, xi) != xi:
                ok = False
                break
        if ok:
            return v
    return None


def stream_density_member(param: StreamParam, x_pred, x_stream: Lasso) -> bool:
    return stream_density_witness(param, x_pred, x_stream) is not None


@dataclass(frozen=True)
class LiftedStreamPred:
    """The lifted predicate over lassos, usable as ``x_pred`` for a second lift."""

    param: StreamParam
    base: object

    def contains(self, x) -> bool:
        return isinstance(x, Lasso) and stream_density_member(self.param, self.base, x)


def comultiply(v: Lasso) -> Lasso:
    """``δ(v)(m) = v/m`` as a lasso of lassos."""
    p, c = len(v.prefix), len(v.cycle)
    return Lasso(tuple(lasso_tail(v, i) for i in range(p)),
                 tuple(lasso_tail(v, p + k) for k in range(c)))


def all_lassos(alphabet: Sequence, max_prefix: int, max_cycle: int) -> list:
    """Distinct canonical lassos with bounded prefix and cycle lengths."""
    out = set()
    for p in range(max_prefix + 1):
        for c in range(1, max_cycle + 1):
            for pre in itertools.product(alphabet, repeat=p):
                for cyc in itertools.product(alphabet, repeat=c):
                    out.add(Lasso(pre, cyc))
    return _sorted_lassos(out)


# --- comonad law checks --------------------------------------------------------

def _all_preds(ambient: FinSet) -> list:
    elems = ambient.elements
    return [PredObj(ambient, frozenset(e for k, e in enumerate(elems) if m >> k & 1))
            for m in range(1 << len(elems))]


def product_comonad_laws(max_size: int = 2) -> Report:
    """Counit and comultiplication membership for the product comonad,
    exhaustively over all predicates and parameters up to ``max_size``."""
    report = Report("product comonad laws")
    sets = [FinSet([f"e{k}" for k in range(n)]) for n in range(max_size + 1)]
    counit_bad = comult_bad = None
    cases = 0
    for amb, a, r in itertools.product(sets, repeat=3):
        ra = product_set(r, a)
        for s in _all_preds(ra):
            for x in _all_preds(amb):
                cases += 1
                lx = product_density_lift(a, r, s, x)
                llx = product_density_lift(a, r, s, lx)
                for (i, ak) in lx.member_set:
                    if i not in x.member_set and counit_bad is None:
                        counit_bad = {"X": x, "S": s, "element": (i, ak)}
                    if ((i, ak), ak) not in llx.member_set and comult_bad is None:
                        comult_bad = {"X": x, "S": s, "element": (i, ak)}
    report.record("counit maps lifted members into X", counit_bad is None, cases, counit_bad)
    report.record("comultiplication maps into the doubly lifted predicate",
                  comult_bad is None, cases, comult_bad)
    return report


def stream_comonad_laws(samples: Iterable) -> Report:
    """``samples`` are ``(param, x_pred, candidates)`` triples."""
    report = Report("stream comonad laws")
    counit_bad = comult_bad = None
    cases = 0
    for param, x_pred, candidates in samples:
        lifted = LiftedStreamPred(param, x_pred)
        for l in candidates:
            if not lifted.contains(l):
                continue
            cases += 1
            if not x_pred.contains(l[0]) and counit_bad is None:
                counit_bad = {"stream": l}
            if not stream_density_member(param, lifted, comultiply(l)) and comult_bad is None:
                comult_bad = {"stream": l}
    report.record("counit l(0) lies in X", counit_bad is None, cases, counit_bad)
    report.record("comultiplication l/- lies in the doubly lifted predicate",
                  comult_bad is None, cases, comult_bad)
    return report


def comonad_laws_check(samples=None, max_size: int = 2) -> Report:
    report = Report("comonad laws")
    report.extend(product_comonad_laws(max_size), "product: ")
    if samples is not None:
        report.extend(stream_comonad_laws(samples), "stream: ")
    return report


def product_formula_vs_direct(max_size: int = 2) -> Report:
    """Closed form against direct enumeration over every ``f ∈ Pred(S, X)``."""
    report = Report("product density lift: formula vs direct")
    sets = [FinSet([f"e{k}" for k in range(n)]) for n in range(max_size + 1)]
    bad, cases = None, 0
    for amb, a, r in itertools.product(sets, repeat=3):
        for s in _all_preds(product_set(r, a)):
            for x in _all_preds(amb):
                cases += 1
                if bad is None and (product_density_lift(a, r, s, x)
                                    != product_density_lift_direct(a, r, s, x)):
                    bad = {"A": a.elements, "R": r.elements, "S": sorted(s.member_set),
                           "X": sorted(x.member_set)}
    report.record("formula equals direct enumeration", bad is None, cases, bad)
    return report
