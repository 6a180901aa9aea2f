"""Named verification batteries and seeded-mutant detection.

Each suite returns a :class:`Report`.  Suites take the monad as an
argument and reach the fibre operations through the ``fibration`` module,
so a mutant can be substituted either as a broken monad or by patching
``fibration.reindex`` / ``fibration.fibred_meet``.
"""
from __future__ import annotations

import contextlib
import itertools
from dataclasses import dataclass
from typing import Callable
from unittest import mock

from . import engine as E
from . import fibration as fib
from .density import (PredObj, StreamParam, all_lassos, comonad_laws_check,
                      product_formula_vs_direct)
from .fibration import FibreObject, Tag
from .finset import FinSet
from .monad import FiniteMonad, check_naturality, powerset_monad, union_op, verify_monad_laws
from .report import Report

SUITES = ("monad-laws", "lifting-laws", "closed-objects", "comonad-laws",
          "engine-vs-closed-form")

PREORDER_KINDS = (E.Kind.LOWER_PRE, E.Kind.UPPER_PRE, E.Kind.CONVEX_PRE)
VIETORIS_KINDS = (E.Kind.LOWER_VIETORIS, E.Kind.UPPER_VIETORIS)


def carriers(max_points: int) -> list:
    return [FinSet(["a", "b", "c", "d"][:n]) for n in range(max_points + 1)]


def kind_tag(kind) -> Tag:
    return Tag.PRE if E.Kind(kind) in PREORDER_KINDS else Tag.TOP


def samples_for(kind, max_points: int) -> list:
    """All preorders (or topologies) on carriers with at most ``max_points`` points."""
    tag = kind_tag(kind)
    return [x for c in carriers(max_points) for x in fib.all_preorders(c, tag)]


def engine_lift(m: FiniteMonad, kind) -> Callable:
    param = E.BUILTIN_PARAMS[E.Kind(kind)]()
    return lambda x: E.codensity_lift(m, param, x).result


# --- suites ----------------------------------------------------------------------

def monad_laws_suite(m: FiniteMonad | None = None, max_points: int = 2) -> Report:
    m = m or powerset_monad()
    report = Report("monad-laws")
    cs = carriers(max_points)
    report.extend(verify_monad_laws(m, cs))
    for arity in carriers(2)[1:]:
        op = union_op(arity)
        op = type(op)(op.name, m, op.arity, op.combine)
        report.extend(check_naturality(op, cs[:2]), f"{op.name}: ")
    return report


def engine_vs_closed_form_suite(m: FiniteMonad | None = None, max_points: int = 3) -> Report:
    m = m or powerset_monad()
    report = Report("engine-vs-closed-form")
    for kind in E.Kind:
        lift = engine_lift(m, kind)
        samples = samples_for(kind, max_points)
        witness = None
        for x in samples:
            got, want = lift(x), E.closed_form_lift(kind, x)
            if got != want:
                witness = {"X": x, "engine": got, "closed_form": want}
                break
        report.record(f"{kind.value}: engine equals closed form", witness is None,
                      len(samples), witness)
    return report


def lifting_laws_suite(m: FiniteMonad | None = None, max_points: int = 3) -> Report:
    m = m or powerset_monad()
    report = Report("lifting-laws")
    for kind in E.Kind:
        sub = E.verify_lifting_laws(m, engine_lift(m, kind), samples_for(kind, max_points))
        report.extend(sub, f"{kind.value}: ")
    return report


def _all_fibre_objects(tag: Tag, carrier: FinSet) -> list:
    if tag is Tag.PRED:
        el = carrier.elements
        return [fib.predicate(carrier, [e for k, e in enumerate(el) if mask >> k & 1])
                for mask in range(1 << len(el))]
    return fib.all_preorders(carrier, tag)


def closed_objects_suite(m: FiniteMonad | None = None, max_points: int = 3,
                         exhaustive_points: int = 2) -> Report:
    """Closedness of engine outputs, ``phi(S, X, X) = S`` for every closed
    ``S``, ``phi(L(X), X, Y) ≥ L(Y)`` and the meet of those bounds."""
    m = m or powerset_monad()
    report = Report("closed-objects")

    for kind in E.Kind:
        lift = engine_lift(m, kind)
        samples = samples_for(kind, max_points)
        bad = next(({"X": x} for x in samples if not E.is_closed(m, x, lift(x))), None)
        report.record(f"{kind.value}: lifted objects are closed", bad is None,
                      len(samples), bad)

    for tag in (Tag.PRED, Tag.PRE, Tag.TOP):
        cases, bad = 0, None
        for c in carriers(exhaustive_points):
            tc = m.T(c)
            xs = _all_fibre_objects(tag, c)
            ss = _all_fibre_objects(tag, tc)
            for x, s in itertools.product(xs, ss):
                if not E.is_closed(m, x, s):
                    continue
                cases += 1
                if E.phi(m, s, x, x) != s and bad is None:
                    bad = {"X": x, "S": s}
        report.record(f"{tag.value}: phi(S, X, X) = S for closed S", bad is None, cases, bad)

    for kind in E.Kind:
        lift = engine_lift(m, kind)
        samples = samples_for(kind, exhaustive_points)
        lifted = {x: lift(x) for x in samples}
        cases, bad_ge, bad_meet = 0, None, None
        for y in samples:
            bounds = []
            for x in samples:
                cases += 1
                val = E.phi(m, lifted[x], x, y)
                bounds.append(val)
                if not fib.leq(lifted[y], val) and bad_ge is None:
                    bad_ge = {"X": x, "Y": y, "phi": val, "L(Y)": lifted[y]}
            if fib.fibred_meet(bounds) != lifted[y] and bad_meet is None:
                bad_meet = {"Y": y}
        report.record(f"{kind.value}: phi(L(X), X, Y) >= L(Y)", bad_ge is None, cases, bad_ge)
        report.record(f"{kind.value}: meet over X of phi(L(X), X, Y) = L(Y)",
                      bad_meet is None, len(samples), bad_meet)
    return report


def stream_samples() -> list:
    """Parameters over {0, 1}, predicates over {x, y} and candidate lassos."""
    vs = all_lassos((0, 1), 1, 2)
    params = [StreamParam(FinSet([0, 1]), frozenset(c))
              for k in range(3) for c in itertools.combinations(vs, k)]
    ambient = FinSet(["x", "y"])
    preds = [PredObj(ambient, frozenset(s)) for s in ([], ["x"], ["y"], ["x", "y"])]
    candidates = all_lassos(("x", "y"), 1, 2)
    return [(p, x, candidates) for p in params for x in preds]


def comonad_laws_suite(max_points: int = 2) -> Report:
    report = Report("comonad-laws")
    report.extend(comonad_laws_check(stream_samples(), max_points))
    report.extend(product_formula_vs_direct(max_points), "product: ")
    return report


def run_suite(name: str, m: FiniteMonad | None = None, **kw) -> Report:
    table = {
        "monad-laws": monad_laws_suite,
        "lifting-laws": lifting_laws_suite,
        "closed-objects": closed_objects_suite,
        "engine-vs-closed-form": engine_vs_closed_form_suite,
    }
    if name == "comonad-laws":
        return comonad_laws_suite(**kw)
    if name not in table:
        raise KeyError(f"unknown suite {name!r}")
    return table[name](m, **kw)


# --- seeded mutants --------------------------------------------------------------

def _broken_powerset(name: str, ext_factory) -> FiniteMonad:
    base = powerset_monad()
    return FiniteMonad(f"powerset[{name}]", base.apply_T, base.unit_at, ext_factory)


def _kleisli_intersection(f):
    def ext(v):
        sets = [f(e) for e in v]
        if not sets:
            return frozenset()
        out = sets[0]
        for s in sets[1:]:
            out &= s
        return out
    return ext


def _kleisli_first_only(f):
    order = list(f.dom)

    def ext(v):
        for e in order:
            if e in v:
                return f(e)
        return frozenset()
    return ext


def _kleisli_empty_to_full(f):
    full = frozenset().union(*f.cod.elements) if len(f.cod) else frozenset()

    def ext(v):
        if not v:
            return full
        out = frozenset()
        for e in v:
            out |= f(e)
        return out
    return ext


def _meet_join(items):
    items = list(items)
    data = items[0].data
    for it in items[1:]:
        data = data | it.data
    return FibreObject(items[0].tag, items[0].carrier, data)


def _meet_first(items):
    return list(items)[0]


def _meet_last(items):
    return list(items)[-1]


_reindex_ok = fib.reindex


def _reindex_top(f, s):
    return fib.top(s.tag, f.dom)


def _reindex_converse(f, s):
    r = _reindex_ok(f, s)
    if r.tag in fib.RELATIONAL:
        return FibreObject(r.tag, r.carrier, frozenset((b, a) for a, b in r.data))
    return r


def _reindex_discrete(f, s):
    r = _reindex_ok(f, s)
    return FibreObject(r.tag, r.carrier, frozenset((x, x) for x in r.carrier))


@dataclass(frozen=True)
class Mutant:
    name: str
    target: str  # "kleisli", "meet" or "reindex"
    impl: object

    def context(self):
        if self.target == "meet":
            return mock.patch.object(fib, "fibred_meet", self.impl)
        if self.target == "reindex":
            return mock.patch.object(fib, "reindex", self.impl)
        return contextlib.nullcontext()

    def monad(self) -> FiniteMonad:
        if self.target == "kleisli":
            return _broken_powerset(self.name, self.impl)
        return powerset_monad()


MUTANTS = (
    Mutant("kleisli-intersection", "kleisli", _kleisli_intersection),
    Mutant("kleisli-first-only", "kleisli", _kleisli_first_only),
    Mutant("kleisli-empty-to-full", "kleisli", _kleisli_empty_to_full),
    Mutant("meet-is-join", "meet", _meet_join),
    Mutant("meet-keeps-first", "meet", _meet_first),
    Mutant("meet-keeps-last", "meet", _meet_last),
    Mutant("reindex-to-top", "reindex", _reindex_top),
    Mutant("reindex-converse", "reindex", _reindex_converse),
    Mutant("reindex-discrete", "reindex", _reindex_discrete),
)

_DETECTION_ORDER = (
    ("monad-laws", lambda m: monad_laws_suite(m, max_points=2)),
    ("engine-vs-closed-form", lambda m: engine_vs_closed_form_suite(m, max_points=2)),
    ("closed-objects", lambda m: closed_objects_suite(m, max_points=2, exhaustive_points=1)),
    ("lifting-laws", lambda m: lifting_laws_suite(m, max_points=2)),
)


def detect_mutant(mutant: Mutant) -> str | None:
    """Name of the first suite that fails under ``mutant``, or ``None``."""
    m = mutant.monad()
    for name, suite in _DETECTION_ORDER:
        with mutant.context():
            try:
                report = suite(m)
            except Exception:  # a crash under a mutant counts as detection
                return name
        if not report.ok:
            return name
    return None


def mutant_report(mutants=MUTANTS) -> Report:
    report = Report("mutant detection")
    for mutant in mutants:
        caught = detect_mutant(mutant)
        report.record(f"{mutant.target} mutant {mutant.name} detected", caught is not None,
                      1, None if caught else {"mutant": mutant.name})
        if caught:
            report.checks[-1].witness = {"suite": caught}
    return report
