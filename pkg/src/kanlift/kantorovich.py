"""Kantorovich distance between sub-probability measures on a finite
pseudometric space.

The distance is the supremum of ``|∫f dv₁ − ∫f dv₂|`` over non-expansive
measurable ``f`` into ``[0, 1]``.  On a finite space the admissible ``f``
form a polytope (``0 ≤ f ≤ 1``, ``f(x) − f(y) ≤ d(x, y)``) and the
objective is linear, so the supremum is attained at a vertex and equals
``max(LP(c), LP(−c))`` with ``c = v₁ − v₂``.  Measurability w.r.t. a
non-discrete partition forces ``f`` to be constant on blocks, which is
handled by one variable per block.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import CarrierMismatch, CarrierTooLarge, SpaceMismatch
from .fibration import INF, FibreObject, Tag
from .measurable import SubProb
from .report import Report
from .simplex import LPResult, certify, solve_lp

ORACLE_MAX_POINTS = 5


@dataclass(frozen=True)
class LPInstance:
    """Block-level LP: maximise ``objective · g`` over the test-function polytope."""

    blocks: tuple
    objective: tuple
    A: tuple
    b: tuple


def build_instance(dspace: FibreObject, v1: SubProb, v2: SubProb) -> LPInstance:
    if dspace.tag is not Tag.MET:
        raise CarrierMismatch("Kantorovich distance needs a MET object")
    if v1.space != v2.space:
        raise SpaceMismatch("measures live on different spaces")
    space = v1.space
    if space.carrier != dspace.carrier:
        raise CarrierMismatch("measures and metric have different carriers")
    blocks = space.blocks
    k = len(blocks)
    c = tuple(p - q for p, q in zip(v1.mass, v2.mass))
    A, b = [], []
    for i in range(k):
        A.append(tuple(Fraction(int(j == i)) for j in range(k)))
        b.append(Fraction(1))
    for i, j in itertools.permutations(range(k), 2):
        gap = min(dspace.dist(x, y) for x in blocks[i] for y in blocks[j])
        if gap == INF:
            continue
        row = [Fraction(0)] * k
        row[i], row[j] = Fraction(1), Fraction(-1)
        A.append(tuple(row))
        b.append(Fraction(gap))
    return LPInstance(blocks, c, tuple(A), tuple(b))


@dataclass(frozen=True)
class KantorovichResult:
    value: Fraction
    f: dict
    lp: LPResult
    certified: bool


def kantorovich_solve(dspace: FibreObject, v1: SubProb, v2: SubProb) -> KantorovichResult:
    inst = build_instance(dspace, v1, v2)
    best = None
    for sign in (1, -1):
        c = tuple(sign * v for v in inst.objective)
        res = solve_lp(c, inst.A, inst.b)
        ok = certify(c, inst.A, inst.b, res)
        if best is None or res.value > best[0].value:
            best = (res, ok)
    res, ok = best
    f = {x: res.x[k] for k, blk in enumerate(inst.blocks) for x in blk}
    f = {x: f[x] for x in dspace.carrier}
    return KantorovichResult(res.value, f, res, ok)


def kantorovich(dspace: FibreObject, v1: SubProb, v2: SubProb) -> Fraction:
    return kantorovich_solve(dspace, v1, v2).value


# --- independent oracle -------------------------------------------------------

def _solve_square(rows, rhs):
    """Gauss-Jordan over Fractions; ``None`` when singular."""
    n = len(rows)
    M = [[Fraction(a) for a in r] + [Fraction(v)] for r, v in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [v / p for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def kantorovich_oracle(dspace: FibreObject, v1: SubProb, v2: SubProb) -> Fraction:
    """Brute-force vertex enumeration over point variables (discrete spaces)."""
    pts = list(dspace.carrier)
    n = len(pts)
    if n > ORACLE_MAX_POINTS:
        raise CarrierTooLarge(f"oracle handles at most {ORACLE_MAX_POINTS} points")
    c = [v1.at_mask(v1.space.hull_mask([x])) - v2.at_mask(v2.space.hull_mask([x]))
         for x in pts]
    if any(len(b) != 1 for b in v1.space.blocks):
        raise ValueError("the oracle only handles discrete measurable spaces")
    if n == 0:
        return Fraction(0)
    cons = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        cons.append((tuple(e), Fraction(1)))
        e = [0] * n
        e[i] = -1
        cons.append((tuple(e), Fraction(0)))
    for i, j in itertools.permutations(range(n), 2):
        d = dspace.data[i][j]
        if d == INF:
            continue
        e = [0] * n
        e[i], e[j] = 1, -1
        cons.append((tuple(e), Fraction(d)))
    best = None
    for subset in itertools.combinations(cons, n):
        sol = _solve_square([r for r, _ in subset], [v for _, v in subset])
        if sol is None:
            continue
        if all(sum(a * x for a, x in zip(r, sol)) <= v for r, v in cons):
            val = abs(sum(a * x for a, x in zip(c, sol)))
            if best is None or val > best:
                best = val
    return best


def verify_pseudometric_laws(dspace: FibreObject, samples) -> Report:
    """Pseudometric axioms of the lifted distance on all sample triples, plus
    the distance between Dirac measures."""
    samples = list(samples)
    report = Report("Kantorovich pseudometric laws")
    dist = {}
    for i, j in itertools.product(range(len(samples)), repeat=2):
        dist[i, j] = kantorovich(dspace, samples[i], samples[j])
    idx = range(len(samples))
    bad = next((i for i in idx if dist[i, i] != 0), None)
    report.record("d(v, v) = 0", bad is None, len(samples), bad)
    bad = next(((i, j) for i in idx for j in idx if dist[i, j] != dist[j, i]), None)
    report.record("symmetry", bad is None, len(samples) ** 2, bad)
    bad = next(((i, j, k) for i in idx for j in idx for k in idx
                if dist[i, j] + dist[j, k] < dist[i, k]), None)
    report.record("triangle inequality", bad is None, len(samples) ** 3, bad)

    if samples:
        space = samples[0].space
        pts = list(dspace.carrier)
        discrete = all(len(b) == 1 for b in space.blocks)
        bad_le, bad_eq = None, None
        for x, y in itertools.product(pts, repeat=2):
            k = kantorovich(dspace, SubProb.dirac(space, x), SubProb.dirac(space, y))
            d = dspace.dist(x, y)
            if k > d and bad_le is None:
                bad_le = (x, y, k)
            if discrete and k != min(d, Fraction(1)) and bad_eq is None:
                bad_eq = (x, y, k)
        report.record("unit is non-expansive", bad_le is None, len(pts) ** 2, bad_le)
        if discrete:
            report.record("Dirac distance = min(d, 1)", bad_eq is None, len(pts) ** 2, bad_eq)
    return report
