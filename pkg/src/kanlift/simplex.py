"""Exact rational simplex for ``max c·x  s.t.  A x ≤ b, x ≥ 0`` with ``b ≥ 0``.

The origin is feasible, so no phase one is needed.  Pivoting follows
Bland's rule, which rules out cycling.  The final tableau yields a dual
solution, so every optimum can be certified independently.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class Unbounded(Exception):
    pass


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    x: tuple
    dual: tuple
    pivots: int


def solve_lp(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    n = len(c)
    m = len(A)
    c = [Fraction(v) for v in c]
    b = [Fraction(v) for v in b]
    if any(v < 0 for v in b):
        raise ValueError("right-hand side must be nonnegative")
    # Rows: [A | I | b]; columns 0..n-1 structural, n..n+m-1 slack.
    rows = [[Fraction(v) for v in A[i]] + [Fraction(int(i == k)) for k in range(m)] + [b[i]]
            for i in range(m)]
    basis = [n + i for i in range(m)]
    # Reduced costs (for maximisation) and current objective value.
    red = c + [Fraction(0)] * m
    value = Fraction(0)
    pivots = 0
    while True:
        entering = next((j for j in range(n + m) if red[j] > 0), None)
        if entering is None:
            break
        leaving, best = None, None
        for i in range(m):
            a = rows[i][entering]
            if a > 0:
                ratio = rows[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    leaving, best = i, ratio
        if leaving is None:
            raise Unbounded("objective is unbounded")
        prow = rows[leaving]
        piv = prow[entering]
        if piv != 1:
            prow = rows[leaving] = [v / piv for v in prow]
        for i in range(m):
            if i != leaving:
                f = rows[i][entering]
                if f:
                    row = rows[i]
                    rows[i] = [v - f * p for v, p in zip(row, prow)]
        f = red[entering]
        red = [v - f * p for v, p in zip(red, prow[:-1])]
        value += f * prow[-1]
        basis[leaving] = entering
        pivots += 1
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rows[i][-1]
    dual = tuple(-red[n + i] for i in range(m))
    return LPResult(value, tuple(x), dual, pivots)


def certify(c, A, b, result: LPResult) -> bool:
    """Primal feasibility, dual feasibility and equal objectives."""
    x, y = result.x, result.dual
    n, m = len(c), len(A)
    if any(v < 0 for v in x) or any(v < 0 for v in y):
        return False
    if any(sum(A[i][j] * x[j] for j in range(n)) > b[i] for i in range(m)):
        return False
    if any(sum(A[i][j] * y[i] for i in range(m)) < c[j] for j in range(n)):
        return False
    primal = sum(c[j] * x[j] for j in range(n))
    dual = sum(b[i] * y[i] for i in range(m))
    return primal == dual == result.value
