import itertools
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from kanlift import fibration as fib
from kanlift.finset import FinSet
from kanlift.measurable import LMP, FinMeasSpace, SubProb
from kanlift.monad import powerset_monad

CHAIN2 = FinSet(["a", "b"])


@pytest.fixture
def m():
    return powerset_monad()


@pytest.fixture
def chain2():
    return fib.preorder(CHAIN2, [("a", "b")])


@pytest.fixture
def sierpinski():
    c = FinSet([0, 1])
    return fib.topology(c, [[], [1], [0, 1]])


def carrier(n):
    return FinSet(["a", "b", "c", "d"][:n])


@st.composite
def preorders(draw, max_points=3, tag=fib.Tag.PRE):
    n = draw(st.integers(0, max_points))
    c = carrier(n)
    pairs = draw(st.sets(st.tuples(st.sampled_from(c.elements), st.sampled_from(c.elements)))
                 if n else st.just(set()))
    if tag is fib.Tag.TOP:
        return fib.topology_from_specialisation(c, pairs)
    return fib.preorder(c, pairs)


def partitions(elements):
    """All set partitions of ``elements`` (as lists of lists)."""
    elements = list(elements)
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for p in partitions(rest):
        yield [[first]] + p
        for k in range(len(p)):
            yield p[:k] + [[first] + p[k]] + p[k + 1:]


@st.composite
def meas_spaces(draw, max_points=3):
    n = draw(st.integers(1, max_points))
    c = FinSet(list(range(n)))
    blocks = draw(st.sampled_from(list(partitions(c.elements))))
    return FinMeasSpace(c, tuple(frozenset(b) for b in blocks))


@st.composite
def subprobs(draw, space, denom=6):
    weights = [draw(st.integers(0, denom)) for _ in range(space.n_blocks + 1)]
    total = sum(weights) or 1
    return SubProb(space, tuple(Fraction(w, total) for w in weights[:-1]))


@st.composite
def lmps(draw, space=None, actions=("*",)):
    space = space or draw(meas_spaces())
    acts = FinSet(list(actions))
    kernel = {}
    for a in acts:
        for b in space.blocks:
            v = draw(subprobs(space))
            for s in b:
                kernel[(a, s)] = v
    return LMP(space, acts, kernel)


def all_relations(c1, c2):
    pairs = list(itertools.product(c1, c2))
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        yield frozenset(p for p, b in zip(pairs, bits) if b)
