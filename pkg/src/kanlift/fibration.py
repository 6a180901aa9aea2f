"""Posetal fibrations over finite sets.

A :class:`FibreObject` is an object of the total category sitting above a
carrier.  Six fibrations are supported:

========  =====================================  ===========================
tag       data                                   fibre order ``a ≤ b``
========  =====================================  ===========================
PRED      frozenset of members                   inclusion
PRE       reflexive-transitive relation          inclusion
TOP       specialisation preorder (see below)    ``a`` finer than ``b``
EREL      relation on the carrier                inclusion
BREL      relation between two carriers          inclusion
MET       pseudometric matrix                    ``d_a ≥ d_b`` pointwise
========  =====================================  ===========================

Topologies on a finite set are in bijection with preorders: the open sets
are exactly the up-sets of the specialisation preorder, where ``(x, y)``
belongs to the preorder iff every open set containing ``x`` contains
``y``.  We store that preorder as the canonical form and materialise the
open-set family on demand (:attr:`FibreObject.opens`).  Under this
encoding "finer" is inclusion of preorders, the topology generated by a
union of open families is the intersection of preorders, and a map is
continuous iff it is monotone.  Those facts are cross-checked against the
open-set definitions in the test-suite.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (CarrierMismatch, EmptyList, InvalidStructure, TagMismatch,
                     UnsupportedTag)
from .finset import (FinFun, FinSet, Subset, enumerate_functions,
                     power_set_of_tuples, preimage)

INF = math.inf


class Tag(str, Enum):
    PRED = "PRED"
    PRE = "PRE"
    TOP = "TOP"
    EREL = "EREL"
    BREL = "BREL"
    MET = "MET"


RELATIONAL = (Tag.PRE, Tag.TOP, Tag.EREL)


@dataclass(frozen=True)
class FibreObject:
    tag: Tag
    carrier: object  # FinSet, or (FinSet, FinSet) for BREL
    data: object

    def __repr__(self):
        return f"FibreObject({self.tag.value}, {self.carrier!r}, {self.data!r})"

    # --- topology views -------------------------------------------------
    @cached_property
    def neighbourhoods(self) -> dict:
        """Minimal open neighbourhood of each point (TOP and PRE)."""
        nb = {x: set() for x in self.carrier}
        for x, y in self.data:
            nb[x].add(y)
        return {x: frozenset(v) for x, v in nb.items()}

    @cached_property
    def opens(self) -> tuple:
        if self.tag is not Tag.TOP:
            raise UnsupportedTag("opens are only defined for TOP objects")
        return _upsets(self.carrier, self.neighbourhoods)

    # --- metric views ---------------------------------------------------
    def dist(self, x, y):
        c = self.carrier
        return self.data[c.index(x)][c.index(y)]


def _sorted_family(carrier: FinSet, family) -> tuple:
    return tuple(sorted(family, key=lambda u: (len(u), carrier.sort_key(u))))


def _upsets(carrier: FinSet, nb: dict) -> tuple:
    found = {frozenset()}
    for x in carrier:
        n = nb[x]
        found |= {u | n for u in found}
    return _sorted_family(carrier, found)


def _closure(carrier: FinSet, pairs) -> frozenset:
    """Reflexive-transitive closure (Warshall)."""
    idx = {x: k for k, x in enumerate(carrier)}
    n = len(carrier)
    reach = [1 << k for k in range(n)]
    for x, y in pairs:
        reach[idx[x]] |= 1 << idx[y]
    for k in range(n):
        bit = 1 << k
        rk = reach[k]
        for i in range(n):
            if reach[i] & bit:
                reach[i] |= rk
    el = carrier.elements
    return frozenset((el[i], el[j]) for i in range(n) for j in range(n) if reach[i] >> j & 1)


def _check_pairs(c1: FinSet, c2: FinSet, pairs) -> frozenset:
    pairs = frozenset((a, b) for a, b in pairs)
    bad = [(a, b) for a, b in pairs if a not in c1 or b not in c2]
    if bad:
        raise InvalidStructure(f"pairs {bad!r} outside the carrier")
    return pairs


# --- constructors ----------------------------------------------------------

def predicate(carrier: FinSet, members: Iterable) -> FibreObject:
    return FibreObject(Tag.PRED, carrier, Subset(carrier, frozenset(members)).members)


def preorder(carrier: FinSet, pairs: Iterable = ()) -> FibreObject:
    """Preorder generated by ``pairs`` (reflexive-transitive closure)."""
    return FibreObject(Tag.PRE, carrier, _closure(carrier, _check_pairs(carrier, carrier, pairs)))


def endorel(carrier: FinSet, pairs: Iterable) -> FibreObject:
    return FibreObject(Tag.EREL, carrier, _check_pairs(carrier, carrier, pairs))


def binrel(carrier1: FinSet, carrier2: FinSet, pairs: Iterable) -> FibreObject:
    return FibreObject(Tag.BREL, (carrier1, carrier2), _check_pairs(carrier1, carrier2, pairs))


def topology_from_specialisation(carrier: FinSet, pairs: Iterable) -> FibreObject:
    return FibreObject(Tag.TOP, carrier, _closure(carrier, _check_pairs(carrier, carrier, pairs)))


def generate_topology(carrier: FinSet, subbasis: Iterable) -> FibreObject:
    """Coarsest topology in which every set of ``subbasis`` is open."""
    full = frozenset(carrier.elements)
    nb = {x: full for x in carrier}
    for u in subbasis:
        u = frozenset(u)
        if not u <= full:
            raise InvalidStructure(f"subbasis set {set(u)!r} not within the carrier")
        for x in u:
            nb[x] = nb[x] & u
    pairs = frozenset((x, y) for x in carrier for y in nb[x])
    return FibreObject(Tag.TOP, carrier, pairs)


def topology(carrier: FinSet, opens: Iterable) -> FibreObject:
    """Topology given by its full open-set family (validated)."""
    family = {frozenset(u) for u in opens}
    full = frozenset(carrier.elements)
    if frozenset() not in family or full not in family:
        raise InvalidStructure("a topology must contain the empty and the full set")
    for u, v in itertools.combinations(family, 2):
        if u | v not in family or u & v not in family:
            raise InvalidStructure("open-set family not closed under union/intersection")
    return generate_topology(carrier, family)


def _as_extended(v):
    if v == INF or v == "inf":
        return INF
    return Fraction(v)


def pseudometric(carrier: FinSet, dist) -> FibreObject:
    """Extended pseudometric from a matrix (carrier order) or a dict on pairs.

    Dict input may list each unordered pair once; missing diagonal entries
    default to 0.
    """
    n = len(carrier)
    el = carrier.elements
    if isinstance(dist, dict):
        m = [[None] * n for _ in range(n)]
        for (x, y), v in dist.items():
            i, j = carrier.index(x), carrier.index(y)
            v = _as_extended(v)
            for a, b in ((i, j), (j, i)):
                if m[a][b] is not None and m[a][b] != v:
                    raise InvalidStructure(f"asymmetric distance between {x!r} and {y!r}")
                m[a][b] = v
        for i in range(n):
            if m[i][i] is None:
                m[i][i] = Fraction(0)
        missing = [(el[i], el[j]) for i in range(n) for j in range(n) if m[i][j] is None]
        if missing:
            raise InvalidStructure(f"distances missing for {missing[:3]!r}")
    else:
        m = [[_as_extended(v) for v in row] for row in dist]
    data = tuple(tuple(row) for row in m)
    _validate_metric(carrier, data)
    return FibreObject(Tag.MET, carrier, data)


def _validate_metric(carrier: FinSet, d) -> None:
    n = len(carrier)
    if len(d) != n or any(len(row) != n for row in d):
        raise InvalidStructure("distance matrix shape does not match the carrier")
    for i in range(n):
        if d[i][i] != 0:
            raise InvalidStructure("nonzero self-distance")
        for j in range(n):
            if d[i][j] < 0:
                raise InvalidStructure("negative distance")
            if d[i][j] != d[j][i]:
                raise InvalidStructure("asymmetric distance")
    for i, j, k in itertools.product(range(n), repeat=3):
        if d[i][j] + d[j][k] < d[i][k]:
            raise InvalidStructure("triangle inequality violated")


def top(tag: Tag, carrier) -> FibreObject:
    """Greatest object of the fibre above ``carrier``."""
    tag = Tag(tag)
    if tag is Tag.PRED:
        return FibreObject(tag, carrier, frozenset(carrier.elements))
    if tag in RELATIONAL:
        return FibreObject(tag, carrier, frozenset(itertools.product(carrier.elements, repeat=2)))
    if tag is Tag.BREL:
        c1, c2 = carrier
        return FibreObject(tag, carrier, frozenset(itertools.product(c1.elements, c2.elements)))
    n = len(carrier)
    return FibreObject(tag, carrier, tuple((Fraction(0),) * n for _ in range(n)))


# --- fibre operations ------------------------------------------------------

def _same_carrier(a, b) -> bool:
    return a == b


def reindex(f, s: FibreObject) -> FibreObject:
    """Inverse image ``f*(s)``; for BREL, ``f`` is a pair of functions."""
    if s.tag is Tag.BREL:
        f1, f2 = f
        if (f1.cod, f2.cod) != s.carrier:
            raise CarrierMismatch("reindexing pair does not land in the BREL carrier")
        data = s.data
        pairs = frozenset((a, b) for a, fa in f1.items() for b, fb in f2.items()
                          if (fa, fb) in data)
        return FibreObject(Tag.BREL, (f1.dom, f2.dom), pairs)
    if not isinstance(f, FinFun):
        raise TagMismatch("a pair of functions reindexes only BREL objects")
    if f.cod != s.carrier:
        raise CarrierMismatch("function codomain differs from the fibre carrier")
    if s.tag is Tag.PRED:
        return FibreObject(Tag.PRED, f.dom, preimage(f, Subset(s.carrier, s.data)).members)
    if s.tag in RELATIONAL:
        data = s.data
        items = list(f.items())
        pairs = frozenset((a, b) for a, fa in items for b, fb in items if (fa, fb) in data)
        return FibreObject(s.tag, f.dom, pairs)
    c = s.carrier
    idx = [c.index(y) for y in f.images]
    d = s.data
    return FibreObject(Tag.MET, f.dom, tuple(tuple(d[i][j] for j in idx) for i in idx))


def fibred_meet(items: Sequence[FibreObject]) -> FibreObject:
    items = list(items)
    if not items:
        raise EmptyList("meet of an empty list needs an explicit carrier; use top()")
    first = items[0]
    for it in items[1:]:
        if it.tag is not first.tag:
            raise TagMismatch(f"cannot meet {first.tag.value} with {it.tag.value}")
        if not _same_carrier(it.carrier, first.carrier):
            raise CarrierMismatch("meet of objects above different carriers")
    if first.tag is Tag.MET:
        n = len(first.carrier)
        data = tuple(tuple(max(it.data[i][j] for it in items) for j in range(n))
                     for i in range(n))
        return FibreObject(Tag.MET, first.carrier, data)
    data = first.data
    for it in items[1:]:
        data = data & it.data
    return FibreObject(first.tag, first.carrier, data)


def leq(a: FibreObject, b: FibreObject) -> bool:
    """Fibre order ``a ≤ b``."""
    if a.tag is not b.tag:
        raise TagMismatch("comparing objects of different fibrations")
    if not _same_carrier(a.carrier, b.carrier):
        raise CarrierMismatch("comparing objects above different carriers")
    if a.tag is Tag.MET:
        n = len(a.carrier)
        return all(a.data[i][j] >= b.data[i][j] for i in range(n) for j in range(n))
    return a.data <= b.data


def is_morphism(f, x: FibreObject, y: FibreObject) -> bool:
    if x.tag is not y.tag:
        raise TagMismatch("morphisms connect objects of one fibration")
    if x.tag is Tag.BREL:
        f1, f2 = f
        if (f1.dom, f2.dom) != x.carrier or (f1.cod, f2.cod) != y.carrier:
            raise CarrierMismatch("function pair does not match BREL carriers")
        yd = y.data
        return all((f1(a), f2(b)) in yd for a, b in x.data)
    if f.dom != x.carrier or f.cod != y.carrier:
        raise CarrierMismatch("function does not match the object carriers")
    if x.tag is Tag.PRED:
        return all(f(a) in y.data for a in x.data)
    if x.tag in RELATIONAL:
        yd = y.data
        return all((f(a), f(b)) in yd for a, b in x.data)
    xc, yc = x.carrier, y.carrier
    idx = [yc.index(v) for v in f.images]
    n = len(xc)
    return all(y.data[idx[i]][idx[j]] <= x.data[i][j] for i in range(n) for j in range(n))


def is_continuous(f: FinFun, x: FibreObject, y: FibreObject) -> bool:
    """Continuity via preimages of open sets (reference definition)."""
    xo = set(x.opens)
    return all(preimage(f, Subset(y.carrier, u)).members in xo for u in y.opens)


def hom_enumerate(x: FibreObject, y: FibreObject):
    """All morphisms ``x → y`` by filtering the full function space."""
    if x.tag is Tag.BREL:
        (a1, a2), (b1, b2) = x.carrier, y.carrier
        seconds = list(enumerate_functions(a2, b2))
        for f1 in enumerate_functions(a1, b1):
            for f2 in seconds:
                if is_morphism((f1, f2), x, y):
                    yield (f1, f2)
        return
    for f in enumerate_functions(x.carrier, y.carrier):
        if is_morphism(f, x, y):
            yield f


def power_object(a: FinSet, s: FibreObject) -> FibreObject:
    """``A ⋔ S``: tuples indexed by ``a`` with the componentwise structure."""
    carrier = power_set_of_tuples(a, s.carrier)
    if s.tag is Tag.PRED:
        return FibreObject(Tag.PRED, carrier,
                           frozenset(t for t in carrier if all(v in s.data for v in t)))
    if s.tag in (Tag.PRE, Tag.TOP):
        # Componentwise order; for TOP this is the specialisation preorder of
        # the product topology generated by the projections' preimages.
        d = s.data
        pairs = frozenset((t, u) for t in carrier for u in carrier
                          if all((p, q) in d for p, q in zip(t, u)))
        return FibreObject(s.tag, carrier, pairs)
    raise UnsupportedTag(f"powers of {s.tag.value} objects are not supported")


def power_is_morphism(a: FinSet, s: FibreObject, f: FinFun, y: FibreObject) -> bool:
    """``is_morphism(f, power_object(a, s), y)`` without materialising the power.

    For PRE/TOP the componentwise order is generated by steps that change a
    single coordinate, so checking those steps suffices.
    """
    if s.tag is not y.tag:
        raise TagMismatch("power and target live in different fibrations")
    if s.tag is Tag.PRED:
        members = [v for v in s.carrier if v in s.data]
        return all(f(t) in y.data for t in itertools.product(members, repeat=len(a)))
    if s.tag not in (Tag.PRE, Tag.TOP):
        raise UnsupportedTag(f"powers of {s.tag.value} objects are not supported")
    up = s.neighbourhoods
    yd = y.data
    for t in f.dom:
        ft = f(t)
        for k, v in enumerate(t):
            for w in up[v]:
                if w != v and (ft, f(t[:k] + (w,) + t[k + 1:])) not in yd:
                    return False
    return True


@dataclass(frozen=True)
class LiftingParam:
    """A finite family of lifting parameters ``(R_k, S_k)``.

    Each ``S_k`` lies above ``T R_k`` for the monad in use (for BREL the
    base ``R_k`` is a pair of sets).  Several entries act as the cotupling
    of single parameters, i.e. the lifting is the meet of the single ones.
    """

    entries: tuple

    def __post_init__(self):
        entries = tuple((r, s) for r, s in self.entries)
        if not entries:
            raise EmptyList("a lifting parameter needs at least one entry")
        tags = {s.tag for _, s in entries}
        if len(tags) != 1:
            raise TagMismatch("all parameter entries must share one fibration")
        object.__setattr__(self, "entries", entries)

    @property
    def tag(self) -> Tag:
        return self.entries[0][1].tag

    @classmethod
    def single(cls, r, s: FibreObject) -> "LiftingParam":
        return cls(((r, s),))


def all_preorders(carrier: FinSet, tag: Tag = Tag.PRE) -> list:
    """Every preorder on ``carrier`` (as PRE, or as TOP specialisations)."""
    off = [(x, y) for x in carrier for y in carrier if x != y]
    diag = frozenset((x, x) for x in carrier)
    out = []
    for bits in itertools.product((False, True), repeat=len(off)):
        rel = diag | frozenset(p for p, b in zip(off, bits) if b)
        if _closure(carrier, rel) == rel:
            out.append(FibreObject(Tag(tag), carrier, rel))
    return out


def all_topologies(carrier: FinSet) -> list:
    return all_preorders(carrier, Tag.TOP)
