"""Finite sets, total functions between them, and subsets.

Every collection here keeps a deterministic (insertion) order so that
enumerations and rendered output are reproducible.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator

from .errors import AmbientMismatch, InvalidStructure


class FinSet:
    """An ordered finite set of hashable atoms."""

    __slots__ = ("elements", "_index", "_hash")

    def __init__(self, elements: Iterable[Hashable] = ()):
        elements = tuple(elements)
        index = {}
        for k, e in enumerate(elements):
            if e in index:
                raise InvalidStructure(f"duplicate atom {e!r}")
            index[e] = k
        self.elements = elements
        self._index = index
        self._hash = hash(elements)

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, FinSet) and self.elements == other.elements

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FinSet({list(self.elements)!r})"

    def index(self, x) -> int:
        return self._index[x]

    def full(self) -> "Subset":
        return Subset(self, frozenset(self.elements))

    def empty(self) -> "Subset":
        return Subset(self, frozenset())

    def sort_key(self, xs) -> tuple:
        """Canonical sort key for a collection of atoms of this set."""
        return tuple(sorted(self._index[x] for x in xs))


def powerset_elements(x: FinSet) -> list:
    """All subsets of ``x`` as frozensets, in binary-counting order."""
    elems = x.elements
    return [frozenset(e for k, e in enumerate(elems) if m >> k & 1)
            for m in range(1 << len(elems))]


@dataclass(frozen=True)
class Subset:
    ambient: FinSet
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        stray = [m for m in self.members if m not in self.ambient]
        if stray:
            raise InvalidStructure(f"members {stray!r} not in ambient set")

    def __iter__(self):
        return (x for x in self.ambient if x in self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members

    def _check(self, other: "Subset"):
        if self.ambient != other.ambient:
            raise AmbientMismatch("subsets live in different ambient sets")

    def __and__(self, other: "Subset") -> "Subset":
        self._check(other)
        return Subset(self.ambient, self.members & other.members)

    def __or__(self, other: "Subset") -> "Subset":
        self._check(other)
        return Subset(self.ambient, self.members | other.members)

    def complement(self) -> "Subset":
        return Subset(self.ambient, frozenset(self.ambient.elements) - self.members)

    def __repr__(self):
        return "{" + ",".join(map(str, self)) + "}"


class FinFun:
    """A total function between finite sets, stored as an image tuple."""

    __slots__ = ("dom", "cod", "images", "_table")

    def __init__(self, dom: FinSet, cod: FinSet, mapping, *, check: bool = True):
        if isinstance(mapping, dict):
            if check and set(mapping) != set(dom.elements):
                raise InvalidStructure("mapping keys differ from the domain")
            images = tuple(mapping[x] for x in dom)
        elif callable(mapping):
            images = tuple(mapping(x) for x in dom)
        else:
            images = tuple(mapping)
            if len(images) != len(dom):
                raise InvalidStructure("image tuple length differs from domain size")
        if check:
            bad = [y for y in images if y not in cod]
            if bad:
                raise InvalidStructure(f"images {bad!r} outside codomain")
        self.dom = dom
        self.cod = cod
        self.images = images
        self._table = dict(zip(dom.elements, images))

    def __call__(self, x):
        return self._table[x]

    def items(self):
        return zip(self.dom.elements, self.images)

    def __eq__(self, other):
        return (isinstance(other, FinFun) and self.dom == other.dom
                and self.cod == other.cod and self.images == other.images)

    def __hash__(self):
        return hash((self.dom, self.cod, self.images))

    def __repr__(self):
        body = ", ".join(f"{x!r}->{y!r}" for x, y in self.items())
        return f"FinFun({body})"

    def after(self, f: "FinFun") -> "FinFun":
        """Composite ``self ∘ f``."""
        if f.cod != self.dom:
            raise AmbientMismatch("composite of non-composable functions")
        t = self._table
        return FinFun(f.dom, self.cod, tuple(t[y] for y in f.images), check=False)

    def image(self, xs) -> frozenset:
        t = self._table
        return frozenset(t[x] for x in xs)


def identity(x: FinSet) -> FinFun:
    return FinFun(x, x, x.elements, check=False)


def constant(dom: FinSet, cod: FinSet, value) -> FinFun:
    return FinFun(dom, cod, (value,) * len(dom))


def enumerate_functions(dom: FinSet, cod: FinSet) -> Iterator[FinFun]:
    """Lazily yield all ``|cod| ** |dom|`` functions, in lexicographic order.

    An empty codomain with a nonempty domain yields nothing.
    """
    for images in itertools.product(cod.elements, repeat=len(dom)):
        yield FinFun(dom, cod, images, check=False)


def preimage(f: FinFun, s: Subset) -> Subset:
    if s.ambient != f.cod:
        raise AmbientMismatch("subset is not over the codomain of f")
    members = s.members
    return Subset(f.dom, frozenset(x for x, y in f.items() if y in members))


def product_set(*sets: FinSet) -> FinSet:
    return FinSet(itertools.product(*(s.elements for s in sets)))


def power_set_of_tuples(a: FinSet, x: FinSet) -> FinSet:
    """The function space ``A ⋔ X`` as tuples indexed by the order of ``a``."""
    return FinSet(itertools.product(x.elements, repeat=len(a)))
