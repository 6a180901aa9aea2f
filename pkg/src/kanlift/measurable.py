"""Finite measurable spaces, sub-probability measures and LMPs.

A σ-algebra on a finite set is the set of unions of the blocks of a
partition, so all measurability questions reduce to block arithmetic.
Measurable sets are indexed by bitmasks over the blocks.  Masses are exact
:class:`~fractions.Fraction` values throughout.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (BlockLimitExceeded, CarrierMismatch, InvalidStructure,
                     NotMeasurable, SpaceMismatch)
from .finset import FinFun, FinSet


def max_blocks() -> int:
    return int(os.environ.get("KANLIFT_MAX_BLOCKS", "16"))


@dataclass(frozen=True)
class FinMeasSpace:
    carrier: FinSet
    blocks: tuple

    def __post_init__(self):
        blocks = [frozenset(b) for b in self.blocks]
        seen = set()
        for b in blocks:
            if not b:
                raise InvalidStructure("partition blocks must be nonempty")
            if b & seen:
                raise InvalidStructure("partition blocks overlap")
            if not b <= set(self.carrier.elements):
                raise InvalidStructure("block outside the carrier")
            seen |= b
        if seen != set(self.carrier.elements):
            raise InvalidStructure("blocks do not cover the carrier")
        blocks.sort(key=lambda b: min(self.carrier.index(x) for x in b))
        object.__setattr__(self, "blocks", tuple(blocks))
        object.__setattr__(self, "_block_of", {x: k for k, b in enumerate(blocks) for x in b})

    @classmethod
    def discrete(cls, carrier: FinSet) -> "FinMeasSpace":
        return cls(carrier, tuple(frozenset([x]) for x in carrier))

    @classmethod
    def indiscrete(cls, carrier: FinSet) -> "FinMeasSpace":
        return cls(carrier, (frozenset(carrier.elements),) if len(carrier) else ())

    def block_of(self, x) -> int:
        return self._block_of[x]

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    def check_block_limit(self) -> None:
        if self.n_blocks > max_blocks():
            raise BlockLimitExceeded(
                f"{self.n_blocks} blocks exceed KANLIFT_MAX_BLOCKS={max_blocks()}")

    def union(self, mask: int) -> frozenset:
        return frozenset().union(*(b for k, b in enumerate(self.blocks) if mask >> k & 1))

    def masks(self) -> range:
        """Bitmasks of all measurable sets."""
        self.check_block_limit()
        return range(1 << self.n_blocks)

    def measurable_sets(self) -> list:
        return [self.union(m) for m in self.masks()]

    def hull_mask(self, xs) -> int:
        """Smallest measurable superset of ``xs``, as a block mask."""
        mask = 0
        for x in xs:
            mask |= 1 << self._block_of[x]
        return mask

    def mask_of(self, u) -> int:
        """Block mask of a measurable set; raises :class:`NotMeasurable` otherwise."""
        u = frozenset(u)
        mask = self.hull_mask(u)
        if self.union(mask) != u:
            raise NotMeasurable(f"{sorted(map(str, u))} is not a union of blocks")
        return mask

    def is_measurable(self, u) -> bool:
        u = frozenset(u)
        return self.union(self.hull_mask(u)) == u


def sigma_generate(carrier: FinSet, generators: Iterable) -> FinMeasSpace:
    """σ-algebra generated by ``generators``: points are grouped by the
    generators they belong to."""
    gens = [frozenset(g) for g in generators]
    for g in gens:
        if not g <= set(carrier.elements):
            raise InvalidStructure("generator outside the carrier")
    groups: dict = {}
    for x in carrier:
        groups.setdefault(tuple(x in g for g in gens), []).append(x)
    return FinMeasSpace(carrier, tuple(frozenset(v) for v in groups.values()))


def _rational(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        raise TypeError("masses must be exact rationals, not floats")
    return Fraction(v)


@dataclass(frozen=True)
class SubProb:
    """A sub-probability measure given by its mass on each block."""

    space: FinMeasSpace
    mass: tuple

    def __post_init__(self):
        mass = tuple(_rational(v) for v in self.mass)
        if len(mass) != self.space.n_blocks:
            raise InvalidStructure("one mass per block is required")
        if any(v < 0 for v in mass):
            raise InvalidStructure("negative mass")
        if sum(mass) > 1:
            raise InvalidStructure("total mass exceeds 1")
        object.__setattr__(self, "mass", mass)

    @classmethod
    def from_points(cls, space: FinMeasSpace, masses: Mapping) -> "SubProb":
        """Build from masses on points; each block receives the sum of its points."""
        total = [Fraction(0)] * space.n_blocks
        for x, v in masses.items():
            total[space.block_of(x)] += _rational(v)
        return cls(space, tuple(total))

    @classmethod
    def dirac(cls, space: FinMeasSpace, x) -> "SubProb":
        return cls.from_points(space, {x: 1})

    @classmethod
    def zero(cls, space: FinMeasSpace) -> "SubProb":
        return cls(space, (Fraction(0),) * space.n_blocks)

    def at_mask(self, mask: int) -> Fraction:
        return sum((v for k, v in enumerate(self.mass) if mask >> k & 1), Fraction(0))

    def __call__(self, u) -> Fraction:
        return measure_eval(self, u)

    def total(self) -> Fraction:
        return sum(self.mass, Fraction(0))


def measure_eval(v: SubProb, u) -> Fraction:
    return v.at_mask(v.space.mask_of(u))


def is_measurable_fun(f: FinFun, dom: FinMeasSpace, cod: FinMeasSpace) -> bool:
    """Preimages of blocks of ``cod`` are unions of blocks of ``dom``."""
    if f.dom != dom.carrier or f.cod != cod.carrier:
        raise CarrierMismatch("function does not match the space carriers")
    for b in dom.blocks:
        targets = {cod.block_of(f(x)) for x in b}
        if len(targets) > 1:
            return False
    return True


@dataclass(frozen=True)
class LMP:
    """Labelled Markov process: ``kernel[(a, s)]`` is a measure on ``space``.

    Measurability of ``s ↦ kernel(a, s)(U)`` means states in the same
    block carry the same measure.
    """

    space: FinMeasSpace
    actions: FinSet
    kernel: Mapping

    def __post_init__(self):
        kernel = dict(self.kernel)
        for a in self.actions:
            for s in self.space.carrier:
                if (a, s) not in kernel:
                    raise InvalidStructure(f"kernel missing for action {a!r}, state {s!r}")
                if kernel[(a, s)].space != self.space:
                    raise SpaceMismatch("kernel measure on a different space")
            for b in self.space.blocks:
                if len({kernel[(a, s)] for s in b}) > 1:
                    raise InvalidStructure(
                        f"kernel for action {a!r} is not measurable: it varies inside a block")
        object.__setattr__(self, "kernel", kernel)

    @classmethod
    def constant(cls, space: FinMeasSpace, v: SubProb, actions: FinSet = FinSet(["*"])) -> "LMP":
        return cls(space, actions, {(a, s): v for a in actions for s in space.carrier})

    def __call__(self, a, s) -> SubProb:
        return self.kernel[(a, s)]
