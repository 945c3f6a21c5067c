"""Correspondences P_min and P_M, partition restriction/refinement, weight classes."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from typing import Literal

from .graph import Edge, VertexSet, WeightedGraph, component_masks, lowest, members, to_mask

Correspondence = Literal["pmin", "myerson"]


class CarrierMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    """Blocks (bit masks) covering ``carrier``, ordered by smallest member.

    The empty coalition has no blocks.
    """

    carrier: VertexSet
    blocks: tuple[VertexSet, ...]

    def __post_init__(self):
        union = 0
        for b in self.blocks:
            if b == 0:
                raise ValueError("empty block")
            if union & b:
                raise ValueError("blocks overlap")
            union |= b
        if union != self.carrier:
            raise ValueError("blocks do not cover the carrier")

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int] | int]) -> Partition:
        masks = [to_mask(b) for b in blocks]
        carrier = 0
        for b in masks:
            carrier |= b
        return cls(carrier, tuple(sorted(masks, key=lowest)))

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def block_of(self, v: int) -> VertexSet | None:
        for b in self.blocks:
            if b >> v & 1:
                return b
        return None

    def as_lists(self, one_based: bool = True) -> list[list[int]]:
        shift = 1 if one_based else 0
        return [[v + shift for v in members(b)] for b in self.blocks]


def _partition(carrier: VertexSet, blocks: list[VertexSet]) -> Partition:
    # component_masks already yields blocks by smallest member
    return Partition(carrier, tuple(blocks))


class WeightLevels:
    """Per-vertex neighbour masks split by weight, for fast P_min on bit masks."""

    def __init__(self, g: WeightedGraph):
        self.sigma = g.distinct_weights()
        n = g.n
        self.eq = [[0] * n for _ in self.sigma]
        self.above = [[0] * n for _ in self.sigma]
        index = {w: i for i, w in enumerate(self.sigma)}
        for (u, v), w in g.edges.items():
            i = index[w]
            self.eq[i][u] |= 1 << v
            self.eq[i][v] |= 1 << u
            for j in range(i):
                self.above[j][u] |= 1 << v
                self.above[j][v] |= 1 << u
        self.nbr = g.nbr_masks

    def min_level(self, a: VertexSet) -> int | None:
        vs = members(a)
        for i, eq in enumerate(self.eq):
            for v in vs:
                if eq[v] & a:
                    return i
        return None

    def pmin_blocks(self, a: VertexSet) -> list[VertexSet]:
        level = self.min_level(a)
        if level is None:
            return [1 << v for v in members(a)]
        return component_masks(self.above[level], a)

    def myerson_blocks(self, a: VertexSet) -> list[VertexSet]:
        return component_masks(self.nbr, a)


def sigma_min(g: WeightedGraph, a: Iterable[int] | int) -> int | None:
    """Minimum edge weight inside ``G_A``, or None when ``A`` spans no edge."""
    mask = to_mask(a)
    ws = [w for (u, v), w in g.edges.items() if mask >> u & 1 and mask >> v & 1]
    return min(ws) if ws else None


def min_weight_edges(g: WeightedGraph, a: Iterable[int] | int) -> list[Edge]:
    """The edge set deleted by P_min: all minimum-weight edges of ``G_A``."""
    mask = to_mask(a)
    inside = {e: w for e, w in g.edges.items() if mask >> e[0] & 1 and mask >> e[1] & 1}
    if not inside:
        return []
    low = min(inside.values())
    return [e for e, w in inside.items() if w == low]


def p_min(g: WeightedGraph, a: Iterable[int] | int, levels: WeightLevels | None = None) -> Partition:
    mask = to_mask(a)
    levels = levels or WeightLevels(g)
    return _partition(mask, levels.pmin_blocks(mask))


def p_myerson(g: WeightedGraph, a: Iterable[int] | int) -> Partition:
    mask = to_mask(a)
    return _partition(mask, component_masks(g.nbr_masks, mask))


def restrict(p: Partition, a: Iterable[int] | int) -> Partition:
    mask = to_mask(a)
    if mask & ~p.carrier:
        raise CarrierMismatch("restriction set is not inside the carrier")
    return Partition(mask, tuple(b & mask for b in p.blocks if b & mask))


def is_refinement(p: Partition, q: Partition) -> bool:
    """True iff every block of ``p`` lies inside some block of ``q``."""
    if p.carrier != q.carrier:
        raise CarrierMismatch("partitions have different carriers")
    return all(any(b & ~c == 0 for c in q.blocks) for b in p.blocks)


def partition_table(g: WeightedGraph, correspondence: Correspondence = "pmin") -> list[tuple[VertexSet, ...]]:
    """Blocks of the chosen correspondence for every coalition, indexed by mask."""
    levels = WeightLevels(g)
    blocks = levels.pmin_blocks if correspondence == "pmin" else levels.myerson_blocks
    table: list[tuple[VertexSet, ...]] = [()]
    for a in range(1, 1 << g.n):
        table.append(tuple(blocks(a)))
    return table


@dataclass(frozen=True)
class WeightSpectrum:
    sigma: tuple[int, ...]
    classes: tuple[tuple[Edge, ...], ...]
    endpoints: tuple[frozenset[int], ...]

    @property
    def k(self) -> int:
        return len(self.sigma)

    def counts(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


def weight_spectrum(g: WeightedGraph) -> WeightSpectrum:
    sigma = tuple(g.distinct_weights())
    classes = tuple(tuple(e for e, w in g.edges.items() if w == s) for s in sigma)
    endpoints = tuple(frozenset(v for e in cls for v in e) for cls in classes)
    return WeightSpectrum(sigma, classes, endpoints)
