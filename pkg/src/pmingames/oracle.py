"""Exponential-time ground truth for inheritance questions.

Convexity of every convex game carries over to the P_min-restricted game iff
every restricted unanimity game is convex, so the sweeps below only look at
the ``2**n - 1`` games ``ubar_S``. They share one table: ``U[S, A] = 1`` iff some
block of ``P_min(A)`` contains ``S``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np

from .games import (
    MAX_SWEEP_PLAYERS,
    Game,
    TooLarge,
    Violation,
    _pair_bases,
    connected_mask_table,
    convexity_violation,
    f_convex_pairs,
    f_convexity_violation,
    superadditivity_violation,
)
from .graph import VertexSet, WeightedGraph, lowest, members, popcount
from .partition import Correspondence, partition_table

SAMPLING_MAX_PLAYERS = 20
_CHUNK = 1 << 24


@dataclass(frozen=True)
class OracleWitness:
    """Unanimity carrier ``s`` whose restricted game fails on ``violation``."""

    s: VertexSet
    violation: Violation

    def describe(self, one_based: bool = True) -> dict:
        shift = 1 if one_based else 0
        return {"S": [v + shift for v in members(self.s)], **self.violation.describe(one_based)}


@dataclass(frozen=True)
class OracleResult:
    holds: bool
    witness: OracleWitness | None = None
    exhaustive: bool = True
    checked: int = 0

    def __bool__(self) -> bool:
        return self.holds


@lru_cache(maxsize=4096)
def _submasks(b: int) -> np.ndarray:
    subs = []
    s = b
    while s:
        subs.append(s)
        s = (s - 1) & b
    arr = np.array(subs, dtype=np.int64)
    arr.flags.writeable = False
    return arr


def unanimity_matrix(table: list[tuple[VertexSet, ...]], n: int) -> np.ndarray:
    """``U[S, A]`` for every ``S`` (row) and coalition ``A`` (column); row 0 is unused."""
    size = 1 << n
    u = np.zeros((size, size), dtype=np.int8)
    for a in range(1, size):
        for b in table[a]:
            if b & (b - 1):
                u[_submasks(b), a] = 1
            else:
                u[b, a] = 1
    return u


def sweep_order(n: int) -> list[int]:
    """Non-empty ``S`` by increasing cardinality, then by mask value."""
    return sorted(range(1, 1 << n), key=lambda s: (popcount(s), s))


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise TooLarge(f"{n} vertices exceeds the oracle cap of {cap}")


def restricted_unanimity(table: list[tuple[VertexSet, ...]], n: int, s: VertexSet) -> Game:
    """``ubar_S`` from a partition table: 1 on ``A`` iff one block of ``P(A)`` contains ``S``."""
    vals = np.zeros(1 << n, dtype=np.int64)
    for a in range(1, 1 << n):
        if a & s == s:
            for b in table[a]:
                if b & s:
                    vals[a] = 1 if b & s == s else 0
                    break
    return Game(n, vals)


def _first_bad_row(bad_rows: np.ndarray, n: int) -> int | None:
    for s in sweep_order(n):
        if bad_rows[s]:
            return s
    return None


def convexity_sweep(table: list[tuple[VertexSet, ...]], n: int) -> OracleResult:
    u = unanimity_matrix(table, n)
    bad_rows = np.zeros(1 << n, dtype=bool)
    for i, j, base in _pair_bases(n):
        bi, bj = 1 << i, 1 << j
        d = u[:, base | bi | bj] + u[:, base] - u[:, base | bi] - u[:, base | bj]
        bad_rows |= (d < 0).any(axis=1)
    bad_rows[0] = False
    s = _first_bad_row(bad_rows, n)
    if s is None:
        return OracleResult(True, checked=(1 << n) - 1)
    violation = convexity_violation(Game(n, u[s].astype(np.int64)))
    return OracleResult(False, OracleWitness(s, violation), checked=(1 << n) - 1)


def inheritance_convexity_bruteforce(
    g: WeightedGraph,
    cap: int = MAX_SWEEP_PLAYERS,
    sample: int | None = None,
    seed: int | None = None,
) -> OracleResult:
    """Is every ``ubar_S`` convex? Exhaustive up to ``cap`` players.

    For ``cap < n <= 20`` pass ``sample`` to test that many random carriers
    ``S`` instead; such a result is marked ``exhaustive=False`` and a ``holds``
    answer is then only evidence, not proof.
    """
    if sample is not None and g.n > cap:
        return _sampled_convexity(g, sample, seed)
    _check_cap(g.n, cap)
    return convexity_sweep(partition_table(g, "pmin"), g.n)


def _block_ids(table: list[tuple[VertexSet, ...]], n: int) -> np.ndarray:
    ids = np.full((len(table), n), -1, dtype=np.int16)
    for a, blocks in enumerate(table):
        for k, b in enumerate(blocks):
            for v in members(b):
                ids[a, v] = k
    return ids


def _sampled_convexity(g: WeightedGraph, sample: int, seed: int | None) -> OracleResult:
    if g.n > SAMPLING_MAX_PLAYERS:
        raise TooLarge(f"{g.n} vertices exceeds the sampling cap of {SAMPLING_MAX_PLAYERS}")
    rng = random.Random(seed)
    table = partition_table(g, "pmin")
    ids = _block_ids(table, g.n)
    coalitions = np.arange(1 << g.n, dtype=np.int64)
    carriers = sorted({rng.randrange(1, 1 << g.n) for _ in range(sample)}, key=lambda s: (popcount(s), s))
    for s in carriers:
        vs = members(s)
        cols = ids[:, vs]
        vals = ((coalitions & s) == s) & (cols == cols[:, :1]).all(axis=1) & (cols[:, 0] >= 0)
        violation = convexity_violation(Game(g.n, vals.astype(np.int64)), cap=SAMPLING_MAX_PLAYERS)
        if violation is not None:
            return OracleResult(False, OracleWitness(s, violation), False, len(carriers))
    return OracleResult(True, exhaustive=False, checked=len(carriers))


def inheritance_fconvexity_bruteforce(g: WeightedGraph, cap: int = MAX_SWEEP_PLAYERS) -> OracleResult:
    """Is every ``ubar_S`` F-convex for F the connected vertex sets?"""
    _check_cap(g.n, cap)
    n = g.n
    u = unanimity_matrix(partition_table(g, "pmin"), n)
    pairs = f_convex_pairs(g)
    bad_rows = np.zeros(1 << n, dtype=bool)
    step = max(1, _CHUNK >> n)
    for lo in range(0, pairs.a.size, step):
        a, b = pairs.a[lo:lo + step], pairs.b[lo:lo + step]
        d = u[:, a | b] + u[:, a & b] - u[:, a] - u[:, b]
        bad_rows |= (d < 0).any(axis=1)
    bad_rows[0] = False
    s = _first_bad_row(bad_rows, n)
    if s is None:
        return OracleResult(True, checked=(1 << n) - 1)
    violation = f_convexity_violation(Game(n, u[s].astype(np.int64)), g, pairs)
    return OracleResult(False, OracleWitness(s, violation), checked=(1 << n) - 1)


def superadditivity_sweep(table: list[tuple[VertexSet, ...]], n: int) -> OracleResult:
    """Is every restricted unanimity game superadditive (for an arbitrary partition table)?"""
    for s in sweep_order(n):
        violation = superadditivity_violation(restricted_unanimity(table, n, s))
        if violation is not None:
            return OracleResult(False, OracleWitness(s, violation))
    return OracleResult(True, checked=(1 << n) - 1)


# --------------------------------------------------------------------------
# partition criteria


@dataclass(frozen=True)
class RefinementWitness:
    a: VertexSet
    b: VertexSet


def refinement_violation(table: list[tuple[VertexSet, ...]], n: int) -> RefinementWitness | None:
    """First ``A <= B`` where ``P(A)`` does not refine ``P(B)|A``."""
    for b in range(1, 1 << n):
        blocks_b = table[b]
        a = b
        while a:
            for block in table[a]:
                home = next(c for c in blocks_b if c >> lowest(block) & 1)
                if block & ~home:
                    return RefinementWitness(a, b)
            a = (a - 1) & b
    return None


def refinement_check(g: WeightedGraph, cap: int = MAX_SWEEP_PLAYERS) -> RefinementWitness | None:
    """None when ``P_min(A)`` refines ``P_min(B)|A`` for all ``A <= B`` (always expected)."""
    _check_cap(g.n, cap)
    return refinement_violation(partition_table(g, "pmin"), g.n)


@dataclass(frozen=True)
class StabilityWitness:
    i: int
    a: VertexSet
    b: VertexSet
    a_prime: VertexSet

    def describe(self, one_based: bool = True) -> dict:
        s = 1 if one_based else 0
        return {
            "i": self.i + s,
            "A": [v + s for v in members(self.a)],
            "B": [v + s for v in members(self.b)],
            "A_prime": [v + s for v in members(self.a_prime)],
        }


def _restricted_blocks(blocks: tuple[VertexSet, ...], a: VertexSet) -> frozenset[VertexSet]:
    return frozenset(b & a for b in blocks if b & a)


def stability_violation(
    table: list[tuple[VertexSet, ...]],
    n: int,
    family: np.ndarray,
) -> StabilityWitness | None:
    """Partition-stability criterion over the coalition family ``family`` (boolean by mask).

    For each player ``i`` and ``A <= B <= N - i`` with ``A``, ``B``, ``A + i`` in
    the family, every ``A'`` in ``P(A + i)|A`` must satisfy
    ``P(A)|A' == P(B)|A'``.
    """
    full = (1 << n) - 1
    for i in range(n):
        bit = 1 << i
        rest = full & ~bit
        b = rest
        while True:
            if b and family[b]:
                a = b
                while a:
                    if family[a] and family[a | bit]:
                        for a_prime in _restricted_blocks(table[a | bit], a):
                            if _restricted_blocks(table[a], a_prime) != _restricted_blocks(table[b], a_prime):
                                return StabilityWitness(i, a, b, a_prime)
                    a = (a - 1) & b
            if b == 0:
                break
            b = (b - 1) & rest
    return None


def partition_stability_check(
    g: WeightedGraph,
    family: Literal["connected", "all-nonempty"] = "all-nonempty",
    cap: int = MAX_SWEEP_PLAYERS,
    correspondence: Correspondence = "pmin",
) -> StabilityWitness | None:
    _check_cap(g.n, cap)
    if family == "connected":
        members_ok = connected_mask_table(g)
    elif family == "all-nonempty":
        members_ok = np.ones(1 << g.n, dtype=bool)
        members_ok[0] = False
    else:
        raise ValueError(f"unknown family {family!r}")
    return stability_violation(partition_table(g, correspondence), g.n, members_ok)
