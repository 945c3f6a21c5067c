"""TU games as value tables over all coalitions, and their certification.

A game on ``n`` players stores ``2**n`` exact integers; entry ``A`` (a bit mask)
is the worth of coalition ``A`` and entry 0 is always 0.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graph import ParseError, VertexSet, WeightedGraph, component_masks, members, to_mask
from .partition import Correspondence, partition_table

MAX_TABLE_PLAYERS = 14
MAX_SWEEP_PLAYERS = 12


class TooLarge(ValueError):
    pass


class SizeMismatch(ValueError):
    pass


class EmptyS(ValueError):
    pass


def check_table_size(n: int, cap: int = MAX_TABLE_PLAYERS) -> None:
    if n > cap:
        raise TooLarge(f"{n} players exceeds the cap of {cap} for full 2^n tables")


class Game:
    """Immutable coalition-value table with ``v(empty) = 0``."""

    def __init__(self, n: int, values):
        vals = np.array(values, dtype=np.int64)
        if vals.shape != (1 << n,):
            raise SizeMismatch(f"expected {1 << n} values for {n} players, got shape {vals.shape}")
        if vals[0] != 0:
            raise ValueError("the empty coalition must be worth 0")
        vals.flags.writeable = False
        self.n = n
        self.values = vals

    @classmethod
    def from_mapping(cls, n: int, worth: Mapping) -> Game:
        check_table_size(n)
        vals = np.zeros(1 << n, dtype=np.int64)
        for coalition, value in worth.items():
            vals[to_mask(coalition)] = value
        return cls(n, vals)

    @classmethod
    def zero(cls, n: int) -> Game:
        return cls(n, np.zeros(1 << n, dtype=np.int64))

    def __call__(self, a: Iterable[int] | int) -> int:
        return int(self.values[to_mask(a)])

    def __add__(self, other: Game) -> Game:
        if other.n != self.n:
            raise SizeMismatch("games on different player sets")
        return Game(self.n, self.values + other.values)

    def __mul__(self, k: int) -> Game:
        return Game(self.n, self.values * int(k))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Game) and other.n == self.n and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.n, self.values.tobytes()))

    def __repr__(self) -> str:
        nz = {tuple(members(a)): int(x) for a, x in enumerate(self.values) if x}
        return f"Game(n={self.n}, nonzero={nz})"

    @property
    def is_zero_normalized(self) -> bool:
        return all(self.values[1 << i] == 0 for i in range(self.n))


def unanimity(n: int, s: Iterable[int] | int) -> Game:
    """``u_S(A) = 1`` iff ``A`` contains ``S``."""
    mask = to_mask(s)
    if mask == 0:
        raise EmptyS("unanimity game needs a non-empty S")
    if mask >> n:
        raise ValueError("S is not a subset of the players")
    check_table_size(n)
    idx = np.arange(1 << n, dtype=np.int64)
    return Game(n, ((idx & mask) == mask).astype(np.int64))


def unanimity_combination(n: int, terms: Iterable[tuple[int, Iterable[int] | int]]) -> Game:
    """Sum of ``coef * u_S`` over ``terms``."""
    check_table_size(n)
    idx = np.arange(1 << n, dtype=np.int64)
    vals = np.zeros(1 << n, dtype=np.int64)
    for coef, s in terms:
        mask = to_mask(s)
        if mask == 0:
            raise EmptyS("unanimity game needs a non-empty S")
        vals += int(coef) * ((idx & mask) == mask)
    return Game(n, vals)


def restricted_game(g: WeightedGraph, v: Game, correspondence: Correspondence = "pmin") -> Game:
    """``vbar(A) = sum of v(F) over the blocks F of P(A)``."""
    if v.n != g.n:
        raise SizeMismatch(f"game has {v.n} players but the graph has {g.n} vertices")
    check_table_size(g.n)
    table = partition_table(g, correspondence)
    vals = v.values
    out = np.zeros(1 << g.n, dtype=np.int64)
    for a in range(1, 1 << g.n):
        out[a] = sum(int(vals[b]) for b in table[a])
    return Game(g.n, out)


def delta(v: Game, a: Iterable[int] | int, b: Iterable[int] | int) -> int:
    """``v(A | B) + v(A & B) - v(A) - v(B)``."""
    a, b = to_mask(a), to_mask(b)
    x = v.values
    return int(x[a | b] + x[a & b] - x[a] - x[b])


# --------------------------------------------------------------------------
# certification


@dataclass(frozen=True)
class Violation:
    """A pair of coalitions where the tested inequality fails.

    ``amount`` is the (negative) slack: ``v(A|B) - v(A) - v(B)`` for
    superadditivity, ``delta(v, A, B)`` for (F-)convexity.
    """

    a: VertexSet
    b: VertexSet
    amount: int
    pivot: int | None = None

    def describe(self, one_based: bool = True) -> dict:
        s = 1 if one_based else 0
        out = {"A": [x + s for x in members(self.a)], "B": [x + s for x in members(self.b)], "amount": self.amount}
        if self.pivot is not None:
            out["i"] = self.pivot + s
        return out


def superadditivity_violation(v: Game) -> Violation | None:
    """First disjoint pair with ``v(A | B) < v(A) + v(B)``, scanning unions by mask."""
    x = v.values
    for c in range(1, 1 << v.n):
        low = c & -c
        # A ranges over proper non-empty submasks containing the lowest bit of C
        a = (c - 1) & c
        while a:
            if a & low:
                b = c ^ a
                slack = int(x[c] - x[a] - x[b])
                if slack < 0:
                    return Violation(a, b, slack)
            a = (a - 1) & c
    return None


def is_superadditive(v: Game) -> bool:
    return superadditivity_violation(v) is None


@lru_cache(maxsize=None)
def _pair_bases(n: int) -> tuple[tuple[int, int, np.ndarray], ...]:
    full = np.arange(1 << n, dtype=np.int64)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            base = full[(full & ((1 << i) | (1 << j))) == 0]
            base.flags.writeable = False
            out.append((i, j, base))
    return tuple(out)


def convexity_violation(v: Game, cap: int = MAX_SWEEP_PLAYERS) -> Violation | None:
    """Supermodularity check through the pairwise form.

    ``v`` is convex iff ``v(A+i+j) + v(A) >= v(A+i) + v(A+j)`` for all players
    ``i != j`` and ``A`` avoiding both. A failure at ``(i, j, A)`` is reported as
    ``delta(v, A+i, A+j) < 0``.
    """
    if v.n > cap:
        raise TooLarge(f"{v.n} players exceeds the convexity sweep cap of {cap}")
    x = v.values
    for i, j, base in _pair_bases(v.n):
        bi, bj = 1 << i, 1 << j
        d = x[base | bi | bj] + x[base] - x[base | bi] - x[base | bj]
        bad = np.flatnonzero(d < 0)
        if bad.size:
            a = int(base[bad[0]])
            return Violation(a | bi, a | bj, int(d[bad[0]]), pivot=i)
    return None


def is_convex(v: Game) -> bool:
    return convexity_violation(v) is None


def connected_mask_table(g: WeightedGraph) -> np.ndarray:
    """Boolean array over all masks: is the coalition non-empty and connected in ``g``."""
    check_table_size(g.n)
    nbr = g.nbr_masks
    out = np.zeros(1 << g.n, dtype=bool)
    for a in range(1, 1 << g.n):
        out[a] = len(component_masks(nbr, a)) == 1
    return out


@dataclass(frozen=True, eq=False)
class FConvexPairs:
    """All pairs ``(A, B)`` of connected sets with connected intersection that
    are incomparable (comparable pairs have ``delta = 0``)."""

    a: np.ndarray
    b: np.ndarray

    @property
    def union(self) -> np.ndarray:
        return self.a | self.b

    @property
    def inter(self) -> np.ndarray:
        return self.a & self.b


def f_convex_pairs(g: WeightedGraph) -> FConvexPairs:
    conn = connected_mask_table(g)
    sets = np.flatnonzero(conn).astype(np.int64)
    chunks_a, chunks_b = [], []
    for k, a in enumerate(sets):
        b = sets[k + 1:]
        inter = a & b
        keep = conn[inter] & (inter != a) & (inter != b)
        if keep.any():
            chunks_b.append(b[keep])
            chunks_a.append(np.full(int(keep.sum()), a, dtype=np.int64))
    if not chunks_a:
        empty = np.zeros(0, dtype=np.int64)
        return FConvexPairs(empty, empty)
    return FConvexPairs(np.concatenate(chunks_a), np.concatenate(chunks_b))


def f_convexity_violation(v: Game, g: WeightedGraph, pairs: FConvexPairs | None = None) -> Violation | None:
    """Supermodularity restricted to connected ``A``, ``B`` with connected, non-empty ``A & B``."""
    if v.n != g.n:
        raise SizeMismatch(f"game has {v.n} players but the graph has {g.n} vertices")
    pairs = pairs if pairs is not None else f_convex_pairs(g)
    x = v.values
    d = x[pairs.union] + x[pairs.inter] - x[pairs.a] - x[pairs.b]
    bad = np.flatnonzero(d < 0)
    if bad.size:
        k = bad[0]
        return Violation(int(pairs.a[k]), int(pairs.b[k]), int(d[k]))
    return None


def is_f_convex(v: Game, g: WeightedGraph) -> bool:
    return f_convexity_violation(v, g) is None


# --------------------------------------------------------------------------
# generators


def random_convex_game(
    n: int,
    seed: int | None = None,
    terms: int | None = None,
    max_coef: int = 5,
    allow_singletons: bool = False,
) -> Game:
    """Non-negative integer combination of random unanimity games.

    Always supermodular and superadditive; zero-normalized unless
    ``allow_singletons`` lets a singleton ``S`` in.
    """
    rng = random.Random(seed)
    terms = n if terms is None else terms
    picked = []
    min_size = 1 if allow_singletons or n < 2 else 2
    for _ in range(terms):
        size = rng.randint(min_size, max(min_size, n))
        s = rng.sample(range(n), size)
        picked.append((rng.randint(0, max_coef), s))
    return unanimity_combination(n, picked)


def random_superadditive_game(n: int, seed: int | None = None, low: int = -4, high: int = 8) -> Game:
    """Zero-normalized superadditive game that is usually not convex.

    Random worths are lifted to their superadditive cover:
    ``v(C) = max(r(C), max over splits v(A) + v(C - A))``.
    """
    check_table_size(n)
    rng = random.Random(seed)
    vals = [0] * (1 << n)
    for c in range(1, 1 << n):
        if c & (c - 1) == 0:
            continue
        best = rng.randint(low, high)
        low_bit = c & -c
        a = (c - 1) & c
        while a:
            if a & low_bit:
                best = max(best, vals[a] + vals[c ^ a])
            a = (a - 1) & c
        vals[c] = best
    return Game(n, vals)


# --------------------------------------------------------------------------
# game file format: "v1,v2,... value" per line, 1-based, omitted coalitions are 0


def parse_game(text: str, n: int) -> Game:
    check_table_size(n)
    vals = np.zeros(1 << n, dtype=np.int64)
    seen: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'v1,v2,... value', got {line!r}", lineno)
        coalition, value = parts
        if coalition in ("∅", "{}", "-"):
            raise ParseError("the empty coalition cannot be given a value", lineno)
        try:
            vs = [int(t) for t in coalition.split(",")]
            worth = int(value)
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", lineno) from None
        if any(not 1 <= x <= n for x in vs):
            raise ParseError(f"player out of range 1..{n}", lineno)
        if len(set(vs)) != len(vs):
            raise ParseError("repeated player in coalition", lineno)
        mask = to_mask(x - 1 for x in vs)
        if mask in seen:
            raise ParseError("coalition listed twice", lineno)
        seen.add(mask)
        vals[mask] = worth
    return Game(n, vals)


def format_game(v: Game) -> str:
    lines = []
    for a in range(1, 1 << v.n):
        if v.values[a]:
            lines.append(",".join(str(x + 1) for x in members(a)) + f" {int(v.values[a])}")
    return "\n".join(lines) + ("\n" if lines else "")


def read_game(path, n: int) -> Game:
    with open(path, encoding="utf-8") as fh:
        return parse_game(fh.read(), n)
