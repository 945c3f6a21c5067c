"""Weighted graphs and the graph algorithms the rest of the package builds on.

Vertices are ``0..n-1`` internally. A coalition (vertex set) is an ``int`` bit
mask: bit ``i`` set means vertex ``i`` belongs to it. Every public function
that takes a vertex set also accepts any iterable of vertex indices.

The text format used by the CLI is 1-based::

    # comment lines are allowed anywhere
    n m
    u v w      (m lines, 1 <= u < v <= n, w a positive integer)
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

DEFAULT_CAP = 10**6

VertexSet = int
Edge = tuple[int, int]


class GraphError(ValueError):
    """Invalid graph construction (self-loop, duplicate edge, bad weight...)."""


class CapExceeded(RuntimeError):
    """An enumeration produced more items than the configured cap."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"more than {cap} {what}; instance is beyond desk scale")
        self.what = what
        self.cap = cap


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


# --------------------------------------------------------------------------
# vertex-set helpers


def to_mask(a: Iterable[int] | int) -> VertexSet:
    if isinstance(a, (int, np.integer)):
        return int(a)
    mask = 0
    for v in a:
        mask |= 1 << int(v)
    return mask


def members(mask: VertexSet) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: VertexSet) -> int:
    return bin(mask).count("1")


def lowest(mask: VertexSet) -> int:
    return (mask & -mask).bit_length() - 1


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


# --------------------------------------------------------------------------


class WeightedGraph:
    """Simple undirected graph with strictly positive integer edge weights.

    The adjacency matrix (``w_uv`` for an edge, 0 otherwise) is the canonical
    representation; edge dictionaries and neighbour masks are derived lazily.
    Instances are immutable.
    """

    def __init__(self, n: int, edges: Mapping[Edge, int] | Iterable[tuple[int, int, int]] = ()):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        items = edges.items() if isinstance(edges, Mapping) else ((e[0], e[1], e[2]) for e in edges)
        matrix = np.zeros((n, n), dtype=np.int64)
        normalized: dict[Edge, int] = {}
        for item in items:
            if isinstance(edges, Mapping):
                (u, v), w = item
            else:
                u, v, w = item
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if isinstance(w, bool) or int(w) != w or w <= 0:
                raise GraphError(f"edge ({u}, {v}) has non-positive or non-integer weight {w!r}")
            key = edge_key(u, v)
            if key in normalized:
                raise GraphError(f"duplicate edge {key}")
            normalized[key] = int(w)
            matrix[u, v] = matrix[v, u] = int(w)
        matrix.flags.writeable = False
        self.n = n
        self._matrix = matrix
        self.__dict__["edges"] = dict(sorted(normalized.items()))

    @classmethod
    def from_matrix(cls, matrix) -> WeightedGraph:
        m = np.array(matrix, dtype=np.int64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise GraphError("adjacency matrix must be square")
        if np.any(np.diag(m) != 0):
            raise GraphError("adjacency matrix has a non-zero diagonal (self-loop)")
        if not np.array_equal(m, m.T):
            raise GraphError("adjacency matrix is not symmetric")
        if np.any(m < 0):
            raise GraphError("negative weight in adjacency matrix")
        g = cls.__new__(cls)
        m.flags.writeable = False
        g.n = m.shape[0]
        g._matrix = m
        return g

    # -- derived views ----------------------------------------------------

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @cached_property
    def edges(self) -> dict[Edge, int]:
        us, vs = np.nonzero(np.triu(self._matrix))
        ws = self._matrix[us, vs]
        return {(int(u), int(v)): int(w) for u, v, w in zip(us, vs, ws)}

    @cached_property
    def nbr_masks(self) -> tuple[int, ...]:
        if self.n == 0:
            return ()
        packed = np.packbits(self._matrix != 0, axis=1, bitorder="little")
        return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)

    @cached_property
    def _weights(self) -> dict[Edge, int]:
        both = dict(self.edges)
        both.update({(v, u): w for (u, v), w in self.edges.items()})
        return both

    @property
    def all_vertices(self) -> VertexSet:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return len(self.edges)

    def weight(self, u: int, v: int) -> int:
        """Weight of edge {u, v}, or 0 when the edge is absent."""
        return self._weights.get((u, v), 0)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._weights

    def neighbors(self, v: int) -> list[int]:
        return members(self.nbr_masks[v])

    def degree(self, v: int) -> int:
        return popcount(self.nbr_masks[v])

    def distinct_weights(self) -> list[int]:
        return sorted(set(self.edges.values()))

    def without_edges(self, drop: Iterable[Edge]) -> WeightedGraph:
        m = self._matrix.copy()
        for u, v in drop:
            m[u, v] = m[v, u] = 0
        return WeightedGraph.from_matrix(m)

    def remap_weights(self, fn) -> WeightedGraph:
        return WeightedGraph(self.n, {e: fn(w) for e, w in self.edges.items()})

    def relabel(self, perm: list[int]) -> WeightedGraph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return WeightedGraph(self.n, {edge_key(perm[u], perm[v]): w for (u, v), w in self.edges.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, WeightedGraph) and self.n == other.n and np.array_equal(self._matrix, other._matrix)

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.edges.items())))

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, edges={self.edges!r})"


# --------------------------------------------------------------------------
# basic operations


def induced_subgraph(g: WeightedGraph, a: Iterable[int] | int) -> tuple[WeightedGraph, tuple[int, ...]]:
    """Return ``(G_A, labels)`` where vertex ``i`` of ``G_A`` is ``labels[i]`` in ``g``."""
    labels = tuple(members(to_mask(a)))
    index = {v: i for i, v in enumerate(labels)}
    edges = {(index[u], index[v]): w for (u, v), w in g.edges.items() if u in index and v in index}
    return WeightedGraph(len(labels), edges), labels


def component_masks(nbr: tuple[int, ...] | list[int], a: VertexSet) -> list[VertexSet]:
    """Connected components of ``a`` under the neighbour masks ``nbr``, by smallest member."""
    out = []
    rest = a
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            reach = 0
            f = frontier
            while f:
                low = f & -f
                reach |= nbr[low.bit_length() - 1]
                f ^= low
            frontier = reach & rest & ~comp
            comp |= frontier
        out.append(comp)
        rest &= ~comp
    return out


def connected_components(g: WeightedGraph, a: Iterable[int] | int) -> list[VertexSet]:
    return component_masks(g.nbr_masks, to_mask(a))


def is_connected(g: WeightedGraph, a: Iterable[int] | int) -> bool:
    mask = to_mask(a)
    return mask != 0 and len(component_masks(g.nbr_masks, mask)) == 1


def is_complete(g: WeightedGraph, a: Iterable[int] | int) -> bool:
    mask = to_mask(a)
    nbr = g.nbr_masks
    for v in members(mask):
        if (nbr[v] | (1 << v)) & mask != mask:
            return False
    return True


def shortest_path(g: WeightedGraph, u: int, v: int) -> list[int] | None:
    """Minimum-edge-count path from ``u`` to ``v`` (weights ignored), or None.

    Breadth-first search over adjacency-matrix rows; each vertex is reached from
    the smallest-index vertex of the previous layer, so the result is
    deterministic. Shortest paths are always chordless.
    """
    if u == v:
        return [u]
    adj = g.matrix != 0
    parent = np.full(g.n, -1, dtype=np.int64)
    seen = np.zeros(g.n, dtype=bool)
    seen[u] = True
    frontier = np.array([u])
    while frontier.size:
        hits = adj[frontier]
        reach = hits.any(axis=0) & ~seen
        if not reach.any():
            return None
        new = np.flatnonzero(reach)
        parent[new] = frontier[hits[:, new].argmax(axis=0)]
        seen[new] = True
        if seen[v]:
            path = [v]
            while path[-1] != u:
                path.append(int(parent[path[-1]]))
            return path[::-1]
        frontier = new
    return None


# --------------------------------------------------------------------------
# biconnected components


@dataclass(frozen=True, eq=False)
class BiconnectedDecomposition:
    """Blocks (maximal biconnected subgraphs) and articulation points.

    ``blocks[i]`` is the vertex set of block ``i`` and ``edge_counts[i]`` its
    number of edges. Edge sets are materialised on demand by :meth:`edge_sets`
    since dense graphs have O(n^2) edges.
    """

    blocks: tuple[frozenset[int], ...]
    articulation_points: frozenset[int]
    edge_counts: tuple[int, ...]
    _owner: np.ndarray = field(repr=False)
    _disc: np.ndarray = field(repr=False)

    def block_of_edge(self, u: int, v: int) -> int:
        deeper = u if self._disc[u] > self._disc[v] else v
        return int(self._owner[deeper])

    def edge_sets(self, g: WeightedGraph) -> list[frozenset[Edge]]:
        sets: list[set[Edge]] = [set() for _ in self.blocks]
        for u, v in g.edges:
            sets[self.block_of_edge(u, v)].add((u, v))
        return [frozenset(s) for s in sets]

    def is_complete_block(self, i: int) -> bool:
        s = len(self.blocks[i])
        return self.edge_counts[i] == s * (s - 1) // 2


@dataclass(frozen=True, eq=False)
class DepthFirstForest:
    """Discovery times, low points and tree parents of a depth-first search.

    ``disc`` is -1 for vertices the search never reached; ``order`` lists the
    reached vertices in discovery order.
    """

    disc: np.ndarray
    low: np.ndarray
    parent: np.ndarray
    order: list[int]


def depth_first_forest(adj: np.ndarray, roots: Iterable[int] | None = None) -> DepthFirstForest:
    """Iterative DFS over a boolean adjacency matrix, one numpy row scan per step.

    Each vertex is pushed once and each row is scanned a bounded number of
    times, so the total work is O(n^2).
    """
    n = adj.shape[0]
    disc = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    unvisited = np.ones(n, dtype=bool)
    order: list[int] = []
    clock = 0
    for root in range(n) if roots is None else roots:
        if not unvisited[root]:
            continue
        disc[root] = low[root] = clock
        clock += 1
        unvisited[root] = False
        order.append(root)
        stack = [root]
        while stack:
            v = stack[-1]
            cand = adj[v] & unvisited
            nxt = int(cand.argmax())
            if cand[nxt]:
                disc[nxt] = low[nxt] = clock
                clock += 1
                unvisited[nxt] = False
                parent[nxt] = v
                order.append(nxt)
                stack.append(nxt)
                continue
            stack.pop()
            row = adj[v].copy()
            p = int(parent[v])
            if p >= 0:
                row[p] = False
            if row.any():
                low[v] = min(low[v], int(disc[row].min()))
            if p >= 0:
                low[p] = min(low[p], low[v])
    return DepthFirstForest(disc, low, parent, order)


def biconnected_decomposition(g: WeightedGraph) -> BiconnectedDecomposition:
    """Tarjan's depth-first search driven by adjacency-matrix rows; O(n^2).

    Each tree vertex ``u`` owns the block containing its tree edge to its
    parent: it opens a new block when ``low[u] >= disc[parent]`` and inherits
    its parent's block otherwise. An edge belongs to the block owned by its
    deeper endpoint.
    """
    n = g.n
    adj = g.matrix != 0
    dfs = depth_first_forest(adj)
    disc, low, parent, order = dfs.disc, dfs.low, dfs.parent, dfs.order

    owner = np.full(n, -1, dtype=np.int64)
    heads: list[int] = []
    children = np.zeros(n, dtype=np.int64)
    cut = set()
    for u in order:
        p = int(parent[u])
        if p < 0:
            continue
        children[p] += 1
        if low[u] >= disc[p]:
            owner[u] = len(heads)
            heads.append(u)
            if parent[p] >= 0:
                cut.add(p)
        else:
            owner[u] = owner[p]
    cut.update(int(v) for v in np.flatnonzero((parent < 0) & (children >= 2)))

    members_of: list[set[int]] = [{int(parent[h])} for h in heads]
    for u in order:
        if owner[u] >= 0:
            members_of[owner[u]].add(u)
    earlier = adj & (disc[None, :] < disc[:, None])
    per_vertex = earlier.sum(axis=1)
    counts = np.bincount(owner[owner >= 0], weights=per_vertex[owner >= 0], minlength=len(heads))
    return BiconnectedDecomposition(
        blocks=tuple(frozenset(s) for s in members_of),
        articulation_points=frozenset(cut),
        edge_counts=tuple(int(c) for c in counts),
        _owner=owner,
        _disc=disc,
    )


def separating_vertices(g: WeightedGraph, s: int, t: int) -> list[int] | None:
    """Vertices other than ``s`` and ``t`` lying on every ``s``-``t`` path.

    Returns None when ``t`` is unreachable from ``s``. Uses a DFS rooted at
    ``s``: walking the tree path up from ``t``, the parent ``p`` of ``c``
    separates iff no back edge from the subtree of ``c`` climbs above ``p``,
    i.e. ``low[c] >= disc[p]``. Result is ordered from ``t`` towards ``s``.
    """
    dfs = depth_first_forest(g.matrix != 0, roots=[s])
    if dfs.disc[t] < 0:
        return None
    out = []
    c = t
    while dfs.parent[c] != s and c != s:
        p = int(dfs.parent[c])
        if dfs.low[c] >= dfs.disc[p]:
            out.append(p)
        c = p
    return out


# --------------------------------------------------------------------------
# cycles and paths


@dataclass(frozen=True)
class Cycle:
    """A simple cycle ``v_1 .. v_m`` with its closure data in the host graph.

    ``edges[k]`` joins ``vertices[k]`` and ``vertices[(k + 1) % m]``; chords are
    graph edges joining two non-consecutive cycle vertices.
    """

    vertices: tuple[int, ...]
    weights: tuple[int, ...]
    chords: tuple[Edge, ...]
    chord_weights: tuple[int, ...]

    @classmethod
    def of(cls, g: WeightedGraph, vertices: Iterable[int], canonical: bool = True) -> Cycle:
        vs = tuple(int(v) for v in vertices)
        m = len(vs)
        if m < 3:
            raise GraphError("a cycle needs at least three vertices")
        if len(set(vs)) != m:
            raise GraphError(f"cycle vertices are not distinct: {vs}")
        if canonical:
            vs = canonical_cycle(vs)
        weights = []
        for k in range(m):
            w = g.weight(vs[k], vs[(k + 1) % m])
            if not w:
                raise GraphError(f"missing cycle edge {edge_key(vs[k], vs[(k + 1) % m])}")
            weights.append(w)
        chords = []
        for i in range(m):
            for j in range(i + 2, m):
                if i == 0 and j == m - 1:
                    continue
                if g.has_edge(vs[i], vs[j]):
                    chords.append(edge_key(vs[i], vs[j]))
        chords.sort()
        return cls(vs, tuple(weights), tuple(chords), tuple(g.weight(*c) for c in chords))

    @property
    def m(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> tuple[Edge, ...]:
        vs = self.vertices
        return tuple(edge_key(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs)))

    @property
    def mask(self) -> VertexSet:
        return to_mask(self.vertices)

    @property
    def m_hat(self) -> int:
        return max(self.weights + self.chord_weights)

    @property
    def is_constant(self) -> bool:
        return len(set(self.weights)) == 1

    @property
    def is_chordless(self) -> bool:
        return not self.chords

    def closure(self) -> dict[Edge, int]:
        out = dict(zip(self.edges, self.weights))
        out.update(zip(self.chords, self.chord_weights))
        return out


def canonical_cycle(vs: tuple[int, ...]) -> tuple[int, ...]:
    """Rotate the smallest vertex first, then orient so the second vertex is the smaller neighbour."""
    i = vs.index(min(vs))
    rot = vs[i:] + vs[:i]
    if rot[1] > rot[-1]:
        rot = (rot[0],) + tuple(reversed(rot[1:]))
    return rot


def iter_simple_cycles(g: WeightedGraph) -> Iterator[tuple[int, ...]]:
    """Yield every simple cycle once, in canonical form.

    Backtracking search rooted at the smallest cycle vertex; the reflection
    duplicate is discarded by requiring ``second < last``.
    """
    nbr = g.nbr_masks
    for s in range(g.n):
        above = ~((1 << (s + 1)) - 1)
        path = [s]
        stack = [nbr[s] & above]
        used = 1 << s
        while stack:
            cand = stack[-1]
            if not cand:
                stack.pop()
                used &= ~(1 << path.pop())
                continue
            low = cand & -cand
            stack[-1] = cand ^ low
            v = low.bit_length() - 1
            if len(path) >= 2 and v > path[1] and nbr[v] >> s & 1:
                yield tuple(path) + (v,)
            path.append(v)
            used |= low
            stack.append(nbr[v] & above & ~used)


def enumerate_simple_cycles(g: WeightedGraph, cap: int = DEFAULT_CAP) -> list[Cycle]:
    out = []
    for vs in iter_simple_cycles(g):
        if len(out) >= cap:
            raise CapExceeded("simple cycles", cap)
        out.append(Cycle.of(g, vs, canonical=False))
    return out


def iter_elementary_paths(g: WeightedGraph, start: int | None = None, avoid: VertexSet = 0) -> Iterator[tuple[int, ...]]:
    """Yield vertex-simple paths with at least one edge.

    With ``start`` given, yields every path beginning at ``start`` that avoids
    ``avoid``. Otherwise yields each undirected path once (first < last).
    """
    nbr = g.nbr_masks
    starts = [start] if start is not None else range(g.n)
    for s in starts:
        path = [s]
        used = (1 << s) | avoid
        stack = [nbr[s] & ~used]
        while stack:
            cand = stack[-1]
            if not cand:
                stack.pop()
                used &= ~(1 << path.pop())
                continue
            low = cand & -cand
            stack[-1] = cand ^ low
            v = low.bit_length() - 1
            path.append(v)
            if start is not None or s < v:
                yield tuple(path)
            used |= low
            stack.append(nbr[v] & ~used)


def enumerate_elementary_paths(g: WeightedGraph, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    out = []
    for p in iter_elementary_paths(g):
        if len(out) >= cap:
            raise CapExceeded("elementary paths", cap)
        out.append(p)
    return out


# --------------------------------------------------------------------------
# text format


def parse_graph(text: str) -> WeightedGraph:
    header: tuple[int, int] | None = None
    edges: dict[Edge, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", lineno) from None
        if header is None:
            if len(nums) != 2 or nums[0] < 0 or nums[1] < 0:
                raise ParseError("header must be 'n m' with non-negative integers", lineno)
            header = (nums[0], nums[1])
            continue
        n, m = header
        if len(edges) >= m:
            raise ParseError(f"more than the declared {m} edge lines", lineno)
        if len(nums) != 3:
            raise ParseError(f"edge line must be 'u v w', got {line!r}", lineno)
        u, v, w = nums
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex out of range 1..{n}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        if w <= 0:
            raise ParseError(f"non-positive weight {w}", lineno)
        key = edge_key(u - 1, v - 1)
        if key in edges:
            raise ParseError(f"duplicate edge {{{u}, {v}}}", lineno)
        edges[key] = w
    if header is None:
        raise ParseError("empty graph file (missing 'n m' header)")
    if len(edges) != header[1]:
        raise ParseError(f"truncated file: declared {header[1]} edges, found {len(edges)}")
    return WeightedGraph(header[0], edges)


def format_graph(g: WeightedGraph, comment: str | None = None) -> str:
    lines = [f"# {c}" for c in (comment.splitlines() if comment else [])]
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u + 1} {v + 1} {w}" for (u, v), w in g.edges.items())
    return "\n".join(lines) + "\n"


def read_graph(path) -> WeightedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())
