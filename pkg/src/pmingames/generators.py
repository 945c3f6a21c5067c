"""Seeded graph generators for cross-validation and benchmarks.

Uniform random weighted graphs almost always fail the inheritance test for
trivial reasons, so besides Erdős–Rényi sampling there are planted families
that land on the boundary cases of the characterization.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Callable, Iterator

import numpy as np

from .graph import Edge, WeightedGraph, edge_key, is_connected

Generator = Callable[[random.Random, int, int], WeightedGraph]


def _random_weights(rng: random.Random, edges: list[Edge], k: int) -> dict[Edge, int]:
    return {e: rng.randint(1, k) for e in edges}


def _connected_edge_set(rng: random.Random, n: int, p: float) -> list[Edge]:
    pairs = list(itertools.combinations(range(n), 2))
    while True:
        edges = [e for e in pairs if rng.random() < p]
        if n <= 1 or is_connected(WeightedGraph(n, {e: 1 for e in edges}), (1 << n) - 1):
            return edges


def erdos_renyi_connected(rng: random.Random, n: int, k: int, p: float | None = None) -> WeightedGraph:
    """G(n, p) resampled until connected, weights uniform on ``1..k``."""
    p = rng.uniform(0.3, 0.9) if p is None else p
    edges = _connected_edge_set(rng, n, p)
    return WeightedGraph(n, _random_weights(rng, edges, k))


def planted_hub(rng: random.Random, n: int, k: int) -> WeightedGraph:
    """Light star at a hub plus heavy edges among (mostly) the star's leaves."""
    hub = rng.randrange(n)
    others = [v for v in range(n) if v != hub]
    rng.shuffle(others)
    leaves = others[: rng.randint(min(2, len(others)), len(others))]
    edges = {edge_key(hub, v): 1 for v in leaves}
    rest = [v for v in others if v not in leaves]
    for v in rest:
        edges[edge_key(v, rng.choice(leaves))] = 2
    for u, v in itertools.combinations(leaves + rest, 2):
        if edge_key(u, v) not in edges and rng.random() < 0.5:
            edges[edge_key(u, v)] = 2
    if k >= 3 and rng.random() < 0.3:
        e = rng.choice(list(edges))
        edges[e] = 3
    return WeightedGraph(n, edges)


def planted_book(rng: random.Random, n: int, k: int) -> WeightedGraph:
    """Unique light edge whose endpoints share one or more common neighbours."""
    a, b = rng.sample(range(n), 2)
    edges = {edge_key(a, b): 1}
    others = [v for v in range(n) if v not in (a, b)]
    pages = others[: rng.randint(1, max(1, min(2, len(others))))] if others else []
    for v in pages:
        edges[edge_key(a, v)] = rng.randint(2, max(2, k))
        edges[edge_key(b, v)] = 2
    for v in others:
        if v in pages:
            continue
        u = rng.choice([a, b] + pages)
        edges[edge_key(u, v)] = rng.randint(2, max(2, k))
    for u, v in itertools.combinations(others, 2):
        if rng.random() < 0.25:
            edges[edge_key(u, v)] = rng.randint(2, max(2, k))
    return WeightedGraph(n, edges)


def planted_constant_cycle(rng: random.Random, n: int, k: int) -> WeightedGraph:
    """A constant heavy cycle (sometimes completed by chords) hanging off a light edge."""
    order = list(range(n))
    rng.shuffle(order)
    m = rng.randint(3, max(3, n - 1))
    cyc = order[:m]
    heavy = k if k >= 2 else 1
    edges = {edge_key(cyc[i], cyc[(i + 1) % m]): heavy for i in range(m)}
    if rng.random() < 0.5:
        for u, v in itertools.combinations(cyc, 2):
            edges.setdefault(edge_key(u, v), heavy)
    attach = cyc[0]
    for v in order[m:]:
        w = 1 if rng.random() < 0.5 else rng.randint(1, max(1, k))
        edges[edge_key(attach, v)] = w
        if rng.random() < 0.4:
            edges.setdefault(edge_key(rng.choice(cyc), v), rng.randint(1, max(1, k)))
        attach = v if rng.random() < 0.5 else attach
    return WeightedGraph(n, edges)


STRUCTURED: dict[str, Generator] = {
    "hub": planted_hub,
    "book": planted_book,
    "constant-cycle": planted_constant_cycle,
}


def random_connected_graph(rng: random.Random, n: int, k: int, structured: float = 0.5) -> WeightedGraph:
    """Mixture: with probability ``structured`` a planted family, else Erdős–Rényi."""
    if n >= 3 and rng.random() < structured:
        name = rng.choice(sorted(STRUCTURED))
        g = STRUCTURED[name](rng, n, k)
        if is_connected(g, g.all_vertices):
            return g
    return erdos_renyi_connected(rng, n, k)


def connected_edge_sets(n: int) -> Iterator[list[Edge]]:
    """Every connected labeled simple graph on ``n`` vertices, as an edge list."""
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
        if n == 1 or is_connected(WeightedGraph(n, {e: 1 for e in edges}), (1 << n) - 1):
            yield edges


def all_weightings(edges: list[Edge], weights) -> Iterator[dict[Edge, int]]:
    for ws in itertools.product(weights, repeat=len(edges)):
        yield dict(zip(edges, ws))


def dense_two_weight_matrix(n: int, seed: int, density: float = 0.9) -> np.ndarray:
    """Symmetric matrix of a dense random graph with weights in {1, 2}.

    Vertex 0 is joined to everything by light edges and every other pair is
    heavy with probability ``density``. The light star passes all row-scan
    checks, so the recognizer always runs the full block decomposition of
    the heavy part rather than stopping early.
    """
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < density, 1)
    m = np.where(upper, 2, 0).astype(np.int64)
    m[0, 1:] = 1
    return m + m.T


def dense_two_weight_graph(n: int, seed: int, density: float = 0.9) -> WeightedGraph:
    return WeightedGraph.from_matrix(dense_two_weight_matrix(n, seed, density))
