"""Enumerative checks of the structural conditions behind F-convexity inheritance.

Star, Path, Cycle, Pan and Adjacent-Cycles together characterize graphs on
which P_min restriction keeps every restricted unanimity game F-convex (F the
connected vertex sets). The refined pan and constant-cycle checks are further
necessary conditions for plain convexity.

These quantify over all simple cycles and elementary paths, so they are
desk-scale tools: enumerations beyond ``cap`` items are reported as
``skipped`` rather than truncated. Witness vertices are 0-based internally
and shifted to 1-based by ``to_json``.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Literal

from .graph import (
    DEFAULT_CAP,
    CapExceeded,
    Cycle,
    WeightedGraph,
    component_masks,
    edge_key,
    enumerate_elementary_paths,
    enumerate_simple_cycles,
    is_complete,
    members,
    shortest_path,
)
from .partition import weight_spectrum

Status = Literal["pass", "fail", "skipped"]
Adjacency = Literal["common-vertex", "pairwise"]

F_CONDITIONS = ("star", "path", "cycle", "pan", "adjacent-cycles")

_VERTEX_KEYS = {"center", "edges", "path", "cycle", "other_cycle", "vertex", "edge", "common_edges", "e2", "e2_prime",
                "vertices", "chord"}


@dataclass(frozen=True)
class ConditionResult:
    name: str
    status: Status
    witness: dict | None = None
    detail: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self, one_based: bool = True) -> dict:
        out: dict = {"status": self.status}
        if self.witness is not None:
            s = 1 if one_based else 0
            out["witness"] = {k: _shift(v, s) if k in _VERTEX_KEYS else v for k, v in self.witness.items()}
        if self.detail:
            out["detail"] = self.detail
        return out


def _shift(obj, s: int):
    if isinstance(obj, int):
        return obj + s
    return [_shift(x, s) for x in obj]


@dataclass(frozen=True)
class ConditionReport:
    results: tuple[ConditionResult, ...]

    @property
    def status(self) -> Status:
        if any(r.status == "fail" for r in self.results):
            return "fail"
        if any(r.status == "skipped" for r in self.results):
            return "skipped"
        return "pass"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def first_failure(self) -> ConditionResult | None:
        return next((r for r in self.results if r.status == "fail"), None)

    def __getitem__(self, name: str) -> ConditionResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_json(self, one_based: bool = True) -> dict:
        return {r.name: r.to_json(one_based) for r in self.results}


def _ok(name: str) -> ConditionResult:
    return ConditionResult(name, "pass")


def _fail(name: str, **witness) -> ConditionResult:
    return ConditionResult(name, "fail", witness)


def _skipped(name: str, exc: CapExceeded) -> ConditionResult:
    return ConditionResult(name, "skipped", detail=str(exc))


# --------------------------------------------------------------------------
# Star


def check_star(g: WeightedGraph) -> ConditionResult:
    """Among any three edges at a vertex, the two heaviest weigh the same.

    With incident weights sorted ``w[0] <= w[1] <= ...`` this is ``w[1] == w[-1]``.
    """
    for v in range(g.n):
        inc = sorted((g.weight(v, u), u) for u in g.neighbors(v))
        if len(inc) >= 3 and inc[1][0] != inc[-1][0]:
            trio = [inc[0], inc[1], inc[-1]]
            return _fail(
                "star",
                center=v,
                edges=[[v, u] for _, u in trio],
                weights=[w for w, _ in trio],
            )
    return _ok("star")


# --------------------------------------------------------------------------
# Path


def path_peak(weights: Sequence[int]) -> tuple[int, int, int] | None:
    """Indices ``i < j < k`` with ``w[j] > max(w[i], w[k])``, or None.

    It suffices to compare each ``w[j]`` with the lightest edge on either side.
    """
    m = len(weights)
    left = [0] * m
    for j in range(1, m):
        left[j] = j - 1 if j == 1 or weights[j - 1] < weights[left[j - 1]] else left[j - 1]
    right = m - 1
    for j in range(m - 2, 0, -1):
        if weights[j + 1] < weights[right]:
            right = j + 1
        if weights[j] > weights[left[j]] and weights[j] > weights[right]:
            return left[j], j, right
    return None


def _path_weights(g: WeightedGraph, p: Sequence[int]) -> list[int]:
    return [g.weight(p[t], p[t + 1]) for t in range(len(p) - 1)]


def check_path(g: WeightedGraph, cap: int = DEFAULT_CAP, paths: Sequence[Sequence[int]] | None = None) -> ConditionResult:
    """No elementary path has an edge strictly heavier than one before it and one after it."""
    try:
        paths = enumerate_elementary_paths(g, cap) if paths is None else paths
    except CapExceeded as exc:
        return _skipped("path", exc)
    for p in paths:
        if len(p) < 4:
            continue
        ws = _path_weights(g, p)
        peak = path_peak(ws)
        if peak is not None:
            return _fail("path", path=list(p), weights=ws, ijk=[t + 1 for t in peak])
    return _ok("path")


# --------------------------------------------------------------------------
# Cycle


def cycle_labelings(c: Cycle) -> list[int]:
    """Positions ``x`` that can play vertex 2 in the cycle labeling.

    Vertex 2 joins edges ``e1, e2`` with ``w1 <= w2``; every other cycle edge
    and every chord not at vertex 2 weighs the cycle maximum, and chords at
    vertex 2 weigh ``w2``. Fixing the vertex fixes the labeling up to the
    order of ``e1, e2``, which is forced by ``w1 <= w2``.
    """
    m = c.m
    top = c.m_hat
    ok = []
    for x in range(m):
        vx = c.vertices[x]
        before, after = c.weights[x - 1], c.weights[x]
        w2 = max(before, after)
        if any(c.weights[t] != top for t in range(m) if t not in (x, (x - 1) % m)):
            continue
        if all((cw == w2) if vx in ch else (cw == top) for ch, cw in zip(c.chords, c.chord_weights)):
            ok.append(x)
    return ok


def check_cycle(g: WeightedGraph, cap: int = DEFAULT_CAP, cycles: Sequence[Cycle] | None = None) -> ConditionResult:
    try:
        cycles = enumerate_simple_cycles(g, cap) if cycles is None else cycles
    except CapExceeded as exc:
        return _skipped("cycle", exc)
    for c in cycles:
        if not cycle_labelings(c):
            return _fail("cycle", cycle=list(c.vertices), weights=list(c.weights), m_hat=c.m_hat)
    return _ok("cycle")


# --------------------------------------------------------------------------
# Pan


@dataclass(frozen=True)
class PanReach:
    """Lightest edge reachable from cycle vertex ``x`` without touching the rest of the cycle."""

    x: int
    edge: tuple[int, int]
    weight: int
    path: tuple[int, ...]


def _pan_reaches(g: WeightedGraph, c: Cycle) -> list[PanReach]:
    """For each cycle vertex, its lightest edge in ``G - (V(C) - x)``.

    Any edge of the component of ``x`` there ends some elementary path from
    ``x`` meeting the cycle only at ``x``, so the lightest one is the
    worst case for the pan condition. The reported path ends with that edge.
    """
    out = []
    nbr = g.nbr_masks
    for x in c.vertices:
        allowed = (g.all_vertices & ~c.mask) | (1 << x)
        comp = next(m for m in component_masks(nbr, allowed) if m >> x & 1)
        best = None
        for u in members(comp):
            for v in members(nbr[u] & comp):
                if u < v:
                    w = g.weight(u, v)
                    if best is None or w < best[0]:
                        best = (w, (u, v))
        if best is None:
            continue
        w, (u, v) = best
        sub = g.matrix.copy()
        outside = [t for t in range(g.n) if not comp >> t & 1]
        sub[outside, :] = 0
        sub[:, outside] = 0
        hg = WeightedGraph.from_matrix(sub)
        to_u, to_v = shortest_path(hg, x, u), shortest_path(hg, x, v)
        path = to_u + [v] if v not in to_u else to_v + [u]
        out.append(PanReach(x, (u, v), w, tuple(path)))
    return out


def pan_violation(c: Cycle, reach: PanReach) -> str | None:
    """Which requirement fails for this cycle and lightest reachable edge, or None."""
    m, vs, ws = c.m, c.vertices, c.weights
    low = min(ws)
    if reach.weight > low:
        return None
    top = c.m_hat
    if all(w == top for w in ws):
        return None
    xi = vs.index(reach.x)
    before, after = ws[xi - 1], ws[xi]
    rest = [ws[t] for t in range(m) if t not in (xi, (xi - 1) % m)]
    if not (before == after < top and all(w == top for w in rest)):
        return "neither constant nor w1 = w2 < w3 = ... = M with the path at vertex 2"
    if reach.weight < before and m > 3:
        # in a triangle {1, 3} is the closing edge, which already weighs M
        chord = edge_key(vs[xi - 1], vs[(xi + 1) % m])
        if chord not in c.chords or c.chord_weights[c.chords.index(chord)] != top:
            return "lighter path edge but {1, 3} is not a maximum-weight chord"
    return None


def check_pan(g: WeightedGraph, cap: int = DEFAULT_CAP, cycles: Sequence[Cycle] | None = None) -> ConditionResult:
    try:
        cycles = enumerate_simple_cycles(g, cap) if cycles is None else cycles
    except CapExceeded as exc:
        return _skipped("pan", exc)
    for c in cycles:
        if c.is_constant and c.m_hat == c.weights[0]:
            continue
        for reach in _pan_reaches(g, c):
            why = pan_violation(c, reach)
            if why:
                return _fail(
                    "pan",
                    cycle=list(c.vertices),
                    weights=list(c.weights),
                    vertex=reach.x,
                    path=list(reach.path),
                    edge=list(reach.edge),
                    edge_weight=reach.weight,
                    reason=why,
                )
    return _ok("pan")


# --------------------------------------------------------------------------
# Adjacent cycles


def _edges_share_vertex(*edges: tuple[int, int]) -> bool:
    common = set(edges[0])
    for e in edges[1:]:
        common &= set(e)
    return bool(common)


def _pairwise_adjacent(*edges: tuple[int, int]) -> bool:
    return all(set(e) & set(f) for e, f in itertools.combinations(edges, 2))


def adjacent_pair_violation(
    c: Cycle,
    d: Cycle,
    adjacency: Adjacency = "common-vertex",
) -> dict | None:
    """Check one ordered pair of cycles; None when fine or when the hypotheses do not apply."""
    ce, de = set(c.edges), set(d.edges)
    common = ce & de
    if not common:
        return None
    # (a) private vertices on both sides
    if not (c.mask & ~d.mask and d.mask & ~c.mask):
        return None
    c_top, d_top = c.m_hat, d.m_hat
    c_chords = dict(zip(c.chords, c.chord_weights))
    d_chords = dict(zip(d.chords, d.chord_weights))
    # (b) at most one non-maximum chord on C; (c) no maximum chord on either; (d) no common chord
    if sum(1 for w in c_chords.values() if w != c_top) > 1:
        return None
    if any(w == c_top for w in c_chords.values()) or any(w == d_top for w in d_chords.values()):
        return None
    if set(c_chords) & set(d_chords):
        return None

    wc, wd = dict(zip(c.edges, c.weights)), dict(zip(d.edges, d.weights))
    shared_light = sorted(e for e in common if wc[e] != c_top and wd[e] != d_top)
    if len(shared_light) >= 2:
        return {"common_edges": [list(e) for e in shared_light], "reason": "two common non-maximum edges"}
    if not shared_light:
        return None
    e1 = shared_light[0]
    w1 = wc[e1]
    side_c = [e for e in ce - de if wc[e] != c_top]
    side_d = [e for e in de - ce if wd[e] != d_top]
    joined = _edges_share_vertex if adjacency == "common-vertex" else _pairwise_adjacent
    long_both = c.m >= 4 and d.m >= 4
    for e2 in side_c:
        for e2p in side_d:
            if not joined(e1, e2, e2p):
                continue
            a, b = wc[e2], wd[e2p]
            if long_both and w1 == a == b:
                return None
            if not long_both and ((w1 == a >= b) or (w1 == b >= a)):
                return None
    return {"common_edges": [list(e1)], "reason": "unique common non-maximum edge without matching e2, e2'"}


def check_adjacent_cycles(
    g: WeightedGraph,
    cap: int = DEFAULT_CAP,
    cycles: Sequence[Cycle] | None = None,
    adjacency: Adjacency = "common-vertex",
) -> ConditionResult:
    try:
        cycles = enumerate_simple_cycles(g, cap) if cycles is None else cycles
    except CapExceeded as exc:
        return _skipped("adjacent-cycles", exc)
    by_edge: dict[tuple[int, int], list[int]] = {}
    for idx, c in enumerate(cycles):
        for e in c.edges:
            by_edge.setdefault(e, []).append(idx)
    for idx, c in enumerate(cycles):
        partners = sorted({j for e in c.edges for j in by_edge[e] if j != idx})
        for j in partners:
            found = adjacent_pair_violation(c, cycles[j], adjacency)
            if found is not None:
                return _fail(
                    "adjacent-cycles",
                    cycle=list(c.vertices),
                    other_cycle=list(cycles[j].vertices),
                    **found,
                )
    return _ok("adjacent-cycles")


# --------------------------------------------------------------------------


def check_f_conditions(
    g: WeightedGraph,
    cap: int = DEFAULT_CAP,
    adjacency: Adjacency = "common-vertex",
    stop_at_first: bool = False,
    cycles: Sequence[Cycle] | None = None,
    paths: Sequence[Sequence[int]] | None = None,
) -> ConditionReport:
    """All five conditions; with ``stop_at_first`` later checks are skipped after a failure."""
    results: list[ConditionResult] = []
    try:
        cycles = enumerate_simple_cycles(g, cap) if cycles is None else cycles
    except CapExceeded as exc:
        cycles = exc
    checks = [
        lambda: check_star(g),
        lambda: check_path(g, cap, paths),
        lambda: _skipped("cycle", cycles) if isinstance(cycles, CapExceeded) else check_cycle(g, cap, cycles),
        lambda: _skipped("pan", cycles) if isinstance(cycles, CapExceeded) else check_pan(g, cap, cycles),
        lambda: (
            _skipped("adjacent-cycles", cycles)
            if isinstance(cycles, CapExceeded)
            else check_adjacent_cycles(g, cap, cycles, adjacency)
        ),
    ]
    for name, run in zip(F_CONDITIONS, checks):
        if stop_at_first and any(r.status == "fail" for r in results):
            results.append(ConditionResult(name, "skipped", detail="earlier condition failed"))
            continue
        results.append(run())
    return ConditionReport(tuple(results))


# --------------------------------------------------------------------------
# further necessary conditions for convexity


def check_refined_pan(g: WeightedGraph, cap: int = DEFAULT_CAP, cycles: Sequence[Cycle] | None = None) -> ConditionResult:
    """Non-constant cycles and strictly lighter edges in their component.

    If an edge ``e`` lighter than every edge of a non-constant cycle ``C`` is
    connected to ``C``, then ``C`` is complete, ``w(e) < w1 = w2 < w3 = ... =
    M``, and ``e`` hangs off vertex 2 without being a chord.
    """
    try:
        cycles = enumerate_simple_cycles(g, cap) if cycles is None else cycles
    except CapExceeded as exc:
        return _skipped("refined-pan", exc)
    nbr = g.nbr_masks
    for c in cycles:
        if c.is_constant:
            continue
        low = min(c.weights)
        comp = next(m for m in component_masks(nbr, g.all_vertices) if m & c.mask)
        lighter = [e for e, w in g.edges.items() if w < low and comp >> e[0] & 1]
        if not lighter:
            continue
        witness = dict(cycle=list(c.vertices), weights=list(c.weights), edge=list(lighter[0]))
        if not is_complete(g, c.mask):
            return _fail("refined-pan", reason="cycle is not complete", **witness)
        spots = [c.vertices[x] for x in cycle_labelings(c) if c.weights[x - 1] == c.weights[x] < c.m_hat]
        if not spots:
            return _fail("refined-pan", reason="weights are not w1 = w2 < w3 = ... = M", **witness)
        for e in lighter:
            if e in c.chords:
                return _fail("refined-pan", reason="lighter edge is a chord", **{**witness, "edge": list(e)})
            if not any(v in e for v in spots):
                return _fail("refined-pan", reason="lighter edge not at vertex 2", **{**witness, "edge": list(e)})
    return _ok("refined-pan")


def _cycle_claim_failure(claim: int, reason: str, c: Cycle, **extra) -> ConditionResult:
    return ConditionResult(
        f"constant-cycle-claim-{claim}", "fail", {"cycle": list(c.vertices), "weights": list(c.weights), "reason": reason, **extra}
    )


def check_constant_cycle_claims(
    g: WeightedGraph, cap: int = DEFAULT_CAP, cycles: Sequence[Cycle] | None = None
) -> ConditionReport:
    """Necessary conditions on constant cycles, chosen by the weight spectrum.

    Applicable only with two or three distinct weights. Claims, with ``e1 = {a, b}``
    the unique lightest edge where relevant:

    1. several lightest edges: every cycle of constant heavy weight is complete;
    2. one lightest edge and a constant middle-weight cycle: only two weights
       exist, and such a cycle sharing no vertex with ``e1`` and joined to it by
       no edge is complete;
    3. one lightest edge: a constant heavier cycle through ``a`` has ``a``
       adjacent to all its vertices (likewise for ``b``);
    4. one lightest edge: a constant heavier cycle avoiding ``a`` and ``b`` but
       joined to ``b`` by a middle-weight edge ``{b, k}`` has all its vertices
       adjacent to ``a``, or all adjacent to ``b``, or is complete with ``k`` its
       only neighbour of ``b`` (likewise with ``a`` and ``b`` swapped);
    5. three weights with all middle edges at ``b``: every cycle avoiding ``e1``
       is complete and does not have ``e1`` as a chord.
    """
    spec = weight_spectrum(g)
    if spec.k not in (2, 3) or (spec.k == 3 and spec.counts()[0] > 1):
        return ConditionReport(())
    try:
        cycles = enumerate_simple_cycles(g, cap) if cycles is None else cycles
    except CapExceeded as exc:
        return ConditionReport(tuple(_skipped(f"constant-cycle-claim-{i}", exc) for i in range(1, 6)))
    sigma = spec.sigma
    heavier = set(sigma[1:])
    results: list[ConditionResult] = []

    def first(claim: int, found: ConditionResult | None) -> None:
        results.append(found or _ok(f"constant-cycle-claim-{claim}"))

    if spec.counts()[0] >= 2:
        found = next(
            (
                _cycle_claim_failure(1, "constant heavy cycle is not complete", c)
                for c in cycles
                if c.is_constant and c.weights[0] == sigma[1] and not is_complete(g, c.mask)
            ),
            None,
        )
        first(1, found)
        return ConditionReport(tuple(results))

    a, b = spec.classes[0][0]
    near = {v: g.nbr_masks[v] | (1 << v) for v in (a, b)}
    e1_mask = (1 << a) | (1 << b)

    # claim 2
    found = None
    for c in cycles:
        if not (c.is_constant and c.weights[0] == sigma[1]):
            continue
        if spec.k == 3:
            found = _cycle_claim_failure(2, "constant middle-weight cycle with three weights present", c)
            break
        touches = c.mask & e1_mask or c.mask & (near[a] | near[b])
        if not touches and not is_complete(g, c.mask):
            found = _cycle_claim_failure(2, "isolated constant cycle is not complete", c)
            break
    first(2, found)

    # claim 3
    found = None
    for c in cycles:
        if not (c.is_constant and c.weights[0] in heavier):
            continue
        for end in (a, b):
            if c.mask >> end & 1 and c.mask & ~near[end]:
                found = _cycle_claim_failure(3, "cycle vertex not adjacent to the e1 endpoint on it", c, vertex=end)
                break
        if found:
            break
    first(3, found)

    # claim 4
    found = None
    for c in cycles:
        if not (c.is_constant and c.weights[0] in heavier) or c.mask & e1_mask:
            continue
        full = c.mask
        for end, far in ((b, a), (a, b)):
            links = [k for k in members(full & g.nbr_masks[end]) if g.weight(end, k) == sigma[1]]
            for k in links:
                if full & ~g.nbr_masks[far] == 0 or full & ~g.nbr_masks[end] == 0:
                    continue
                if full & g.nbr_masks[end] == 1 << k and is_complete(g, full):
                    continue
                found = _cycle_claim_failure(4, "linked constant cycle matches none of the three shapes", c, vertex=end)
                break
            if found:
                break
        if found:
            break
    first(4, found)

    # claim 5
    if spec.k == 3:
        hub = b if all(b in e for e in spec.classes[1]) else a if all(a in e for e in spec.classes[1]) else None
        found = None
        if hub is not None:
            for c in cycles:
                if edge_key(a, b) in c.edges:
                    continue
                if not is_complete(g, c.mask):
                    found = _cycle_claim_failure(5, "cycle avoiding e1 is not complete", c)
                    break
                if edge_key(a, b) in c.chords:
                    found = _cycle_claim_failure(5, "e1 is a chord of a cycle avoiding it", c)
                    break
            first(5, found)
    return ConditionReport(tuple(results))
