"""Polynomial decision of whether convexity survives P_min restriction.

Everything here works on the adjacency matrix with whole-row numpy scans, so a
decision costs O(n^2) and never enumerates cycles or coalitions.

Vertex numbers inside witnesses are 0-based; :meth:`Verdict.to_json` shifts
them to the 1-based convention of the file formats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .graph import (
    WeightedGraph,
    biconnected_decomposition,
    edge_key,
    induced_subgraph,
    separating_vertices,
    shortest_path,
)

INHERITS = "Inherits"
FAILS = "Fails"
OUTSIDE = "OutsideCharacterization"

Status = Literal["Inherits", "Fails", "OutsideCharacterization"]
CycleMode = Literal["separating", "articulation"]

# witness keys whose payload is made of vertex numbers
_VERTEX_KEYS = {"edge", "edges", "vertices", "cycle", "cycles", "hub", "vertex", "component", "components", "block"}


class PreconditionViolated(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    status: Status
    reason: str
    theorem: str
    witness: dict | None = None
    note: str | None = None

    def __post_init__(self):
        if self.status == FAILS and self.witness is None:
            raise ValueError("a failing verdict needs a witness")

    @property
    def inherits(self) -> bool:
        return self.status == INHERITS

    def to_json(self, one_based: bool = True) -> dict:
        out: dict = {"schema": 1, "status": self.status, "reason": self.reason, "theorem": self.theorem}
        if self.witness is not None:
            shift = 1 if one_based else 0
            out["witness"] = {k: _shift(v, shift) if k in _VERTEX_KEYS else v for k, v in self.witness.items()}
        if self.note:
            out["note"] = self.note
        return out


def _shift(obj, s: int):
    if isinstance(obj, (int, np.integer)):
        return int(obj) + s
    if isinstance(obj, dict):
        return {k: _shift(v, s) for k, v in obj.items()}
    return [_shift(x, s) for x in obj]


def _relabel_witness(witness: dict | None, labels: tuple[int, ...]) -> dict | None:
    def walk(obj):
        if isinstance(obj, (int, np.integer)):
            return labels[int(obj)]
        if isinstance(obj, dict):
            return {k: walk(v) for k, v in obj.items()}
        return [walk(x) for x in obj]

    if witness is None:
        return None
    return {k: walk(v) if k in _VERTEX_KEYS else v for k, v in witness.items()}


# --------------------------------------------------------------------------
# matrix helpers


@dataclass(frozen=True, eq=False)
class _Spectrum:
    sigma: tuple[int, ...]
    counts: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.sigma)


def _spectrum(w: np.ndarray) -> _Spectrum:
    vals, counts = np.unique(w[w > 0], return_counts=True)
    # every edge appears twice in the symmetric matrix
    return _Spectrum(tuple(int(v) for v in vals), tuple(int(c) // 2 for c in counts))


def _first_edge(mask: np.ndarray) -> tuple[int, int]:
    i, j = np.unravel_index(int(np.argmax(mask)), mask.shape)
    return edge_key(int(i), int(j))


def _component_of(adj: np.ndarray, root: int) -> np.ndarray:
    seen = np.zeros(adj.shape[0], dtype=bool)
    seen[root] = True
    frontier = seen.copy()
    while frontier.any():
        reach = adj[frontier].any(axis=0) & ~seen
        seen |= reach
        frontier = reach
    return seen


def _is_connected(adj: np.ndarray) -> bool:
    return adj.shape[0] > 0 and bool(_component_of(adj, 0).all())


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise PreconditionViolated(message)


# --------------------------------------------------------------------------
# structural tests


def cycle_complete(g1: WeightedGraph) -> frozenset[int] | None:
    """None when every biconnected component is complete, else the first one that is not.

    A graph is cycle-complete (every cycle spans a clique) exactly when each of
    its blocks is complete; block completeness is an edge count, so the test is
    O(n^2) on top of the decomposition.
    """
    dec = biconnected_decomposition(g1)
    for i, block in enumerate(dec.blocks):
        if not dec.is_complete_block(i):
            return block
    return None


@dataclass(frozen=True)
class ChordlessCycles:
    """How many chordless cycles pass through a given edge: none, exactly one, or more.

    ``cycle`` is the one found by breadth-first search; ``other`` is a second
    chordless cycle when ``kind == "multiple"``. Cycles are vertex lists that
    start with the two endpoints of the edge.
    """

    kind: Literal["none", "unique", "multiple"]
    cycle: tuple[int, ...] | None = None
    other: tuple[int, ...] | None = None


def unique_chordless_cycle_through_e1(
    g: WeightedGraph, e1: tuple[int, int], mode: CycleMode = "separating"
) -> ChordlessCycles:
    """Existence and uniqueness of a chordless cycle through ``e1``.

    A shortest path ``P`` from one endpoint to the other in ``G - e1`` closes a
    chordless cycle. Another chordless cycle exists iff some internal vertex
    ``x`` of ``P`` fails to separate the endpoints in ``G - e1``: the shortest
    endpoint path avoiding ``x`` is then induced and closes a second one.

    ``mode="articulation"`` replaces "separates the endpoints" by the weaker
    "is an articulation point of ``G - e1``". That test is blind to cut
    vertices that only split off a pendant piece (two internally disjoint
    endpoint paths plus a leaf on one of them pass it), so it is kept for
    comparison only.
    """
    a, b = e1
    _require(g.has_edge(a, b), f"{e1} is not an edge")
    g1 = g.without_edges([e1])
    path = shortest_path(g1, a, b)
    if path is None:
        return ChordlessCycles("none")
    cycle = tuple(path)
    internal = path[1:-1]
    if mode == "articulation":
        cuts = biconnected_decomposition(g1).articulation_points
        bad = [x for x in internal if x not in cuts]
    elif mode == "separating":
        seps = set(separating_vertices(g1, a, b) or ())
        bad = [x for x in internal if x not in seps]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if not bad:
        return ChordlessCycles("unique", cycle)
    m = g1.matrix.copy()
    m[bad[0], :] = 0
    m[:, bad[0]] = 0
    other = shortest_path(WeightedGraph.from_matrix(m), a, b)
    return ChordlessCycles("multiple", cycle, tuple(other) if other else None)


# --------------------------------------------------------------------------
# the three connected cases

_MULTI = "two-weights-shared-minimum"
_SINGLE = "two-weights-unique-minimum"
_THREE = "three-weights"


def _fails(reason: str, theorem: str, **witness) -> Verdict:
    return Verdict(FAILS, reason, theorem, witness)


def check_thm_two_weights_multi(g: WeightedGraph) -> Verdict:
    """Two weights, at least two lightest edges.

    Inherits iff the lightest edges form a star around a hub that carries no
    heavy edge, every heavy edge has an endpoint joined to the hub by a light
    edge, and ``G`` without the light edges is cycle-complete.
    """
    w = g.matrix
    adj = w != 0
    _require(_is_connected(adj), "graph must be connected")
    spectrum = _spectrum(w)
    _require(spectrum.k == 2 and spectrum.counts[0] >= 2, "needs exactly two weights and at least two lightest edges")
    light = w == spectrum.sigma[0]
    heavy = w == spectrum.sigma[1]

    rows = np.flatnonzero(light.sum(axis=1) >= 2)
    if rows.size == 0:
        # a matching: take two light edges without a common vertex
        us, vs = np.nonzero(np.triu(light))
        return _fails(
            "MIN_EDGES_NO_COMMON_VERTEX", _MULTI, edges=[[int(us[0]), int(vs[0])], [int(us[1]), int(vs[1])]]
        )
    hub = int(rows[0])
    elsewhere = light.copy()
    elsewhere[hub, :] = False
    elsewhere[:, hub] = False
    if elsewhere.any():
        return _fails("MIN_EDGES_NO_COMMON_VERTEX", _MULTI, hub=hub, edge=list(_first_edge(elsewhere)))
    if heavy[hub].any():
        return _fails("HUB_HAS_HEAVY_EDGE", _MULTI, hub=hub, edge=[hub, int(np.argmax(heavy[hub]))])
    linked = light[hub]
    unlinked = heavy & ~linked[:, None] & ~linked[None, :]
    if unlinked.any():
        return _fails("HEAVY_EDGE_NOT_LINKED_TO_HUB", _MULTI, hub=hub, edge=list(_first_edge(unlinked)))
    block = cycle_complete(WeightedGraph.from_matrix(np.where(light, 0, w)))
    if block is not None:
        return _fails("NOT_CYCLE_COMPLETE", _MULTI, block=sorted(block))
    return Verdict(INHERITS, "LIGHT_STAR_AND_CYCLE_COMPLETE", _MULTI, {"hub": hub})


def _lightest_edge(w: np.ndarray, sigma1: int) -> tuple[int, int]:
    return _first_edge(w == sigma1)


def _chordless_failure(res: ChordlessCycles, theorem: str) -> Verdict:
    cycles = [list(res.cycle)] + ([list(res.other)] if res.other else [])
    return _fails("TWO_CHORDLESS_CYCLES_THROUGH_MIN_EDGE", theorem, cycles=cycles)


def check_thm_two_weights_single(g: WeightedGraph, mode: CycleMode = "separating", self_linked: bool = True) -> Verdict:
    """Two weights, a unique lightest edge ``e1 = {a, b}``.

    Inherits iff at most one chordless cycle runs through ``e1`` and every
    block of ``G - e1`` on three or more vertices is complete or has all its
    vertices adjacent to ``a``, or all adjacent to ``b``. The endpoint itself
    counts as linked to itself, so a block containing ``a`` qualifies when all
    its other vertices are neighbours of ``a``.
    """
    w = g.matrix
    adj = w != 0
    _require(_is_connected(adj), "graph must be connected")
    spectrum = _spectrum(w)
    _require(spectrum.k == 2 and spectrum.counts[0] == 1, "needs exactly two weights and one lightest edge")
    a, b = _lightest_edge(w, spectrum.sigma[0])

    res = unique_chordless_cycle_through_e1(g, (a, b), mode)
    if res.kind == "multiple":
        return _chordless_failure(res, _SINGLE)

    near = adj.copy()
    if self_linked:
        np.fill_diagonal(near, True)
    g1 = g.without_edges([(a, b)])
    dec = biconnected_decomposition(g1)
    for i, block in enumerate(dec.blocks):
        if len(block) < 3:
            continue
        vs = np.fromiter(block, dtype=np.int64)
        if near[a, vs].all() or near[b, vs].all() or dec.is_complete_block(i):
            continue
        return _fails("BLOCK_NEITHER_COMPLETE_NOR_LINKED", _SINGLE, edge=[a, b], block=sorted(block))
    witness = {"edge": [a, b]}
    if res.cycle:
        witness["cycle"] = list(res.cycle)
    return Verdict(INHERITS, "UNIQUE_MIN_EDGE_CONDITIONS_HOLD", _SINGLE, witness)


def check_thm_three_weights(g: WeightedGraph, mode: CycleMode = "separating") -> Verdict:
    """Three weights, a unique lightest edge ``e1``.

    Inherits iff all middle edges hang off one endpoint ``h`` of ``e1``, no
    heavy edge touches ``h``, every heavy edge has an endpoint that is the
    other end of ``e1`` or a middle-edge neighbour of ``h``, at most one
    chordless cycle passes through ``e1``, and ``G - e1`` is cycle-complete.
    """
    w = g.matrix
    adj = w != 0
    _require(_is_connected(adj), "graph must be connected")
    spectrum = _spectrum(w)
    _require(spectrum.k == 3 and spectrum.counts[0] == 1, "needs exactly three weights and one lightest edge")
    a, b = _lightest_edge(w, spectrum.sigma[0])
    middle = w == spectrum.sigma[1]
    heavy = w == spectrum.sigma[2]

    # the hub is whichever endpoint of e1 carries a middle edge
    ends = [x for x in (a, b) if middle[x].any()]
    if not ends:
        return _fails("MIDDLE_EDGE_AWAY_FROM_MIN_EDGE", _THREE, edge=list(_first_edge(middle)))
    hub = ends[0]
    elsewhere = middle.copy()
    elsewhere[hub, :] = False
    elsewhere[:, hub] = False
    if elsewhere.any():
        return _fails("MIDDLE_EDGES_AT_BOTH_ENDS", _THREE, hub=hub, edge=list(_first_edge(elsewhere)))
    if heavy[hub].any():
        return _fails("HEAVY_EDGE_AT_HUB", _THREE, hub=hub, edge=[hub, int(np.argmax(heavy[hub]))])
    linked = middle[hub].copy()
    linked[a] = linked[b] = True
    unlinked = heavy & ~linked[:, None] & ~linked[None, :]
    if unlinked.any():
        return _fails("HEAVY_EDGE_NOT_LINKED_TO_HUB", _THREE, hub=hub, edge=list(_first_edge(unlinked)))

    res = unique_chordless_cycle_through_e1(g, (a, b), mode)
    if res.kind == "multiple":
        return _chordless_failure(res, _THREE)
    # with the incidence conditions above no chordless cycle through e1 can be longer than 4
    assert res.cycle is None or len(res.cycle) in (3, 4), res.cycle
    block = cycle_complete(g.without_edges([(a, b)]))
    if block is not None:
        return _fails("NOT_CYCLE_COMPLETE", _THREE, block=sorted(block))
    return Verdict(INHERITS, "THREE_WEIGHT_CONDITIONS_HOLD", _THREE, {"edge": [a, b], "hub": hub})


# --------------------------------------------------------------------------
# disconnected graphs

_DISCONNECTED = "disconnected-necessity"


def _nontrivial_components(adj: np.ndarray) -> list[np.ndarray]:
    """Vertex index arrays of the components with at least one edge, by smallest vertex."""
    todo = adj.any(axis=1)
    out = []
    while todo.any():
        comp = _component_of(adj, int(np.argmax(todo)))
        out.append(np.flatnonzero(comp))
        todo &= ~comp
    return out


def check_disconnected_necessity(g: WeightedGraph) -> Verdict | None:
    """Necessary conditions across components; None when they hold.

    A component with three or more weights, or with two weights and several
    lightest edges, tolerates only isolated vertices beside it. A component
    with two weights and one lightest edge tolerates other components only
    if they are constant at its heavier weight.
    """
    w = g.matrix
    comps = _nontrivial_components(w != 0)
    _require(len(comps) >= 2, "needs at least two components with edges")
    spectra = [_spectrum(w[np.ix_(c, c)]) for c in comps]
    for i, (comp, spectrum) in enumerate(zip(comps, spectra)):
        j = 1 if i == 0 else 0
        if spectrum.k >= 3:
            return _fails(
                "OTHER_COMPONENT_BESIDE_THREE_WEIGHTS",
                _DISCONNECTED,
                components=[comp.tolist(), comps[j].tolist()],
            )
        if spectrum.k == 2 and spectrum.counts[0] >= 2:
            return _fails(
                "OTHER_COMPONENT_BESIDE_SHARED_MINIMUM",
                _DISCONNECTED,
                components=[comp.tolist(), comps[j].tolist()],
            )
        if spectrum.k == 2:
            for j, other in enumerate(spectra):
                if j != i and other.sigma != (spectrum.sigma[1],):
                    return _fails(
                        "OTHER_COMPONENT_NOT_CONSTANT_AT_HEAVY_WEIGHT",
                        _DISCONNECTED,
                        components=[comp.tolist(), comps[j].tolist()],
                        weights=list(other.sigma),
                    )
    return None


# --------------------------------------------------------------------------


def _decide_connected(g: WeightedGraph, spectrum: _Spectrum, mode: CycleMode) -> Verdict:
    if spectrum.k == 2 and spectrum.counts[0] >= 2:
        return check_thm_two_weights_multi(g)
    if spectrum.k == 2:
        return check_thm_two_weights_single(g, mode)
    return check_thm_three_weights(g, mode)


def decide(g: WeightedGraph, mode: CycleMode = "separating") -> Verdict:
    """Is every convex game's P_min-restriction on ``g`` convex?

    ``Inherits`` and ``Fails`` are exact answers; ``OutsideCharacterization``
    is returned only for graphs with several components that have edges and
    that pass every known necessary condition.
    """
    w = g.matrix
    spectrum = _spectrum(w)
    if spectrum.k <= 1:
        return Verdict(
            INHERITS,
            "AT_MOST_ONE_WEIGHT",
            "constant-weights",
            note="P_min splits every coalition into singletons, so each restricted unanimity game is additive or zero",
        )
    if spectrum.k > 3:
        return _fails("K_GT_3", "weight-count", weights=list(spectrum.sigma))
    if spectrum.k == 3 and spectrum.counts[0] > 1:
        return _fails("K3_SEVERAL_MIN_EDGES", "weight-count", weights=list(spectrum.sigma), counts=list(spectrum.counts))

    adj = w != 0
    comps = _nontrivial_components(adj)
    if len(comps) == 1 and comps[0].size == g.n:
        return _decide_connected(g, spectrum, mode)
    if len(comps) == 1:
        sub, labels = induced_subgraph(g, comps[0].tolist())
        inner = _decide_connected(sub, spectrum, mode)
        return Verdict(
            inner.status,
            inner.reason,
            inner.theorem,
            _relabel_witness(inner.witness, labels),
            note=f"decided on the only component with edges after removing {g.n - len(labels)} isolated vertices",
        )

    failure = check_disconnected_necessity(g)
    if failure is not None:
        return failure
    # convexity on G restricts to convexity on each component's coalitions
    for comp in comps:
        sub, labels = induced_subgraph(g, comp.tolist())
        inner = decide(sub, mode)
        if inner.status == FAILS:
            witness = {"component": comp.tolist(), "inner_reason": inner.reason}
            witness.update(_relabel_witness(inner.witness, labels) or {})
            return Verdict(FAILS, "COMPONENT_FAILS", inner.theorem, witness)
    return Verdict(
        OUTSIDE,
        "MULTI_COMPONENT_NECESSARY_CONDITIONS_HOLD",
        _DISCONNECTED,
        {"components": [c.tolist() for c in comps]},
        note="several components with edges pass the necessary conditions; no sufficient condition is known",
    )
