import itertools
import json
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pmingames.generators import all_weightings, connected_edge_sets, random_connected_graph
from pmingames.graph import WeightedGraph, is_connected
from pmingames.oracle import inheritance_convexity_bruteforce
from pmingames.recognizer import (
    FAILS,
    INHERITS,
    OUTSIDE,
    PreconditionViolated,
    Verdict,
    check_disconnected_necessity,
    check_thm_three_weights,
    check_thm_two_weights_multi,
    check_thm_two_weights_single,
    cycle_complete,
    decide,
    unique_chordless_cycle_through_e1,
)

from conftest import (
    BOOK,
    LIGHT_STAR_GRAPH,
    PATH_12,
    PATH_132,
    PATH_FOUR_WEIGHTS,
    THREE_WEIGHT_STAR,
    TRIANGLE_123,
    UNIQUE_MIN_GRAPH,
    graph1,
)
from test_graph import graphs

# two triangles through the light edge {1, 2}, plus a leaf hanging off vertex 3
BOOK_WITH_LEAF = graph1(5, {(1, 2): 1, (1, 3): 2, (2, 3): 2, (1, 4): 2, (2, 4): 2, (3, 5): 2})


def test_verdict_requires_witness_for_fails():
    with pytest.raises(ValueError):
        Verdict(FAILS, "X", "y")
    v = Verdict(INHERITS, "X", "y")
    assert v.inherits and v.to_json()["schema"] == 1


def test_cycle_complete():
    tree = graph1(4, {(1, 2): 1, (2, 3): 1, (2, 4): 1})
    assert cycle_complete(tree) is None
    c4 = graph1(4, {(1, 2): 1, (2, 3): 1, (3, 4): 1, (1, 4): 1})
    assert cycle_complete(c4) == frozenset(range(4))
    k4_pendant = WeightedGraph(5, {**{e: 1 for e in itertools.combinations(range(4), 2)}, (3, 4): 1})
    assert cycle_complete(k4_pendant) is None


def test_chordless_cycles_through_edge():
    bridge = graph1(3, {(1, 2): 1, (2, 3): 2})
    assert unique_chordless_cycle_through_e1(bridge, (0, 1)).kind == "none"
    res = unique_chordless_cycle_through_e1(TRIANGLE_123, (0, 1))
    assert res.kind == "unique" and set(res.cycle) == {0, 1, 2}
    res = unique_chordless_cycle_through_e1(BOOK, (0, 1))
    assert res.kind == "multiple" and {res.cycle[1], res.other[1]} == {2, 3}
    with pytest.raises(PreconditionViolated):
        unique_chordless_cycle_through_e1(BOOK, (2, 3))


def test_articulation_rule_misses_pendant_cut_vertices():
    # vertex 3 is a cut vertex of G - e1 (it holds the leaf 5) but does not
    # separate 1 from 2, so there are two chordless cycles through e1
    assert unique_chordless_cycle_through_e1(BOOK_WITH_LEAF, (0, 1), "separating").kind == "multiple"
    assert unique_chordless_cycle_through_e1(BOOK_WITH_LEAF, (0, 1), "articulation").kind == "unique"
    assert not inheritance_convexity_bruteforce(BOOK_WITH_LEAF).holds
    assert decide(BOOK_WITH_LEAF).status == FAILS
    assert decide(BOOK_WITH_LEAF, mode="articulation").status == INHERITS


def test_shared_minimum_case():
    g = graph1(3, {(1, 2): 1, (1, 3): 1, (2, 3): 2})
    assert check_thm_two_weights_multi(g).status == INHERITS
    assert inheritance_convexity_bruteforce(g).holds
    two = graph1(4, {(1, 2): 1, (3, 4): 1, (2, 3): 2})
    v = check_thm_two_weights_multi(two)
    assert v.status == FAILS and v.reason == "MIN_EDGES_NO_COMMON_VERTEX"
    assert not inheritance_convexity_bruteforce(two).holds
    v = check_thm_two_weights_multi(LIGHT_STAR_GRAPH)
    assert v.status == INHERITS and v.witness["hub"] == 0


def test_shared_minimum_failure_reasons():
    hub_heavy = graph1(4, {(1, 2): 1, (1, 3): 1, (1, 4): 2, (2, 3): 2})
    assert check_thm_two_weights_multi(hub_heavy).reason == "HUB_HAS_HEAVY_EDGE"
    unlinked = graph1(5, {(1, 2): 1, (1, 3): 1, (2, 4): 2, (4, 5): 2})
    assert check_thm_two_weights_multi(unlinked).reason == "HEAVY_EDGE_NOT_LINKED_TO_HUB"
    square = graph1(5, {(1, 2): 1, (1, 3): 1, (1, 4): 1, (1, 5): 1, (2, 3): 2, (3, 4): 2, (4, 5): 2, (2, 5): 2})
    v = check_thm_two_weights_multi(square)
    assert v.reason == "NOT_CYCLE_COMPLETE" and sorted(v.witness["block"]) == [1, 2, 3, 4]
    for g in (hub_heavy, unlinked, square):
        assert not inheritance_convexity_bruteforce(g).holds


def test_unique_minimum_case():
    assert check_thm_two_weights_single(PATH_12).status == INHERITS
    assert inheritance_convexity_bruteforce(PATH_12).holds
    v = check_thm_two_weights_single(BOOK)
    assert v.status == FAILS and v.reason == "TWO_CHORDLESS_CYCLES_THROUGH_MIN_EDGE"
    assert check_thm_two_weights_single(UNIQUE_MIN_GRAPH).status == INHERITS


def test_unique_minimum_block_rule():
    # a chordless heavy 4-cycle off vertex 2 whose vertices are not all adjacent to 2
    g = graph1(6, {(1, 2): 1, (2, 3): 2, (3, 4): 2, (4, 5): 2, (5, 6): 2, (3, 6): 2})
    v = check_thm_two_weights_single(g)
    assert v.reason == "BLOCK_NEITHER_COMPLETE_NOR_LINKED"
    assert not inheritance_convexity_bruteforce(g).holds
    # joining every cycle vertex to 2 repairs it
    h = graph1(6, {(1, 2): 1, (2, 3): 2, (3, 4): 2, (4, 5): 2, (5, 6): 2, (3, 6): 2, (2, 4): 2, (2, 5): 2, (2, 6): 2})
    assert check_thm_two_weights_single(h).status == INHERITS
    assert inheritance_convexity_bruteforce(h).holds


def test_three_weight_case():
    assert check_thm_three_weights(TRIANGLE_123).status == INHERITS
    v = check_thm_three_weights(PATH_132)
    assert v.status == FAILS and v.reason == "MIDDLE_EDGE_AWAY_FROM_MIN_EDGE"
    assert check_thm_three_weights(THREE_WEIGHT_STAR).status == INHERITS
    both_ends = graph1(4, {(1, 2): 1, (1, 3): 2, (2, 4): 2, (3, 4): 3})
    assert check_thm_three_weights(both_ends).reason == "MIDDLE_EDGES_AT_BOTH_ENDS"
    heavy_at_hub = graph1(4, {(1, 2): 1, (2, 3): 2, (2, 4): 3})
    assert check_thm_three_weights(heavy_at_hub).reason == "HEAVY_EDGE_AT_HUB"
    for g in (PATH_132, both_ends, heavy_at_hub):
        assert not inheritance_convexity_bruteforce(g).holds


def test_decide_examples():
    assert decide(TRIANGLE_123).status == INHERITS
    v = decide(PATH_FOUR_WEIGHTS)
    assert v.status == FAILS and v.reason == "K_GT_3" and v.witness["weights"] == [1, 2, 3, 4]
    v = decide(graph1(5, {(1, 2): 1, (2, 3): 2, (4, 5): 2}))
    assert v.status == OUTSIDE and v.note
    several_light = graph1(4, {(1, 2): 1, (1, 3): 1, (3, 4): 2, (2, 4): 3})
    assert decide(several_light).reason == "K3_SEVERAL_MIN_EDGES"


def test_constant_and_edgeless_inherit():
    assert decide(WeightedGraph(0)).status == INHERITS
    assert decide(WeightedGraph(4)).reason == "AT_MOST_ONE_WEIGHT"
    assert decide(graph1(4, {(1, 2): 5, (3, 4): 5, (2, 3): 5})).status == INHERITS


def test_isolated_vertices_are_stripped():
    g = graph1(6, {(2, 4): 1, (4, 6): 2, (2, 6): 3})
    v = decide(g)
    assert v.status == INHERITS and "isolated" in v.note
    assert v.witness["edge"] == [1, 3]
    assert inheritance_convexity_bruteforce(g).holds
    bad = graph1(6, {(2, 4): 1, (4, 6): 3, (6, 5): 2})
    v = decide(bad)
    assert v.status == FAILS and set(v.witness["edge"]) <= {1, 3, 4, 5}
    assert not inheritance_convexity_bruteforce(bad).holds


def test_disconnected_necessity_examples():
    tri_iso = graph1(5, {(1, 2): 1, (2, 3): 2, (1, 3): 3})
    with pytest.raises(PreconditionViolated):
        check_disconnected_necessity(tri_iso)
    tri_edge = graph1(5, {(1, 2): 1, (2, 3): 2, (1, 3): 3, (4, 5): 2})
    assert check_disconnected_necessity(tri_edge).reason == "OTHER_COMPONENT_BESIDE_THREE_WEIGHTS"
    pair = graph1(5, {(1, 2): 1, (2, 3): 2, (4, 5): 2})
    assert check_disconnected_necessity(pair) is None


def test_witness_json_is_one_based():
    v = decide(PATH_132)
    out = v.to_json()
    assert out["schema"] == 1 and out["status"] == FAILS
    json.dumps(out)
    assert v.to_json(one_based=False)["witness"] == v.witness


# -- invariance -------------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=7, max_w=4), st.randoms(use_true_random=False))
def test_relabel_invariance(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    a, b = decide(g), decide(g.relabel(perm))
    assert (a.status, a.reason) == (b.status, b.reason)


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=7, max_w=4), st.sampled_from([lambda w: 10 * w + 3, lambda w: w**3, lambda w: 2**w]))
def test_monotone_weight_invariance(g, fn):
    a, b = decide(g), decide(g.remap_weights(fn))
    assert (a.status, a.reason) == (b.status, b.reason)
    assert a.witness == b.witness or a.reason in ("K_GT_3", "K3_SEVERAL_MIN_EDGES", "OTHER_COMPONENT_NOT_CONSTANT_AT_HEAVY_WEIGHT")


@settings(max_examples=300, deadline=None)
@given(graphs(max_n=7, max_w=4))
def test_verdict_agrees_with_oracle(g):
    v = decide(g)
    if v.status == OUTSIDE:
        assert len([c for c in range(g.n) if g.degree(c)]) >= 4
        return
    assert v.inherits == inheritance_convexity_bruteforce(g).holds


def test_exhaustive_three_weight_graphs_n4():
    # weights {1,2,3} on every connected graph with four vertices
    for edges in connected_edge_sets(4):
        for weights in all_weightings(edges, (1, 2, 3)):
            g = WeightedGraph(4, weights)
            assert decide(g).inherits == inheritance_convexity_bruteforce(g).holds, weights


def test_generators_are_connected_and_seeded():
    rng = random.Random(0)
    for _ in range(200):
        g = random_connected_graph(rng, rng.randint(1, 8), rng.randint(1, 3))
        assert is_connected(g, g.all_vertices)
    a = [random_connected_graph(random.Random(5), 6, 3) for _ in range(2)]
    assert a[0] == a[1]


def test_decide_never_mutates_input():
    g = graph1(4, {(1, 2): 1, (2, 3): 2, (3, 4): 2, (1, 4): 2})
    before = g.matrix.copy()
    decide(g)
    assert np.array_equal(g.matrix, before)
