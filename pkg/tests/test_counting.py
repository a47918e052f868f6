"""Pattern counting: specialized fast paths against brute-force ground truth."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exfree.counting import (
    Pattern,
    contains,
    copies_through_vertex,
    count_cliques,
    count_injective_homs,
    count_pattern,
    count_pattern_generic,
    max_clique_size,
    parse_pattern,
)
from exfree.errors import BudgetExceededError, PatternSyntaxError
from exfree.graph6 import to_graph6
from exfree.graphs import Graph, blowup, complete, coned_blowup, cycle, empty, turan

from oracles import automorphisms_brute, contains_brute, copies_brute, random_graph


def test_count_cliques_base_cases():
    g = complete(5)
    assert count_cliques(g, 0) == 1
    assert count_cliques(g, 1) == 5
    assert count_cliques(g, 2) == 10
    assert count_cliques(g, 3) == 10
    assert count_cliques(g, 5) == 1
    assert count_cliques(g, 6) == 0
    assert count_cliques(empty(4), 2) == 0


def test_count_cliques_turan():
    assert count_cliques(turan(6, 3), 3) == 8
    assert count_cliques(turan(9, 3), 3) == 27
    assert count_cliques(turan(7, 3), 3) == 3 * 2 * 2


def test_blowup_worked_examples():
    b22 = Pattern.blowup(2, 2)
    assert count_pattern(complete(4), b22) == 3
    assert count_pattern(blowup(2, 3), b22) == 9  # K_{3,3}
    assert count_pattern(complete(5), b22) == 15
    assert count_pattern(cycle(4), b22) == 1


def test_blowup_closed_form_on_balanced_multipartite():
    from math import comb

    for m in (1, 2, 3):
        for s in (1, 2, 3, 4, 5):
            for t in (1, 2):
                host = turan(m * s, m)
                expect = comb(s, t) ** m
                assert count_pattern(host, Pattern.blowup(m, t)) == expect, (m, s, t)


def test_coned_blowup_count():
    w4 = Pattern.coned_blowup(2, 2)  # 4-wheel: 4-cycle plus dominating apex
    assert count_pattern(complete(5), w4) == 15
    assert count_pattern(coned_blowup(2, 2), w4) == 1
    k4 = Pattern.coned_blowup(3, 1)  # coning a triangle gives a 4-clique
    assert count_pattern(complete(6), k4) == 15


def test_aut_counts_match_brute_force():
    cases = [
        Pattern.clique(3),
        Pattern.clique(4),
        Pattern.blowup(2, 2),
        Pattern.blowup(3, 2),
        Pattern.blowup(2, 3),
        Pattern.coned_blowup(2, 2),
        Pattern.coned_blowup(2, 1),
        Pattern.coned_blowup(3, 1),
        Pattern.arbitrary(cycle(5)),
        Pattern.arbitrary(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])),
    ]
    for p in cases:
        assert p.aut_count() == automorphisms_brute(p.realize()), p.literal()


def test_generic_counter_matches_brute_force():
    rng = random.Random(5)
    patterns = [
        Pattern.clique(3),
        Pattern.blowup(2, 2),
        Pattern.arbitrary(cycle(5)),
        Pattern.arbitrary(Graph.from_edges(3, [(0, 1)])),
    ]
    for i in range(25):
        g = random_graph(rng, rng.randrange(0, 8))
        p = patterns[i % len(patterns)]
        assert count_pattern_generic(g, p) == copies_brute(g, p.realize()), (
            i,
            p.literal(),
        )


def test_specialized_paths_match_generic():
    rng = random.Random(11)
    patterns = [
        Pattern.clique(2),
        Pattern.clique(3),
        Pattern.clique(4),
        Pattern.blowup(2, 2),
        Pattern.blowup(3, 2),
        Pattern.blowup(2, 3),
    ]
    for i in range(60):
        g = random_graph(rng, rng.randrange(0, 9), p=0.55)
        p = patterns[i % len(patterns)]
        assert count_pattern(g, p) == count_pattern_generic(g, p)


def test_blowup_t1_equals_clique_count():
    rng = random.Random(3)
    for _ in range(20):
        g = random_graph(rng, 8)
        for m in (2, 3, 4):
            assert count_pattern(g, Pattern.blowup(m, 1)) == count_cliques(g, m)


def test_pattern_parsing():
    assert parse_pattern("K3") == Pattern.clique(3)
    assert parse_pattern("K3(2)") == Pattern.blowup(3, 2)
    assert parse_pattern("K2+(2)") == Pattern.coned_blowup(2, 2)
    arb = parse_pattern("g6:" + to_graph6(cycle(5)))
    assert arb.kind == "arbitrary" and arb.graph.adj == cycle(5).adj
    for bad in ("K", "K0x", "J3", "K3(2", "K3+2)", ""):
        with pytest.raises(PatternSyntaxError):
            parse_pattern(bad)


def test_pattern_literal_round_trip():
    for p in (
        Pattern.clique(4),
        Pattern.blowup(3, 2),
        Pattern.coned_blowup(2, 3),
        Pattern.arbitrary(cycle(5)),
    ):
        assert parse_pattern(p.literal()) == p


def test_vertex_budget_guard():
    path13 = Pattern.arbitrary(
        Graph.from_edges(13, [(i, i + 1) for i in range(12)])
    )
    with pytest.raises(BudgetExceededError):
        count_pattern(complete(13), path13)


def test_contains_matches_brute_force():
    rng = random.Random(7)
    hs = [complete(3), complete(4), cycle(4), cycle(5), blowup(2, 2)]
    for i in range(40):
        g = random_graph(rng, rng.randrange(0, 8))
        h = hs[i % len(hs)]
        assert contains(g, h) == contains_brute(g, h)
    assert contains(complete(3), empty(0))
    assert not contains(empty(3), complete(2))


def test_max_clique_size():
    assert max_clique_size(empty(5)) == 1
    assert max_clique_size(empty(0)) == 0
    assert max_clique_size(cycle(5)) == 2
    assert max_clique_size(turan(9, 3)) == 3
    assert max_clique_size(complete(7)) == 7


def test_copies_through_vertex_clique():
    g = turan(6, 3)
    # each vertex lies on 4 of the 8 transversal triangles
    for v in range(6):
        assert copies_through_vertex(g, Pattern.clique(3), v) == 4


def test_copies_through_vertex_matches_deletion_delta():
    rng = random.Random(13)
    patterns = [Pattern.clique(3), Pattern.blowup(2, 2), Pattern.clique(2)]
    for i in range(30):
        n = rng.randrange(1, 8)
        g = random_graph(rng, n)
        p = patterns[i % len(patterns)]
        v = rng.randrange(n)
        whole = count_pattern(g, p)
        from exfree.graphs import remove_vertex

        rest = count_pattern(remove_vertex(g, v)[0], p)
        assert copies_through_vertex(g, p, v) == whole - rest


def test_count_injective_homs_equals_count_times_aut():
    rng = random.Random(17)
    for _ in range(15):
        g = random_graph(rng, 7)
        p = Pattern.blowup(2, 2)
        homs = count_injective_homs(g, p.realize())
        assert homs == count_pattern(g, p) * p.aut_count()


@st.composite
def small_graphs(draw):
    n = draw(st.integers(min_value=0, max_value=7))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@given(small_graphs(), st.integers(min_value=2, max_value=4))
@settings(max_examples=120, deadline=None)
def test_clique_count_property(g, m):
    assert count_cliques(g, m) == copies_brute(g, complete(m))


@given(small_graphs())
@settings(max_examples=60, deadline=None)
def test_blowup22_property(g):
    assert count_pattern(g, Pattern.blowup(2, 2)) == copies_brute(g, blowup(2, 2))
