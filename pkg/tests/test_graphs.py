"""Core graph type, generators, and surgery."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exfree.errors import GraphFormatError, PatternSyntaxError
from exfree.graphs import (
    GenSpec,
    Graph,
    as_fraction,
    bits,
    blowup,
    ceil_frac,
    complete,
    coned_blowup,
    cycle,
    empty,
    generate,
    gnp,
    induced_subgraph,
    min_degree_floor,
    min_degree_random,
    parse_genspec,
    remove_vertex,
    subgraph_from_edges,
    turan,
)


def test_from_edges_and_accessors():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert g.edge_count() == 3
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]
    assert g.degree(1) == 2
    assert g.min_degree() == 1
    assert g.max_degree() == 2
    assert g.has_edge(1, 0) and not g.has_edge(0, 2)
    assert g.neighbors(2) == [1, 3]


def test_validation_rejects_bad_graphs():
    with pytest.raises(GraphFormatError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(GraphFormatError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphFormatError):
        Graph(2, (0b10, 0b00))  # asymmetric adjacency
    with pytest.raises(GraphFormatError):
        Graph(1, (0b10,))  # bit outside vertex range


def test_duplicate_edges_collapse():
    g = Graph.from_edges(3, [(0, 1), (1, 0), (0, 1)])
    assert g.edge_count() == 1


def test_complete_and_empty():
    assert complete(5).edge_count() == 10
    assert complete(0).n == 0
    assert empty(4).edge_count() == 0


def test_turan_part_structure():
    g = turan(7, 3)  # parts of sizes 3, 2, 2 on contiguous id blocks
    assert g.n == 7
    parts = [[0, 1, 2], [3, 4], [5, 6]]
    for part in parts:
        for u in part:
            for v in part:
                assert not g.has_edge(u, v) or u == v
    assert g.edge_count() == (3 * 2 + 3 * 2 + 2 * 2)
    assert turan(6, 3).edge_count() == 12
    assert turan(5, 5).edge_count() == 10  # degenerates to complete


def test_blowup_and_coned_blowup():
    b = blowup(2, 2)  # complete bipartite 2+2, a 4-cycle
    assert b.n == 4 and b.edge_count() == 4
    c = coned_blowup(2, 2)
    assert c.n == 5 and c.edge_count() == 8
    apex = c.n - 1
    assert c.degree(apex) == 4
    assert blowup(3, 1).edge_count() == 3  # plain triangle


def test_cycle():
    g = cycle(5)
    assert g.edge_count() == 5
    assert all(g.degree(v) == 2 for v in range(5))
    with pytest.raises(ValueError):
        cycle(2)


def test_gnp_deterministic():
    assert gnp(10, 0.5, seed=7).adj == gnp(10, 0.5, seed=7).adj
    assert gnp(10, 0.5, seed=7).adj != gnp(10, 0.5, seed=8).adj
    assert gnp(6, 0.0, seed=1).edge_count() == 0
    assert gnp(6, 1.0, seed=1).edge_count() == 15


def test_min_degree_floor_cap():
    assert min_degree_floor(9, Fraction(1, 9)) == 8
    assert min_degree_floor(9, 0) == 8  # capped at n-1
    assert min_degree_floor(10, Fraction(1, 2)) == 5
    assert min_degree_floor(0, Fraction(1, 2)) == 0


def test_min_degree_random_respects_floor():
    for seed in range(10):
        g = min_degree_random(9, Fraction(1, 3), seed=seed)
        assert g.min_degree() >= min_degree_floor(9, Fraction(1, 3))
    assert min_degree_random(7, 0, seed=3).adj == complete(7).adj
    assert min_degree_random(8, "1/4", seed=5).adj == min_degree_random(
        8, Fraction(1, 4), seed=5
    ).adj


def test_remove_vertex_path_from_cycle():
    g, remap = remove_vertex(cycle(5), 2)
    assert g.n == 4
    assert remap == (0, 1, 3, 4)
    assert g.edges() == [(0, 1), (2, 3), (3, 0)] or g.edge_count() == 4 - 1
    degs = sorted(g.degree(v) for v in range(4))
    assert degs == [1, 1, 2, 2]  # a 4-vertex path


def test_induced_subgraph_remap():
    g = complete(5)
    sub, remap = induced_subgraph(g, [1, 3, 4])
    assert sub.n == 3 and sub.edge_count() == 3
    assert remap == (1, 3, 4)


def test_subgraph_from_edges_validates():
    g = cycle(4)
    sub = subgraph_from_edges(g, [(0, 1)])
    assert sub.edge_count() == 1 and sub.n == 4
    with pytest.raises(GraphFormatError):
        subgraph_from_edges(g, [(0, 2)])  # a diagonal, not a host edge


def test_genspec_literals_round_trip():
    literals = [
        "gen:complete:6",
        "gen:empty:4",
        "gen:turan:9:3",
        "gen:blowup:3:2",
        "gen:coned_blowup:2:2",
        "gen:cycle:5",
        "gen:min_degree_random:9:1/9:7",
    ]
    for lit in literals:
        spec = parse_genspec(lit)
        assert spec.literal() == lit
        generate(spec)  # must not raise
    with pytest.raises(PatternSyntaxError):
        parse_genspec("gen:unknown:3")
    with pytest.raises(PatternSyntaxError):
        parse_genspec("turan:6:3")
    with pytest.raises(PatternSyntaxError):
        parse_genspec("gen:turan:6")


def test_as_fraction_exactness():
    assert as_fraction(0.8) == Fraction(4, 5)
    assert as_fraction("1/3") == Fraction(1, 3)
    assert as_fraction(2) == 2
    assert ceil_frac(Fraction(7, 2)) == 4
    assert ceil_frac(Fraction(4, 1)) == 4
    assert (1 - as_fraction(0.2)) * 10 == 8  # no binary-float residue


def test_bits_helper():
    assert bits(0b10110) == [1, 2, 4]
    assert bits(0) == []


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@given(graphs())
@settings(max_examples=150)
def test_degree_sum_is_twice_edges(g):
    assert sum(g.degree(v) for v in range(g.n)) == 2 * g.edge_count()


@given(graphs(), st.integers(min_value=0, max_value=7))
@settings(max_examples=150)
def test_remove_vertex_keeps_other_adjacency(g, v):
    if g.n == 0:
        return
    v %= g.n
    sub, remap = remove_vertex(g, v)
    assert sub.n == g.n - 1
    for a in range(sub.n):
        for b in range(sub.n):
            assert sub.has_edge(a, b) == g.has_edge(remap[a], remap[b])


def test_gnp_rng_sharing():
    rng = random.Random(99)
    a = gnp(8, 0.5, seed=0, rng=rng)
    b = gnp(8, 0.5, seed=0, rng=rng)
    assert a.adj != b.adj  # shared stream advances
