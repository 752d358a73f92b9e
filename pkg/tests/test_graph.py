from __future__ import annotations

import random
from math import comb

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deckrecon.errors import MalformedEncoding, OrderTooLarge
from deckrecon.graph import (
    Graph,
    clique_degree,
    clique_degree_profile,
    clique_profile,
    count_cliques,
    cycle,
    delete_vertex,
    emit_graph6,
    parse_graph6,
    path,
    petersen,
    star,
    wheel,
)
from deckrecon.oracle import brute_force_kr

from .conftest import random_graph


@st.composite
def graphs(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


def test_graph_rejects_bad_rows():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))  # asymmetric
    with pytest.raises(ValueError):
        Graph(2, (0b01, 0))  # self-loop
    with pytest.raises(OrderTooLarge):
        Graph.empty(63)


# --- graph6 ----------------------------------------------------------------


def _nx_encode(g: Graph) -> str:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return nx.to_graph6_bytes(h, header=False).decode().strip()


def test_parse_k2():
    g = parse_graph6("A_")
    assert g.n == 2 and g.edges() == [(0, 1)]
    assert _nx_encode(g) == "A_"


def test_single_vertex():
    assert emit_graph6(Graph.empty(1)) == "@"
    g = parse_graph6("@")
    assert g.n == 1 and g.edge_count == 0


def test_c5_against_reference_encoder():
    assert emit_graph6(cycle(5)) == "Dhc"
    g = parse_graph6("Dhc")
    assert g.n == 5 and g.edge_count == 5 and set(g.degrees()) == {2}


def test_k3_and_p3_encode_differently():
    assert emit_graph6(Graph.complete(3)) != emit_graph6(path(3))


def test_emit_matches_networkx_on_random_graphs(rng):
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 40))
        assert emit_graph6(g) == _nx_encode(g)


def test_round_trip_1000_random_graphs(rng):
    for _ in range(1000):
        g = random_graph(rng, rng.randint(1, 20))
        assert parse_graph6(emit_graph6(g)) == g


@pytest.mark.parametrize("bad", ["", "A", "A__", "A\x7f", "A`", ">>graph6<<A_", "?"])
def test_malformed(bad):
    with pytest.raises(MalformedEncoding):
        parse_graph6(bad)


def test_order_too_large():
    with pytest.raises(OrderTooLarge):
        parse_graph6("~?@?" + "?" * 10)


# --- clique counting -------------------------------------------------------


def test_count_cliques_examples():
    assert count_cliques(Graph.complete(4), 3) == 4
    assert count_cliques(cycle(5), 2) == 5
    assert count_cliques(petersen(), 3) == 0
    assert count_cliques(cycle(5), 6) == 0
    assert count_cliques(cycle(5), 1) == 5


def test_clique_degree_examples():
    assert clique_degree(Graph.complete(5), 2, 3) == 6
    assert clique_degree(Graph.empty(3), 0, 2) == 0
    w = wheel(7)
    hub_triangles = brute_force_kr(w, 3) - brute_force_kr(delete_vertex(w, 0), 3)
    assert hub_triangles == 6
    assert clique_degree(w, 0, 3) == 6
    assert clique_degree(w, 0, 1) == 1


def test_delete_vertex_examples():
    assert delete_vertex(Graph.complete(4), 2) == Graph.complete(3)
    card = delete_vertex(cycle(7), 3)
    assert card.n == 6 and card.edge_count == 5 and sorted(card.degrees()) == [1, 1, 2, 2, 2, 2]
    assert delete_vertex(star(6), 0) == Graph.empty(6)


def test_delete_vertex_keeps_relative_order():
    g = path(4)  # 0-1-2-3
    assert delete_vertex(g, 1).edges() == [(1, 2)]


def test_clique_profile_agrees_with_counts(rng):
    for _ in range(50):
        g = random_graph(rng, rng.randint(1, 10))
        prof = clique_profile(g)
        assert prof == [1] + [count_cliques(g, r) for r in range(1, g.n + 1)]
        v = rng.randrange(g.n)
        assert clique_degree_profile(g, v)[1:] == [clique_degree(g, v, r) for r in range(1, g.n + 1)]


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_clique_degrees_sum_to_r_times_count(g):
    for r in range(1, g.n + 1):
        assert sum(clique_degree(g, v, r) for v in range(g.n)) == r * count_cliques(g, r)


@settings(max_examples=150, deadline=None)
@given(graphs(min_n=2))
def test_kelly_identity_over_full_deck(g):
    for r in range(1, g.n):
        cards = sum(count_cliques(delete_vertex(g, v), r) for v in range(g.n))
        assert (g.n - r) * count_cliques(g, r) == cards


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_counter_matches_brute_force(g):
    for r in range(1, g.n + 1):
        assert 0 <= count_cliques(g, r) == brute_force_kr(g, r) <= comb(g.n, r)


def test_relabel_preserves_counts():
    rng = random.Random(3)
    g = random_graph(rng, 9, 0.5)
    perm = list(range(9))
    rng.shuffle(perm)
    h = g.relabel(perm)
    assert [count_cliques(g, r) for r in range(1, 10)] == [count_cliques(h, r) for r in range(1, 10)]
