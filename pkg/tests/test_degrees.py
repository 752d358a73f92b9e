from __future__ import annotations

from collections import Counter

import networkx as nx
import pytest

from deckrecon.deck import Card, PartialDeck, deal, partial_deck
from deckrecon.degrees import (
    card_fits,
    candidate_edge_counts,
    degree_candidates,
    hidden_card_degrees,
    is_graphical,
    owner_degree,
    reconstruct_degrees,
)
from deckrecon.errors import InconsistentDeck, NegativeDegree, UnsupportedOrder
from deckrecon.graph import Graph, cycle, delete_vertex, parse_graph6, path, star
from deckrecon.oracle import enumerate_graphs

from .conftest import random_graph, random_perm


def test_cycle_c7():
    prof = reconstruct_degrees(partial_deck(cycle(7), 3))
    assert prof.m == 7 and prof.degrees == (2,) * 7 and prof.hidden_degree == 2
    assert prof.max_degree == 2 and prof.ell == 7 and prof.holes == ()


def test_star_with_centre_hidden():
    prof = reconstruct_degrees(partial_deck(star(6), 0))
    assert prof.m == 6 and prof.hidden_degree == 6
    assert prof.degrees == (6, 1, 1, 1, 1, 1, 1)
    assert prof.holes == (2, 3, 4, 5)


def test_complete_k7(named):
    prof = reconstruct_degrees(partial_deck(named["K7"], 0))
    assert prof.m == 21 and prof.degrees == (6,) * 7


def test_empty_e7(named):
    prof = reconstruct_degrees(partial_deck(named["E7"], 4))
    assert prof.m == 0 and prof.degrees == (0,) * 7


def test_owner_degree_examples():
    assert owner_degree(Card(path(6)), 7) == 2
    assert owner_degree(Card(Graph.empty(6)), 6) == 6
    with pytest.raises(NegativeDegree):
        owner_degree(Card(Graph.complete(6)), 3)


def test_small_orders_unsupported():
    for n in (3, 5, 6):
        with pytest.raises(UnsupportedOrder):
            reconstruct_degrees(partial_deck(cycle(n), 0))


def test_is_graphical():
    assert is_graphical([3, 3, 2, 2, 2])
    assert is_graphical([0, 0])
    assert not is_graphical([3, 3, 1, 1])
    assert not is_graphical([1])
    assert not is_graphical([4, 1, 1, 1])


def test_is_graphical_agrees_with_networkx(rng):
    for _ in range(300):
        seq = [rng.randint(0, 7) for _ in range(rng.randint(1, 8))]
        assert is_graphical(seq) == nx.is_graphical(seq)


def test_card_fits_on_real_cards(rng):
    for _ in range(100):
        n = rng.randint(3, 10)
        g = random_graph(rng, n)
        degs = g.degrees()
        v = rng.randrange(n)
        card = delete_vertex(g, v).degrees()
        assert card_fits(card, degs[:v] + degs[v + 1 :], degs[v])


def test_card_fits_small_cases():
    # P3 minus an end vertex is K2: the middle vertex loses its edge
    assert card_fits([1, 1], [2, 1], 1)
    assert not card_fits([1, 0], [2, 1], 1)
    assert not card_fits([0, 0], [1, 1], 1)
    assert not card_fits([0], [0, 0], 0)


def test_hidden_card_degrees_matches_missing_card(rng):
    for _ in range(100):
        n = rng.randint(7, 11)
        g = random_graph(rng, n)
        v = rng.randrange(n)
        got = hidden_card_degrees(partial_deck(g, v), g.degrees())
        assert Counter(got) == Counter(delete_vertex(g, v).degrees())


def test_candidate_window_contains_truth(rng):
    for _ in range(50):
        g = random_graph(rng, rng.randint(7, 12))
        assert g.edge_count in candidate_edge_counts(partial_deck(g, 0))


def test_complement_like_pair_is_resolved():
    # two edge counts pass the arithmetic and graphicality filters here;
    # only the implied missing card tells them apart
    g = parse_graph6("F?bew")
    prof = reconstruct_degrees(partial_deck(g, 6))
    assert prof.m == g.edge_count
    assert [p.m for p in degree_candidates(partial_deck(g, 6))] == [g.edge_count]


def test_inconsistent_deck():
    cards = [Graph.complete(6)] * 5 + [Graph.empty(6)]
    with pytest.raises(InconsistentDeck):
        reconstruct_degrees(PartialDeck(7, cards))


def test_exhaustive_order_seven():
    for g in enumerate_graphs(7):
        degs = sorted(g.degrees(), reverse=True)
        for v in range(7):
            prof = reconstruct_degrees(partial_deck(g, v))
            assert prof.m == g.edge_count
            assert list(prof.degrees) == degs
            assert prof.hidden_degree == g.degree(v)


def test_invariant_under_relabeling(rng):
    for _ in range(20):
        g = random_graph(rng, rng.randint(7, 12))
        perm = random_perm(rng, g.n)
        v = rng.randrange(g.n)
        assert reconstruct_degrees(partial_deck(g, v)) == reconstruct_degrees(partial_deck(g.relabel(perm), perm[v]))


def test_owner_degrees_align_with_cards(rng):
    g = random_graph(rng, 9, 0.4)
    d = partial_deck(g, 2)
    prof = reconstruct_degrees(d)
    assert list(prof.owner_degrees) == [g.edge_count - c.edge_count for c in d.cards]
    assert Counter(prof.owner_degrees) + Counter([prof.hidden_degree]) == Counter(g.degrees())
    full = deal(g)
    assert len(full) == 9
