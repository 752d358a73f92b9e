"""Reconstruct clique counts and degree sequences from n - 1 vertex-deleted cards."""

from .canon import canonical_certificate, canonical_form
from .cliques import Determined, ReconstructionOutcome, TwoCandidates, reconstruct_all
from .deck import Card, FullDeck, PartialDeck, deal, deck_equal, hide, load_deck, partial_deck, save_deck
from .degrees import DegreeProfile, reconstruct_degrees
from .graph import Graph, clique_degree, count_cliques, delete_vertex, emit_graph6, parse_graph6
from .oracle import brute_force_kr, enumerate_graphs, verify_exhaustive, verify_instance, verify_random

__version__ = "0.1.0"

__all__ = [
    "Card", "DegreeProfile", "Determined", "FullDeck", "Graph", "PartialDeck", "ReconstructionOutcome",
    "TwoCandidates", "brute_force_kr", "canonical_certificate", "canonical_form", "clique_degree",
    "count_cliques", "deal", "deck_equal", "delete_vertex", "emit_graph6", "enumerate_graphs", "hide",
    "load_deck", "parse_graph6", "partial_deck", "reconstruct_all", "reconstruct_degrees", "save_deck",
    "verify_exhaustive", "verify_instance", "verify_random",
]
