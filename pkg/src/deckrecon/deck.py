"""Decks of vertex-deleted cards, with unlabeled multiset semantics."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable

from .canon import canonical_certificate
from .errors import CardNotFound, MalformedEncoding, MalformedFile, MixedOrders, WrongCardCount
from .graph import Graph, delete_vertex, emit_graph6, parse_graph6


@dataclass(frozen=True)
class Card:
    """One card.  ``graph`` is an arbitrary labelled representative."""

    graph: Graph

    @cached_property
    def certificate(self) -> bytes:
        return canonical_certificate(self.graph)

    @property
    def order(self) -> int:
        return self.graph.n

    @cached_property
    def edge_count(self) -> int:
        return self.graph.edge_count


def _sorted_cards(cards: Iterable[Card | Graph]) -> tuple[Card, ...]:
    out = [c if isinstance(c, Card) else Card(c) for c in cards]
    out.sort(key=lambda c: c.certificate)
    return tuple(out)


class _Deck:
    expected_cards: int = 0

    def __init__(self, original_order: int, cards: Iterable[Card | Graph]):
        self.original_order = original_order
        self.cards = _sorted_cards(cards)
        want = original_order - self.expected_cards
        if len(self.cards) != want:
            raise WrongCardCount(f"expected {want} cards for n={original_order}, got {len(self.cards)}")
        for c in self.cards:
            if c.order != original_order - 1:
                raise MixedOrders(f"card of order {c.order} in a deck of an order-{original_order} graph")

    @property
    def n(self) -> int:
        return self.original_order

    def certificates(self) -> list[bytes]:
        return [c.certificate for c in self.cards]

    def __len__(self) -> int:
        return len(self.cards)

    def __iter__(self):
        return iter(self.cards)

    def __eq__(self, other) -> bool:
        return (
            type(self) is type(other)
            and self.original_order == other.original_order
            and self.certificates() == other.certificates()
        )

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.original_order, tuple(self.certificates())))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.original_order}, cards={len(self.cards)})"


class FullDeck(_Deck):
    expected_cards = 0


class PartialDeck(_Deck):
    """All but one card of an unknown order-n graph."""

    expected_cards = 1


def deal(g: Graph) -> FullDeck:
    if g.n < 2:
        raise ValueError("dealing needs at least 2 vertices")
    return FullDeck(g.n, [delete_vertex(g, v) for v in range(g.n)])


def hide(d: FullDeck, g: Graph, v: int) -> PartialDeck:
    """Drop one card isomorphic to ``g - v`` from the full deck ``d``."""
    if not 0 <= v < g.n:
        raise CardNotFound(f"vertex {v} not in graph of order {g.n}")
    if d.original_order != g.n:
        raise CardNotFound("deck and graph have different orders")
    target = canonical_certificate(delete_vertex(g, v))
    cards = list(d.cards)
    for i, c in enumerate(cards):
        if c.certificate == target:
            del cards[i]
            return PartialDeck(d.original_order, cards)
    raise CardNotFound(f"no card isomorphic to G - {v} in the deck")


def partial_deck(g: Graph, v: int) -> PartialDeck:
    """Shortcut for ``hide(deal(g), g, v)``."""
    return PartialDeck(g.n, [delete_vertex(g, u) for u in range(g.n) if u != v])


def deck_equal(a: Iterable[Card], b: Iterable[Card]) -> bool:
    return Counter(c.certificate for c in a) == Counter(c.certificate for c in b)


# --- deck files ------------------------------------------------------------


def dumps_deck(d: _Deck) -> str:
    lines = [f"deck n={d.original_order} cards={len(d.cards)}"]
    lines += [emit_graph6(c.graph) for c in d.cards]
    return "\n".join(lines) + "\n"


def save_deck(d: _Deck, path) -> None:
    Path(path).write_text(dumps_deck(d), encoding="utf-8", newline="\n")


def _parse_header(line: str) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 3 or parts[0] != "deck":
        raise MalformedFile(f"bad deck header {line!r}")
    fields = {}
    for p in parts[1:]:
        key, sep, val = p.partition("=")
        if not sep or not val.isdigit():
            raise MalformedFile(f"bad header field {p!r}")
        fields[key] = int(val)
    if set(fields) != {"n", "cards"}:
        raise MalformedFile(f"header needs n= and cards=, got {line!r}")
    return fields["n"], fields["cards"]


def loads_deck(text: str) -> PartialDeck:
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        raise MalformedFile("empty deck file")
    n, k = _parse_header(lines[0])
    body = lines[1:]
    if len(body) != k:
        raise WrongCardCount(f"header promises {k} cards, file has {len(body)}")
    if k != n - 1:
        raise WrongCardCount(f"a partial deck of an order-{n} graph has {n - 1} cards, header says {k}")
    try:
        graphs = [parse_graph6(ln) for ln in body]
    except MalformedEncoding as exc:
        raise MalformedFile(str(exc)) from exc
    if len({h.n for h in graphs}) > 1:
        raise MixedOrders(f"cards of orders {sorted({h.n for h in graphs})} in one file")
    return PartialDeck(n, graphs)


def load_deck(path) -> PartialDeck:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedFile(f"{path}: not UTF-8") from exc
    return loads_deck(text)
