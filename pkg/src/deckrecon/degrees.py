"""Degree-sequence reconstruction from n - 1 cards (orders n >= 7)."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .deck import Card, PartialDeck
from .errors import AmbiguousDegreeSequence, InconsistentDeck, NegativeDegree, UnsupportedOrder

MIN_ORDER = 7


@dataclass(frozen=True)
class DegreeProfile:
    n: int
    m: int
    owner_degrees: tuple[int, ...]  # aligned with PartialDeck.cards
    hidden_degree: int

    @property
    def degrees(self) -> tuple[int, ...]:
        """All n degrees, non-increasing."""
        return tuple(sorted(self.owner_degrees + (self.hidden_degree,), reverse=True))

    @property
    def max_degree(self) -> int:
        return self.degrees[0]

    @property
    def min_degree(self) -> int:
        return self.degrees[-1]

    @property
    def ell(self) -> int:
        return self.degrees.count(self.max_degree)

    @property
    def avg_degree(self) -> Fraction:
        return Fraction(2 * self.m, self.n)

    @property
    def holes(self) -> tuple[int, ...]:
        present = set(self.degrees)
        return tuple(a for a in range(self.min_degree + 1, self.max_degree) if a not in present)

    def as_dict(self) -> dict:
        return {
            "delta": self.max_degree,
            "degrees": list(self.degrees),
            "ell": self.ell,
            "hidden_degree": self.hidden_degree,
            "holes": list(self.holes),
            "m": self.m,
            "min_degree": self.min_degree,
            "n": self.n,
            "owner_degrees": list(self.owner_degrees),
        }


def owner_degree(card: Card, m: int) -> int:
    """Degree of the vertex whose deletion produced ``card``, given |E(G)| = m."""
    e = card.edge_count
    if m < e:
        raise NegativeDegree(f"edge count {m} below card edge count {e}")
    return m - e


def is_graphical(degrees: Sequence[int]) -> bool:
    """Erdős–Gallai test."""
    d = sorted(degrees, reverse=True)
    n = len(d)
    if any(x < 0 or x >= max(n, 1) for x in d) or sum(d) % 2:
        return False
    prefix = 0
    for k in range(1, n + 1):
        prefix += d[k - 1]
        tail = sum(min(x, k) for x in d[k:])
        if prefix > k * (k - 1) + tail:
            return False
    return True


def card_fits(card_degrees: Sequence[int], others: Sequence[int], owner: int) -> bool:
    """Can the card's degree multiset arise from ``others`` by lowering exactly ``owner`` entries by one?

    Card vertices of degree k come from slots of degree k (not adjacent to
    the owner) or k + 1 (adjacent).  Scanning degree values upward, the
    number of lowered slots at each value is forced, so feasibility of the
    slot assignment reduces to checking that chain.
    """
    if len(card_degrees) != len(others):
        return False
    have = Counter(card_degrees)
    slots = Counter(others)
    top = max(list(have) + list(slots) + [0]) + 1
    lowered = 0  # slots of value k that are adjacent to the owner
    total = 0
    for k in range(top + 1):
        if lowered < 0 or lowered > slots[k]:
            return False
        total += lowered
        lowered = have[k] - (slots[k] - lowered)
    return lowered == 0 and total == owner


def candidate_edge_counts(deck: PartialDeck) -> list[int]:
    """Edge counts allowed by 0 <= hidden degree <= n - 1."""
    n = deck.n
    s = sum(c.edge_count for c in deck.cards)
    # hidden = s - (n - 3) m  must lie in [0, n - 1]
    lo = -(-(s - (n - 1)) // (n - 3))
    hi = s // (n - 3)
    return list(range(max(lo, 0), hi + 1))


def _survives(deck: PartialDeck, m: int) -> DegreeProfile | None:
    n = deck.n
    if any(c.edge_count > m for c in deck.cards):
        return None
    owners = tuple(m - c.edge_count for c in deck.cards)
    hidden = sum(c.edge_count for c in deck.cards) - (n - 3) * m
    everything = list(owners) + [hidden]
    if any(not 0 <= d <= n - 1 for d in everything):
        return None
    if not is_graphical(everything):
        return None
    for i, card in enumerate(deck.cards):
        rest = everything[:i] + everything[i + 1 :]
        if not card_fits(card.graph.degrees(), rest, owners[i]):
            return None
    hidden_card = hidden_card_degrees(deck, everything)
    if hidden_card is None or not card_fits(hidden_card, list(owners), hidden):
        return None
    return DegreeProfile(n=n, m=m, owner_degrees=owners, hidden_degree=hidden)


def hidden_card_degrees(deck: PartialDeck, degrees: Sequence[int]) -> list[int] | None:
    """Degree multiset of the missing card implied by a putative degree sequence.

    Over the full deck, a degree-k vertex shows degree k on its n - 1 - k
    non-neighbours' cards and k - 1 on its k neighbours' cards; subtracting
    the visible cards leaves the hidden card.  ``None`` if that goes negative.
    """
    n = deck.n
    c = Counter(degrees)
    seen: Counter = Counter()
    for card in deck.cards:
        seen.update(card.graph.degrees())
    out = []
    for k in range(n - 1):
        left = (n - 1 - k) * c[k] + (k + 1) * c[k + 1] - seen[k]
        if left < 0:
            return None
        out += [k] * left
    return out


def degree_candidates(deck: PartialDeck) -> list[DegreeProfile]:
    """Every profile passing the filters; exactly one for legitimate decks."""
    out = []
    for m in candidate_edge_counts(deck):
        prof = _survives(deck, m)
        if prof is not None:
            out.append(prof)
    return out


def reconstruct_degrees(deck: PartialDeck) -> DegreeProfile:
    if deck.n < MIN_ORDER:
        raise UnsupportedOrder(f"degree reconstruction from n - 1 cards needs n >= {MIN_ORDER}, got {deck.n}")
    found = degree_candidates(deck)
    if not found:
        raise InconsistentDeck("no edge count is consistent with these cards")
    if len(found) > 1:
        raise AmbiguousDegreeSequence(f"edge counts {[p.m for p in found]} all survive")
    return found[0]
