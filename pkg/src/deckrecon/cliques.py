"""Clique-count reconstruction from n - 1 cards.

For every clique size r the resolvers below are tried in a fixed order; the
first one whose preconditions can be verified from the cards and the degree
profile produces the count.  The only size that may stay open is
r = n - ell (ell = number of maximum-degree vertices), reported as a pair of
candidates.

Terminology used throughout:

* a *Delta-card* is a visible card whose owner has maximum degree Delta;
* a *sighting* at degree t is a card vertex of card-degree t when no vertex
  of G has degree t + 1, so the vertex is seen with its whole neighbourhood;
* ``D`` is the set of r-clique degrees read off sightings at degree Delta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Union

from .deck import PartialDeck
from .degrees import DegreeProfile, reconstruct_degrees
from .errors import BlockedCase, IdentificationAmbiguous, InternalContradiction, NegativeDegree, NonDivisible
from .graph import clique_degree_profile, clique_profile, count_cliques


@dataclass(frozen=True)
class Sighting:
    card_index: int
    card_vertex: int
    true_degree: int
    clique_degrees: tuple[int, ...]  # entry r is deg_r(w) for r = 0..n-1

    def deg(self, r: int) -> int:
        return self.clique_degrees[r] if r < len(self.clique_degrees) else 0


@dataclass(frozen=True)
class Determined:
    count: int
    resolver: str


@dataclass(frozen=True)
class TwoCandidates:
    low: int
    high: int

    def __post_init__(self):
        if not self.low < self.high:
            raise ValueError("TwoCandidates needs low < high")


Outcome = Union[Determined, TwoCandidates]


@dataclass(frozen=True)
class AssignmentHypothesis:
    """Pairing of the sorted Delta-cards with Delta-vertices ranked by deg_r.

    ``vertex_of_card[j]`` is the vertex rank owning the j-th card (cards sorted
    by K_r ascending, vertex ranks by deg_r descending); ``hidden`` is the rank
    left for the missing card.
    """

    color: str
    vertex_of_card: tuple[int, ...]
    hidden: int
    count: int


@dataclass(frozen=True)
class ReconstructionOutcome:
    n: int
    ell: int
    rows: tuple[Outcome, ...]  # rows[r - 1]

    def __getitem__(self, r: int) -> Outcome:
        if not 1 <= r <= self.n:
            raise KeyError(r)
        return self.rows[r - 1]

    def items(self):
        return [(r, self.rows[r - 1]) for r in range(1, self.n + 1)]

    @property
    def blocked_size(self) -> int:
        return self.n - self.ell

    def is_complete(self) -> bool:
        return all(isinstance(o, Determined) for o in self.rows)

    def as_dict(self) -> dict:
        table = {}
        for r, o in self.items():
            if isinstance(o, Determined):
                table[str(r)] = {"count": o.count, "resolver": o.resolver, "status": "determined"}
            else:
                table[str(r)] = {"high": o.high, "low": o.low, "status": "two_candidates"}
        return {"ell": self.ell, "n": self.n, "results": table}


class DeckView:
    """A partial deck together with its degree profile and cached card statistics."""

    def __init__(self, deck: PartialDeck, profile: DegreeProfile | None = None):
        self.deck = deck
        self.profile = profile if profile is not None else reconstruct_degrees(deck)
        self.n = deck.n
        self.card_cliques = [clique_profile(c.graph) for c in deck.cards]
        self._sightings: dict[int, list[Sighting]] = {}

    @property
    def delta(self) -> int:
        return self.profile.max_degree

    @property
    def ell(self) -> int:
        return self.profile.ell

    @property
    def hidden_degree(self) -> int:
        return self.profile.hidden_degree

    def card_kr(self, i: int, r: int) -> int:
        row = self.card_cliques[i]
        return row[r] if r < len(row) else 0

    def kr_sum(self, r: int) -> int:
        return sum(self.card_kr(i, r) for i in range(len(self.deck.cards)))

    def owner(self, i: int) -> int:
        return self.profile.owner_degrees[i]

    def cards_of_degree(self, d: int) -> list[int]:
        return [i for i, od in enumerate(self.profile.owner_degrees) if od == d]

    def sightings(self, t: int) -> list[Sighting]:
        if t not in self._sightings:
            self._sightings[t] = collect_sightings(self.deck, self.profile, t)
        return self._sightings[t]

    def delta_sightings_on(self, i: int) -> list[Sighting]:
        return [s for s in self.sightings(self.delta) if s.card_index == i]

    def delta_vertices_form_clique(self) -> bool:
        """True iff no Delta-card shows a vertex of card-degree Delta.

        A non-adjacent pair of Delta-vertices always leaves such a trace: at
        most one of them is hidden, and the other one's card shows it.
        """
        return not any(self.owner(s.card_index) == self.delta for s in self.sightings(self.delta))


def collect_sightings(deck: PartialDeck, profile: DegreeProfile, t: int) -> list[Sighting]:
    """All card vertices of card-degree ``t``, valid only when G has no degree-(t+1) vertex."""
    if t + 1 in profile.degrees:
        raise ValueError(f"degree {t} does not identify full neighbourhoods: G has a degree-{t + 1} vertex")
    out = []
    for i, card in enumerate(deck.cards):
        h = card.graph
        for w in range(h.n):
            if h.degree(w) == t:
                out.append(Sighting(i, w, t, tuple(clique_degree_profile(h, w)[: deck.n])))
    return out


# --- shared arithmetic -----------------------------------------------------


def kr_degree_sequence(kr: int, view: DeckView, r: int) -> tuple[list[int], int]:
    """Per-card owner deg_r and the hidden vertex's deg_r, given the true K_r(G)."""
    per_card = [kr - view.card_kr(i, r) for i in range(len(view.deck.cards))]
    hidden = r * kr - sum(per_card)
    if min(per_card + [hidden]) < 0:
        raise NegativeDegree(f"K_{r} = {kr} gives a negative clique degree")
    return per_card, hidden


def kr_from_hidden_degree(hidden_deg_r: int, view: DeckView, r: int) -> int:
    """K_r(G) from the hidden vertex's deg_r: every K_r lies on n - r cards."""
    n = view.n
    if r > n - 2:
        raise ValueError(f"r = {r} > n - 2 has no hidden-degree formula")
    num = view.kr_sum(r) - hidden_deg_r
    den = n - r - 1
    if num % den or num < 0:
        raise NonDivisible(f"({num}) / {den} is not a clique count")
    return num // den


def _rebuild_count(view: DeckView, card_index: int, non_neighbors: set[int], r: int, tag: str) -> Determined:
    card = view.deck.cards[card_index].graph
    mask = card.vertex_mask
    for u in non_neighbors:
        mask &= ~(1 << u)
    return Determined(count_cliques(card.add_vertex(mask), r), tag)


# --- resolvers -------------------------------------------------------------


def resolver_zero(r: int, profile: DegreeProfile) -> Determined | None:
    if r > profile.max_degree + 1:
        return Determined(0, "zero")
    return None


def resolver_full(r: int, deck: PartialDeck) -> Determined | None:
    """r = n: G is complete iff three of its cards are."""
    if r != deck.n:
        return None
    complete = all(c.graph.is_complete() for c in deck.cards[:3])
    return Determined(int(complete), "full")


def resolver_spanning(r: int, deck: PartialDeck, profile: DegreeProfile) -> Determined | None:
    """r = n - 1: an (n-1)-clique sits on exactly one card, possibly the hidden one."""
    n = deck.n
    if r != n - 1:
        return None
    visible = sum(c.graph.is_complete() for c in deck.cards)
    hidden_complete = profile.m - profile.hidden_degree == comb(n - 1, 2)
    return Determined(visible + int(hidden_complete), "spanning")


def resolver_universal(view: DeckView, r: int, counts: dict[int, int]) -> Determined | None:
    """Delta = n - 1."""
    n = view.n
    if view.delta != n - 1 or r > n - 2:
        return None
    full = view.cards_of_degree(n - 1)
    if full:
        return _rebuild_count(view, full[0], set(), r, "universal:rebuild")
    # hidden vertex is the unique universal vertex, so deg_r(v_n) = K_{r-1}(G - v_n)
    if r - 1 not in counts:
        return None
    _, hidden_prev = kr_degree_sequence(counts[r - 1], view, r - 1)
    hidden = counts[r - 1] - hidden_prev
    return Determined(kr_from_hidden_degree(hidden, view, r), "universal:hidden")


def resolver_delta_n2(view: DeckView, r: int, lower_counts: dict[int, int]) -> Determined | None:
    """Delta = n - 2: every vertex of maximum degree has a unique non-neighbour."""
    n, delta, ell = view.n, view.delta, view.ell
    if delta != n - 2 or r > n - 2:
        return None
    sightings = view.sightings(delta)
    if ell == 1 and view.hidden_degree == delta:
        values = {s.deg(r) for s in sightings}
        if len(values) != 1:
            raise InternalContradiction("the unique max-degree vertex shows different clique degrees")
        return Determined(kr_from_hidden_degree(values.pop(), view, r), "delta_n2:unique")
    for s in sightings:
        if view.owner(s.card_index) == delta:
            return _rebuild_count(view, s.card_index, {s.card_vertex}, r, "delta_n2:rebuild")
    if view.hidden_degree < delta:
        if r - 1 not in lower_counts:
            return None
        k_prev = lower_counts[r - 1]
        per_card, hidden_prev = kr_degree_sequence(k_prev, view, r - 1)
        on_card = [0] * len(view.deck.cards)
        for s in sightings:
            on_card[s.card_index] += 1
        on_hidden = ell - sum(on_card)
        total = sum(view.card_kr(i, r) + view.card_kr(i, r - 1) for i in view.cards_of_degree(delta))
        total -= sum(d * c for d, c in zip(per_card, on_card)) + hidden_prev * on_hidden
        if total % ell:
            raise InternalContradiction(f"max-degree count sum {total} not divisible by ell = {ell}")
        return Determined(total // ell, "delta_n2:count")
    return None


def _shared_applicable(view: DeckView) -> bool:
    """True when every Delta-vertex is sighted, so D is complete."""
    n, delta = view.n, view.delta
    if delta <= n - 3:
        return True
    return delta == n - 2 and view.hidden_degree == delta and view.delta_vertices_form_clique()


def _delta_values(view: DeckView, r: int) -> list[int]:
    return sorted({s.deg(r) for s in view.sightings(view.delta)}, reverse=True)


def _sorted_delta_cards(view: DeckView, r: int) -> list[int]:
    # stable on certificate order, which is the deck's card order
    return sorted(view.cards_of_degree(view.delta), key=lambda i: view.card_kr(i, r))


def resolver_two_choices(view: DeckView, r: int) -> Determined | tuple[int, int] | None:
    """Pairs sorted Delta-cards against sorted clique degrees.

    Returns the count, or the candidate pair ``(A, B)`` with
    A = min D + max K_r(Delta-card) and B = max D + min K_r(Delta-card).
    """
    if not _shared_applicable(view) or r > view.n - 2:
        return None
    values = _delta_values(view, r)
    if not values:
        raise InternalContradiction("no sightings of maximum-degree vertices")
    cards = [view.card_kr(i, r) for i in view.cards_of_degree(view.delta)]
    if view.hidden_degree < view.delta:
        return Determined(min(values) + max(cards), "two_choices:all_visible")
    if view.ell == 1:
        return Determined(kr_from_hidden_degree(values[0], view, r), "two_choices:unique")
    a = min(values) + max(cards)
    b = max(values) + min(cards)
    if a == b:
        return Determined(a, "two_choices:agree")
    return a, b


def _largest_duplicate(view: DeckView, r: int, threshold: int) -> int | None:
    seen: dict[int, int] = {}
    for s in view.sightings(view.delta):
        seen[s.deg(r)] = seen.get(s.deg(r), 0) + 1
    dup = [d for d, c in seen.items() if c > threshold]
    return max(dup) if dup else None


def resolver_duplicates(view: DeckView, r: int, pair: tuple[int, int]) -> Determined | None:
    """Some deg_r value is shared by two Delta-vertices (|D| < ell)."""
    n, delta, ell = view.n, view.delta, view.ell
    if view.hidden_degree != delta or not _shared_applicable(view):
        return None
    values = _delta_values(view, r)
    if len(values) >= ell:
        return None
    sightings = view.sightings(delta)
    if delta == n - 3:
        total = len(sightings)
        if total == 2 * ell - 2:
            return _delta_n3_tight(view, r)
        if total not in (2 * ell, 2 * ell - 1):
            raise InternalContradiction(f"{total} max-degree sightings with ell = {ell}")
        d = _largest_duplicate(view, r, 2)
    else:
        # each Delta-vertex shows up n-1-Delta or n-2-Delta times
        d = _largest_duplicate(view, r, n - delta - 1)
    if d is None:
        raise InternalContradiction("|D| < ell but no duplicated clique degree found")
    cards = [view.card_kr(i, r) for i in _sorted_delta_cards(view, r)]
    i = 1 + sum(v > d for v in values)  # rank of the first vertex with deg_r = d
    if i == 1:
        # the top value is shared, so the hidden vertex is the unique minimiser
        return Determined(d + cards[0], "duplicates:top")
    if cards[i - 2] == cards[i - 1]:
        return Determined(d + cards[i - 2], "duplicates:shifted")
    return Determined(values[i - 2] + cards[i - 2], "duplicates:aligned")


def _delta_n3_tight(view: DeckView, r: int) -> Determined:
    """Delta = n - 3 and both non-neighbours of the hidden vertex have degree Delta."""
    delta = view.delta
    by_card: dict[int, list[Sighting]] = {}
    for s in view.sightings(delta):
        by_card.setdefault(s.card_index, []).append(s)
    for i in view.cards_of_degree(delta):
        seen = by_card.get(i, [])
        if len(seen) == 2:
            return _rebuild_count(view, i, {s.card_vertex for s in seen}, r, "duplicates:rebuild")
    on_delta = {s.deg(r) for s in view.sightings(delta) if view.owner(s.card_index) == delta}
    on_lower = {s.deg(r) for s in view.sightings(delta) if view.owner(s.card_index) < delta}
    found = on_delta - on_lower
    if len(found) != 1:
        raise IdentificationAmbiguous(f"hidden clique degree candidates {sorted(found)} at r = {r}")
    return Determined(kr_from_hidden_degree(found.pop(), view, r), "duplicates:identify")


def assignment_hypotheses(view: DeckView, r: int) -> list[AssignmentHypothesis]:
    """The red (hidden = lowest deg_r) and blue (hidden = highest deg_r) pairings."""
    values = _delta_values(view, r)
    cards = _sorted_delta_cards(view, r)
    k = len(cards)
    red = AssignmentHypothesis("red", tuple(range(k)), k, values[0] + view.card_kr(cards[0], r))
    blue = AssignmentHypothesis("blue", tuple(range(1, k + 1)), 0, values[-1] + view.card_kr(cards[-1], r))
    return [red, blue]


def hypothesis_violations(
    view: DeckView, r: int, hyp: AssignmentHypothesis, counts: dict[int, int]
) -> list[str]:
    """Names of the filters that rule out ``hyp``; empty if it survives.

    ``coverage``: some card does not sum to the hypothesis' count.
    ``symmetry``: a sighting is not mirrored on the sighted vertex's card,
    or a vertex is sighted on its own card.
    ``profile``: the owner's clique degrees at another known size disagree
    with the sighted vertex's.
    """
    values = _delta_values(view, r)
    rank = {v: i for i, v in enumerate(values)}
    cards = _sorted_delta_cards(view, r)
    card_of_vertex = {v: j for j, v in enumerate(hyp.vertex_of_card)}
    failed = []

    if any(values[hyp.vertex_of_card[j]] + view.card_kr(ci, r) != hyp.count for j, ci in enumerate(cards)):
        failed.append("coverage")

    def mirrored() -> bool:
        for j, ci in enumerate(cards):
            owner = hyp.vertex_of_card[j]
            for s in view.delta_sightings_on(ci):
                seen = rank[s.deg(r)]
                if seen == owner:
                    return False
                if seen == hyp.hidden:
                    continue
                back = cards[card_of_vertex[seen]]
                if not any(t.deg(r) == values[owner] for t in view.delta_sightings_on(back)):
                    return False
        return True

    if not mirrored():
        failed.append("symmetry")

    profile_of: dict[int, Sighting] = {}
    for s in view.sightings(view.delta):
        profile_of.setdefault(rank[s.deg(r)], s)

    def profiles_match() -> bool:
        for r2, k2 in counts.items():
            if r2 == r or not 3 <= r2 <= view.n - 1:
                continue
            for j, ci in enumerate(cards):
                if k2 - view.card_kr(ci, r2) != profile_of[hyp.vertex_of_card[j]].deg(r2):
                    return False
            _, hidden2 = kr_degree_sequence(k2, view, r2)
            if hidden2 != profile_of[hyp.hidden].deg(r2):
                return False
        return True

    if not profiles_match():
        failed.append("profile")
    return failed


def resolver_redblue(
    view: DeckView, r: int, pair: tuple[int, int], all_other_counts: dict[int, int]
) -> Determined | None:
    """Distinct deg_r among Delta-vertices: test both candidate pairings."""
    if view.hidden_degree != view.delta or not _shared_applicable(view):
        return None
    if len(_delta_values(view, r)) != view.ell or view.ell < 2:
        return None
    alive = [h for h in assignment_hypotheses(view, r) if not hypothesis_violations(view, r, h, all_other_counts)]
    if not alive:
        raise InternalContradiction(f"both pairings eliminated at r = {r}")
    if len(alive) == 1:
        if alive[0].count not in pair:
            raise InternalContradiction("surviving pairing disagrees with the candidate pair")
        return Determined(alive[0].count, "redblue")
    return None


def resolver_hole(view: DeckView, r: int) -> Determined | None:
    """Degree sequence with a gap: use degree-(a-1) vertices like maximum-degree ones."""
    holes = view.profile.holes
    if not holes or r > view.n - 2:
        return None
    t = holes[0] - 1
    if view.hidden_degree == t:
        return None
    values = [s.deg(r) for s in view.sightings(t)]
    cards = [view.card_kr(i, r) for i in view.cards_of_degree(t)]
    if not values or not cards:
        raise InternalContradiction(f"degree {t} is present but never sighted")
    return Determined(min(values) + max(cards), "hole")


def resolver_maxdeg_clique(view: DeckView, r: int) -> Determined | None:
    """Double count r-cliques rooted at maximum-degree vertices.

    Needs Delta <= n - 2, a hidden vertex of maximum degree, and the
    maximum-degree vertices pairwise adjacent; returns ``None`` otherwise.
    Raises :class:`BlockedCase` when n - r - ell = 0.
    """
    n, delta, ell = view.n, view.delta, view.ell
    if delta > n - 2 or view.hidden_degree != delta or r > n - 2:
        return None
    if not view.delta_vertices_form_clique():
        return None
    if n - r - ell == 0:
        raise BlockedCase(f"r = {r} = n - ell")
    low = sum(view.card_kr(i, r) for i in range(len(view.deck.cards)) if view.owner(i) < delta)
    rooted = Fraction(sum(s.deg(r) for s in view.sightings(delta)), n - 1 - delta)
    value = (low - rooted) / (n - r - ell)
    if value.denominator != 1 or value < 0:
        raise InternalContradiction(f"rooted-clique count gives {value}")
    return Determined(int(value), "maxdeg_clique")


# --- orchestration ---------------------------------------------------------


@dataclass
class _Open:
    pair: tuple[int, int]
    blocked: bool


def _resolve(view: DeckView, r: int, counts: dict[int, int]) -> Determined | _Open:
    n = view.n
    for attempt in (
        lambda: resolver_zero(r, view.profile),
        lambda: resolver_full(r, view.deck),
        lambda: resolver_spanning(r, view.deck, view.profile),
        lambda: resolver_universal(view, r, counts),
        lambda: resolver_delta_n2(view, r, counts),
    ):
        got = attempt()
        if got is not None:
            return got
    if r > n - 2:
        raise InternalContradiction(f"no resolver for r = {r}")
    got = resolver_two_choices(view, r)
    if got is None:
        raise InternalContradiction(f"shared resolvers inapplicable at r = {r}")
    if isinstance(got, Determined):
        return got
    pair = got
    for attempt in (
        lambda: resolver_duplicates(view, r, pair),
        lambda: resolver_redblue(view, r, pair, counts),
        lambda: resolver_hole(view, r),
    ):
        got = attempt()
        if got is not None:
            return got
    try:
        got = resolver_maxdeg_clique(view, r)
    except BlockedCase:
        return _Open(pair, blocked=True)
    if got is not None:
        return got
    return _Open(pair, blocked=False)


def _all_values(view: DeckView, r: int, counts: dict[int, int]) -> dict[str, int]:
    """Every resolver whose preconditions hold, for cross-checking."""
    out = {}
    simple = [
        resolver_zero(r, view.profile),
        resolver_full(r, view.deck),
        resolver_spanning(r, view.deck, view.profile),
        resolver_universal(view, r, counts),
        resolver_delta_n2(view, r, counts),
        resolver_hole(view, r),
    ]
    try:
        simple.append(resolver_maxdeg_clique(view, r))
    except BlockedCase:
        pass
    two = resolver_two_choices(view, r)
    if isinstance(two, tuple):
        simple.append(resolver_duplicates(view, r, two))
        simple.append(resolver_redblue(view, r, two, counts))
    else:
        simple.append(two)
    for got in simple:
        if got is not None:
            out[got.resolver] = got.count
    return out


def reconstruct_all(
    deck: PartialDeck, profile: DegreeProfile | None = None, *, cross_check: bool = False
) -> ReconstructionOutcome:
    """Clique counts K_1..K_n of the unknown graph behind ``deck``.

    With ``cross_check`` every applicable resolver runs at every size and
    disagreement raises :class:`InternalContradiction`.
    """
    view = DeckView(deck, profile)
    n = view.n
    prof = view.profile
    rows: dict[int, Outcome] = {1: Determined(n, "vertices"), 2: Determined(prof.m, "edges")}
    counts = {1: n, 2: prof.m}
    open_rows: dict[int, _Open] = {}
    for r in range(3, n + 1):
        got = _resolve(view, r, counts)
        if isinstance(got, Determined):
            rows[r] = got
            counts[r] = got.count
        else:
            open_rows[r] = got
    for r, pending in open_rows.items():
        got = resolver_redblue(view, r, pending.pair, counts)
        if got is not None:
            rows[r] = Determined(got.count, "redblue:deferred")
            counts[r] = got.count
        elif r == n - view.ell:
            rows[r] = TwoCandidates(min(pending.pair), max(pending.pair))
        else:
            reason = "blocked" if pending.blocked else "max-degree vertices not a clique"
            raise InternalContradiction(f"r = {r} left open ({reason}) although r != n - ell")
    if cross_check:
        for r in range(3, n + 1):
            values = _all_values(view, r, counts)
            if r in counts:
                values["final"] = counts[r]
            if len(set(values.values())) > 1:
                raise InternalContradiction(f"resolvers disagree at r = {r}: {values}")
    return ReconstructionOutcome(n=n, ell=view.ell, rows=tuple(rows[r] for r in range(1, n + 1)))
