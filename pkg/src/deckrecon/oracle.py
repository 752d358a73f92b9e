"""Ground truth and the verification harness.

``brute_force_kr`` is deliberately naive (scan all r-subsets) so that it
shares nothing with the bitset counter in :mod:`deckrecon.graph`.
"""

from __future__ import annotations

import csv
import io
import json
import os
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator

from .canon import canonical_certificate, canonical_form
from .cliques import Determined, reconstruct_all
from .deck import partial_deck
from .degrees import reconstruct_degrees
from .errors import DeckReconError, TooLarge
from .graph import Graph, emit_graph6, parse_graph6

BUILTIN_MAX_ORDER = 7
THREADS_ENV = "DECKRECON_THREADS"


def brute_force_kr(g: Graph, r: int) -> int:
    if g.n > 16 and r > 4:
        raise TooLarge(f"brute force over {g.n}-vertex {r}-subsets is too slow")
    if r < 1:
        raise ValueError("clique size must be >= 1")
    adj = [[g.has_edge(u, v) for v in range(g.n)] for u in range(g.n)]
    total = 0
    for subset in combinations(range(g.n), r):
        if all(adj[u][v] for u, v in combinations(subset, 2)):
            total += 1
    return total


def _extend_classes(reps: list[Graph]) -> list[Graph]:
    seen: dict[bytes, Graph] = {}
    for h in reps:
        for mask in range(1 << h.n):
            g = h.add_vertex(mask)
            seen.setdefault(canonical_certificate(g), g)
    return [seen[c] for c in sorted(seen)]


def read_corpus(path) -> list[Graph]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [parse_graph6(ln) for ln in lines if ln.strip()]


def enumerate_graphs(n: int, corpus=None) -> Iterator[Graph]:
    """One canonical representative per isomorphism class of order ``n``.

    Orders up to 7 are generated here: every order-n graph is some
    order-(n-1) class plus one vertex, so extending all classes by every
    neighbourhood and deduplicating by certificate is complete.  Larger
    orders need a corpus file of graph6 lines.
    """
    if corpus is not None:
        seen: dict[bytes, Graph] = {}
        for g in read_corpus(corpus):
            if g.n == n:
                seen.setdefault(canonical_certificate(g), g)
        for cert in sorted(seen):
            yield canonical_form(seen[cert])
        return
    if n > BUILTIN_MAX_ORDER:
        raise TooLarge(f"built-in enumeration stops at n = {BUILTIN_MAX_ORDER}; pass a corpus")
    if n < 1:
        raise ValueError("order must be >= 1")
    reps = [Graph.empty(1)]
    for _ in range(n - 1):
        reps = _extend_classes(reps)
    for g in reps:
        yield canonical_form(g)


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


# --- per-instance verification ---------------------------------------------


@dataclass
class InstanceRecord:
    graph6: str
    hidden: int
    n: int
    max_degree: int
    ell: int
    degrees_ok: bool = True
    resolvers: list[str] = field(default_factory=list)
    determined: int = 0
    two_candidates: list[dict] = field(default_factory=list)
    mismatches: list[dict] = field(default_factory=list)

    @property
    def decided(self) -> int:
        return self.determined + len(self.two_candidates)


def verify_instance(g: Graph, hidden: int, max_r: int | None = None) -> InstanceRecord:
    """Reconstruct from ``g``'s deck without card ``hidden`` and compare with ground truth."""
    code = emit_graph6(g)
    degs = g.degrees()
    delta = max(degs)
    rec = InstanceRecord(code, hidden, g.n, delta, degs.count(delta))
    top = g.n if max_r is None else min(max_r, g.n)
    deck = partial_deck(g, hidden)

    def miss(kind: str, r=None, expected=None, got=None) -> None:
        rec.mismatches.append(
            {"expected": expected, "got": got, "graph6": code, "hidden": hidden, "kind": kind, "r": r}
        )

    try:
        prof = reconstruct_degrees(deck)
    except DeckReconError as exc:
        rec.degrees_ok = False
        miss(type(exc).__name__)
        return rec
    if prof.m != g.edge_count or prof.hidden_degree != degs[hidden] or sorted(prof.degrees) != sorted(degs):
        rec.degrees_ok = False
        miss("degrees", expected=sorted(degs, reverse=True), got=list(prof.degrees))
        return rec
    try:
        outcome = reconstruct_all(deck, prof)
    except DeckReconError as exc:
        miss(type(exc).__name__, got=str(exc))
        return rec
    truth = 1
    for r in range(2, top + 1):
        row = outcome[r]
        # no r-clique means no larger clique either
        truth = brute_force_kr(g, r) if truth else 0
        if isinstance(row, Determined):
            rec.determined += 1
            rec.resolvers.append(row.resolver)
            if row.count != truth:
                miss("determined", r, truth, row.count)
        else:
            rec.two_candidates.append(
                {"graph6": code, "hidden": hidden, "high": row.high, "low": row.low, "r": r, "truth": truth}
            )
            if r != g.n - rec.ell:
                miss("two_candidates_off_blocked_size", r, truth, [row.low, row.high])
            elif truth not in (row.low, row.high):
                miss("two_candidates_excludes_truth", r, truth, [row.low, row.high])
    return rec


def _verify_job(job: tuple[str, int, int | None]) -> InstanceRecord:
    code, hidden, max_r = job
    return verify_instance(parse_graph6(code), hidden, max_r)


# --- reports ---------------------------------------------------------------


@dataclass
class VerificationReport:
    n: int
    graphs: int
    instances: int
    decided: int
    determined: int
    resolver_histogram: dict[str, int]
    two_candidates: list[dict]
    mismatches: list[dict]
    seconds: float
    mode: str = "exhaustive"

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        # field order is part of the format
        return {
            "n": self.n,
            "totals": {
                "decided": self.decided,
                "determined": self.determined,
                "graphs": self.graphs,
                "instances": self.instances,
                "mismatches": len(self.mismatches),
                "mode": self.mode,
                "two_candidates": len(self.two_candidates),
            },
            "resolver_histogram": dict(sorted(self.resolver_histogram.items())),
            "two_candidates": self.two_candidates,
            "mismatches": self.mismatches,
            "seconds": round(self.seconds, 3),
        }

    def to_json(self, *, with_time: bool = True) -> str:
        data = self.to_dict()
        if not with_time:
            data.pop("seconds")
        return json.dumps(data, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "mode", "graphs", "instances", "decided", "determined", "two_candidates", "mismatches", "seconds"])
        w.writerow(
            [self.n, self.mode, self.graphs, self.instances, self.decided, self.determined,
             len(self.two_candidates), len(self.mismatches), f"{self.seconds:.3f}"]
        )
        return buf.getvalue()


def worker_count(workers: int | None = None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return 1


def _run(jobs: list[tuple[str, int, int | None]], workers: int) -> list[InstanceRecord]:
    if workers <= 1 or len(jobs) < 2:
        return [_verify_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_verify_job, jobs, chunksize=max(1, len(jobs) // (8 * workers))))


def _summarize(n: int, graphs: int, records: list[InstanceRecord], seconds: float, mode: str) -> VerificationReport:
    records = sorted(records, key=lambda rec: (rec.graph6, rec.hidden))
    hist: Counter = Counter()
    two: list[dict] = []
    bad: list[dict] = []
    for rec in records:
        hist.update(rec.resolvers)
        two += rec.two_candidates
        bad += rec.mismatches
    key = lambda d: (d["graph6"], d["hidden"], d["r"] if d["r"] is not None else -1)
    return VerificationReport(
        n=n,
        graphs=graphs,
        instances=len(records),
        decided=sum(rec.decided for rec in records),
        determined=sum(rec.determined for rec in records),
        resolver_histogram=dict(hist),
        two_candidates=sorted(two, key=key),
        mismatches=sorted(bad, key=key),
        seconds=seconds,
        mode=mode,
    )


def verify_graphs(graphs: Iterable[Graph], n: int, *, workers: int | None = None, mode: str = "corpus") -> VerificationReport:
    start = time.perf_counter()
    codes = [emit_graph6(g) for g in graphs]
    jobs = [(code, v, None) for code in codes for v in range(n)]
    records = _run(jobs, worker_count(workers))
    return _summarize(n, len(codes), records, time.perf_counter() - start, mode)


def verify_exhaustive(n: int, corpus=None, *, workers: int | None = None) -> VerificationReport:
    """Every isomorphism class of order ``n`` with every hidden vertex."""
    start = time.perf_counter()
    graphs = list(enumerate_graphs(n, corpus))
    report = verify_graphs(graphs, n, workers=workers, mode="exhaustive" if corpus is None else "corpus")
    report.seconds = time.perf_counter() - start
    return report


def random_instances(
    n: int, samples: int, p: float, seed: int, *, max_average_degree: float | None = None
) -> list[tuple[Graph, int]]:
    """Seeded Erdős–Rényi graphs with a random hidden vertex each.

    With ``max_average_degree`` graphs above the bound are redrawn.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < samples:
        g = random_graph(n, p, rng)
        if max_average_degree is not None and 2 * g.edge_count > max_average_degree * n:
            continue
        out.append((g, rng.randrange(n)))
    return out


def verify_random(
    n: int,
    samples: int,
    edge_probability: float,
    seed: int,
    *,
    max_r: int | None = None,
    max_average_degree: float | None = None,
    workers: int | None = None,
) -> VerificationReport:
    start = time.perf_counter()
    cases = random_instances(n, samples, edge_probability, seed, max_average_degree=max_average_degree)
    jobs = [(emit_graph6(g), v, max_r) for g, v in cases]
    records = _run(jobs, worker_count(workers))
    return _summarize(n, samples, records, time.perf_counter() - start, "random")
