from __future__ import annotations

import random
from pathlib import Path

import pytest

from deckrecon.graph import Graph, complete_minus, cycle, disjoint_union, star, wheel

DATA = Path(__file__).parent / "data"


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    if p is None:
        p = rng.random()
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_perm(rng: random.Random, n: int) -> list[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def named():
    return {
        "K4": Graph.complete(4),
        "K7": Graph.complete(7),
        "C5": cycle(5),
        "C7": cycle(7),
        "star6": star(6),
        "W6": wheel(7),
        "E7": Graph.empty(7),
        "K4+3K1": disjoint_union(Graph.complete(4), Graph.empty(3)),
        "K5+2K1": disjoint_union(Graph.complete(5), Graph.empty(2)),
        "K7-e": complete_minus(7, [(0, 1)]),
        # K7 minus a 2-edge path a-b-c and two disjoint edges; b = 1 has degree 4
        "K7-(P3+2K2)": complete_minus(7, [(0, 1), (1, 2), (3, 4), (5, 6)]),
        "K6+pendant": Graph.complete(6).add_vertex(1),
    }


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.VERDICTS:
            terminalreporter.write_line(line)
