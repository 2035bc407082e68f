from __future__ import annotations

import itertools
import random

import pytest

from matchenergy.graph import Graph, gen_gnp
from matchenergy.rng import SeedSpec


def brute_force_counts(g: Graph) -> tuple[int, ...]:
    """m_k by enumerating every edge subset and keeping the matchings."""
    counts = [0] * (g.n // 2 + 1)
    for r in range(len(counts)):
        for subset in itertools.combinations(g.edges, r):
            ends = [v for e in subset for v in e]
            if len(ends) == len(set(ends)):
                counts[r] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return tuple(counts)


def all_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for i, e in enumerate(pairs) if mask >> i & 1])


def random_graphs(count: int, n_values, seed: int = 0):
    rnd = random.Random(seed)
    for i in range(count):
        n = rnd.choice(list(n_values))
        p = rnd.uniform(0.1, 0.9)
        yield gen_gnp(n, p, SeedSpec(seed, (n, i)))


@pytest.fixture(scope="session")
def small_corpus():
    """Every graph on <= 5 vertices plus 150 random graphs on 6..10 vertices."""
    graphs = [g for n in range(0, 6) for g in all_graphs(n)]
    graphs.extend(random_graphs(150, range(6, 11), seed=11))
    return graphs


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def report(request):
    """Record one PASS/FAIL line for an acceptance criterion and assert it."""

    def _report(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        request.config.stash.setdefault(ACCEPTANCE, []).append(line)
        print(line)
        assert ok, line

    return _report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
