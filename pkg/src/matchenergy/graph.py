"""Simple undirected graphs on dense 0-indexed vertices.

Adjacency rows are Python integers used as bitsets (bit ``v`` of ``adj[u]``
is set iff ``uv`` is an edge).  Graphs are immutable values.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError, NotFoundError, ParseError
from .rng import SeedSpec, as_seed


def _popcount(x: int) -> int:
    return bin(x).count("1")


def iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 0:
            raise DomainError(f"vertex count must be nonnegative, got {n}")
        adj = [0] * n
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) out of range for n={n}")
            if u > v:
                u, v = v, u
            if (u, v) in norm:
                raise DomainError(f"duplicate edge ({u}, {v})")
            norm.add((u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), tuple(sorted(norm)))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls.from_edges(n, ())

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return _popcount(self.adj[v])

    def max_degree(self) -> int:
        return max((_popcount(a) for a in self.adj), default=0)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and bool(self.adj[u] >> v & 1)

    def check(self) -> None:
        """Assert the structural invariants; raises AssertionError on violation."""
        assert len(self.adj) == self.n
        for v, row in enumerate(self.adj):
            assert not row >> v & 1, f"loop at {v}"
            assert row >> self.n == 0, f"row {v} out of range"
            for u in iter_bits(row):
                assert self.adj[u] >> v & 1, f"asymmetric pair {u},{v}"
        assert 2 * len(self.edges) == sum(_popcount(a) for a in self.adj)
        for u, v in self.edges:
            assert u < v and self.adj[u] >> v & 1

    def is_forest(self) -> bool:
        return self.m == self.n - len(components(self))

    def is_complete(self) -> bool:
        return 2 * self.m == self.n * (self.n - 1)

    def disjoint_union(self, other: Graph) -> Graph:
        shift = self.n
        return Graph.from_edges(
            self.n + other.n,
            list(self.edges) + [(u + shift, v + shift) for u, v in other.edges],
        )

    def adjacency_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n))
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1.0
        return a


# ---------------------------------------------------------------------------
# generators


def gen_gnp(n: int, p: float, seed: SeedSpec | int) -> Graph:
    """Erdős–Rényi G(n, p).

    Pairs ``(u, v)``, ``u < v``, are visited in lexicographic order and each
    consumes exactly one uniform variate, so the edge set is a pure function
    of the derived stream.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    if n < 0:
        raise DomainError(f"vertex count must be nonnegative, got {n}")
    rng = as_seed(seed).stream()
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v))
    return Graph.from_edges(n, edges)


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise DomainError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def star(n: int) -> Graph:
    """Star on ``n`` vertices: centre 0 joined to 1..n-1."""
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def random_tree(n: int, seed: SeedSpec | int) -> Graph:
    """Uniform labelled tree on ``n`` vertices via a random Prüfer sequence."""
    if n < 1:
        raise DomainError(f"random_tree needs n >= 1, got {n}")
    if n == 1:
        return Graph.empty(1)
    rng = as_seed(seed).stream()
    seq = [rng.randbelow(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# structure


def delete_edge(g: Graph, e: tuple[int, int]) -> Graph:
    u, v = sorted(e)
    if not g.has_edge(u, v):
        raise NotFoundError(f"edge ({u}, {v}) not in graph")
    return Graph.from_edges(g.n, [f for f in g.edges if f != (u, v)])


def delete_vertices(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on the remaining vertices, relabelled in order.

    Returns the subgraph and the map from new labels to old labels.
    """
    drop = set(vertices)
    keep = [v for v in range(g.n) if v not in drop]
    return induced(g, keep), keep


def induced(g: Graph, vertices: list[int]) -> Graph:
    index = {v: i for i, v in enumerate(vertices)}
    edges = [
        (index[u], index[v]) for u, v in g.edges if u in index and v in index
    ]
    return Graph.from_edges(len(vertices), edges)


def components(g: Graph) -> list[tuple[list[int], Graph]]:
    """Connected components as ``(vertex map, induced graph)`` pairs.

    The vertex map lists original labels in increasing order; position ``i``
    is the original label of vertex ``i`` in the induced graph.  Components
    are ordered by their smallest vertex.
    """
    seen = 0
    out = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = 1 << s
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        verts = list(iter_bits(comp))
        out.append((verts, induced(g, verts)))
    return out


# ---------------------------------------------------------------------------
# edge-list text format


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"`` with ``0 <= u < v < n``."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("missing header", 1)
    header = lines[0].split(" ")
    if len(header) != 2 or not all(tok.isdigit() for tok in header):
        raise ParseError(f"malformed header {lines[0]!r}", 1)
    n, m = int(header[0]), int(header[1])
    if len(lines) - 1 != m:
        raise ParseError(f"header announces {m} edges, found {len(lines) - 1}", 1)
    edges = []
    seen = set()
    for lineno, line in enumerate(lines[1:], start=2):
        toks = line.split(" ")
        if len(toks) != 2 or not all(tok.isdigit() for tok in toks):
            raise ParseError(f"malformed edge line {line!r}", lineno)
        u, v = int(toks[0]), int(toks[1])
        if u == v:
            raise ParseError(f"loop at vertex {u}", lineno)
        if u > v:
            raise ParseError(f"edge must be written u < v, got {u} {v}", lineno)
        if v >= n:
            raise ParseError(f"vertex {v} out of range for n={n}", lineno)
        if (u, v) in seen:
            raise ParseError(f"duplicate edge {u} {v}", lineno)
        seen.add((u, v))
        edges.append((u, v))
    return Graph.from_edges(n, edges)
