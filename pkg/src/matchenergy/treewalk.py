"""Closed walks, their minimal-walk factors, and tree-like walk counts.

A closed walk is written as its vertex sequence ``(w_0, ..., w_k)`` with
``w_k == w_0``.  Factors are peeled off one at a time: find the earliest
index ``j`` such that ``w_j`` repeats some ``w_i`` (``i < j``) while
``w_i..w_{j-1}`` are pairwise distinct; that segment ``w_i..w_j`` is the
first minimal closed walk.  Delete ``w_{i+1}..w_j`` and repeat.

Because the prefix before a repeat is always a simple path, this peeling is
a chronological loop erasure, which lets :func:`count_tree_like` decide
tree-likeness while the walk is being extended.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterator, Sequence

import numpy as np

from .errors import DomainError, ResourceError
from .graph import Graph
from .mpoly import MatchingPolynomial, dense_coefficients

DEFAULT_BUDGET = 50_000_000


@dataclass(frozen=True)
class ClosedWalk:
    vertices: tuple

    def __post_init__(self):
        vs = tuple(self.vertices)
        if not vs:
            raise DomainError("a walk has at least one vertex")
        if vs[0] != vs[-1]:
            raise DomainError(f"walk is not closed: {vs[0]!r} != {vs[-1]!r}")
        for a, b in zip(vs, vs[1:]):
            if a == b:
                raise DomainError(f"walk steps from {a!r} to itself")
        object.__setattr__(self, "vertices", vs)

    def __len__(self) -> int:
        return len(self.vertices) - 1

    def check_in(self, g: Graph) -> None:
        for a, b in zip(self.vertices, self.vertices[1:]):
            if not g.has_edge(a, b):
                raise DomainError(f"({a}, {b}) is not an edge")


def _as_walk(walk) -> ClosedWalk:
    return walk if isinstance(walk, ClosedWalk) else ClosedWalk(tuple(walk))


def first_minimal(vertices: Sequence[Hashable]) -> tuple[int, int] | None:
    """Indices ``(i, j)`` of the first minimal closed walk, or None if length 0."""
    pos: dict = {}
    for j, v in enumerate(vertices):
        if v in pos:
            return pos[v], j
        pos[v] = j
    return None


def decompose_factors(walk) -> list[ClosedWalk]:
    """Factors of a closed walk in extraction order; lengths sum to ``len(walk)``."""
    w = list(_as_walk(walk).vertices)
    out = []
    while len(w) > 1:
        i, j = first_minimal(w)
        out.append(ClosedWalk(tuple(w[i : j + 1])))
        del w[i + 1 : j + 1]
    return out


def is_tree_like(walk) -> bool:
    return all(len(f) == 2 for f in decompose_factors(walk))


def enumerate_closed_walks(g: Graph, k: int) -> Iterator[tuple[int, ...]]:
    """Every closed walk of length ``k >= 1`` in ``g`` as a vertex tuple."""
    nbrs = [g.neighbors(v) for v in range(g.n)]

    def extend(walk):
        if len(walk) == k:
            if walk[0] in nbrs[walk[-1]]:
                yield tuple(walk) + (walk[0],)
            return
        for w in nbrs[walk[-1]]:
            walk.append(w)
            yield from extend(walk)
            walk.pop()

    for s in range(g.n):
        yield from extend([s])


def count_tree_like(g: Graph, k: int, budget: int = DEFAULT_BUDGET) -> int:
    """Number of tree-like closed walks of length ``k`` in ``g``.

    Depth-first over all closed walks from every start vertex.  The stack
    carries the loop-erased prefix; a step onto a vertex of that prefix closes
    a factor, and a factor of length other than two can never be undone, so
    such branches are cut.  ``budget`` bounds the number of visited prefixes.
    """
    if k < 0:
        raise DomainError("k must be nonnegative")
    if k == 0:
        return g.n
    nbrs = [g.neighbors(v) for v in range(g.n)]
    visited = 0
    total = 0
    for s in range(g.n):
        # frame: (steps taken, loop-erased path)
        stack = [(0, (s,))]
        while stack:
            steps, erased = stack.pop()
            visited += 1
            if visited > budget:
                raise ResourceError(f"walk enumeration exceeded {budget} prefixes")
            if steps == k:
                if len(erased) == 1:
                    total += 1
                continue
            remaining = k - steps
            for w in nbrs[erased[-1]]:
                if len(erased) >= 2 and w == erased[-2]:
                    nxt = erased[:-1]
                elif w in erased:
                    continue  # closes a factor of length >= 3
                else:
                    nxt = erased + (w,)
                # must still be able to retrace to the start
                if len(nxt) - 1 <= remaining - 1:
                    stack.append((steps + 1, nxt))
    return total


def count_closed_walks(g: Graph, k: int) -> int:
    """trace(A^k), exact."""
    if g.n == 0:
        return 0
    a = np.zeros((g.n, g.n), dtype=object)
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1
    power = np.identity(g.n, dtype=int).astype(object)
    for _ in range(k):
        power = power.dot(a)
    return int(np.trace(power))


def power_sums(poly: MatchingPolynomial, K: int) -> list[int]:
    """Exact ``[p_1, ..., p_K]`` with ``p_k = sum_i x_i**k`` over matching roots.

    Newton's identities on the elementary symmetric functions of the roots,
    read off m(G, x) = sum_j c_j x^(n-j): e_j = (-1)**j c_j.
    """
    if K < 1:
        raise DomainError("K must be at least 1")
    c = dense_coefficients(poly)
    n = poly.n
    e = [(-1) ** j * c[j] if j <= n else 0 for j in range(K + 1)]
    p = [0] * (K + 1)
    for k in range(1, K + 1):
        acc = (-1) ** (k - 1) * k * e[k] if k <= n else 0
        for i in range(1, k):
            if e[i]:
                acc += (-1) ** (i - 1) * e[i] * p[k - i]
        p[k] = acc
    return p[1:]
