"""Exact matching numbers m_k(G).

A :class:`MatchingPolynomial` stores the nonnegative sequence
``(m_0, m_1, ..., m_{n//2})``; the polynomial itself is
``sum_k (-1)**k * m_k * x**(n - 2k)`` and signs only appear in
:func:`evaluate`, :func:`dense_coefficients` and :func:`derivative`.

Engines
-------
``counts_subset_dp``
    Vertex-subset dynamic programme over reachable subsets (numba int64
    kernel when the result provably fits, Python integers otherwise).
``counts_complement``
    Inclusion-exclusion against K_n; cheap for graphs denser than 1/2.
``counts_edge_recursion``
    Edge deletion/contraction with component splitting and memoisation.
``counts_forest``
    Two-state rooted tree accumulation; forests only.
``closed_form`` / ``complete_by_recurrence``
    Formulas for paths, cycles and complete graphs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb, factorial
from typing import Sequence

import numba
import numpy as np

from .errors import CapacityError, DomainError, ResourceError
from .graph import Graph, components, iter_bits

DEFAULT_DP_CAP = 26
_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class MatchingPolynomial:
    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = [int(c) for c in self.coeffs]
        # stored without trailing zeros; m(k) reads 0 past the end
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        coeffs = tuple(coeffs)
        if len(coeffs) > self.n // 2 + 1:
            raise DomainError(f"m_k must vanish for k > {self.n // 2}")
        if not coeffs or coeffs[0] != 1:
            raise DomainError("m_0 must equal 1")
        if any(c < 0 for c in coeffs):
            raise DomainError("matching numbers are nonnegative")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return self.n

    @property
    def matching_number(self) -> int:
        """Largest k with m_k > 0."""
        return len(self.coeffs) - 1

    def m(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def total(self) -> int:
        """Hosoya index: total number of matchings."""
        return sum(self.coeffs)

    def to_json(self) -> dict:
        return {"n": self.n, "m": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> MatchingPolynomial:
        return cls(int(obj["n"]), tuple(int(c) for c in obj["m"]))


def _trim(coeffs: Sequence[int], n: int) -> MatchingPolynomial:
    return MatchingPolynomial(n, tuple(coeffs))


def convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def product(p: MatchingPolynomial, q: MatchingPolynomial) -> MatchingPolynomial:
    """Matching polynomial of a disjoint union."""
    return _trim(convolve(p.coeffs, q.coeffs), p.n + q.n)


def telephone(n: int) -> int:
    """Number of matchings of K_n (involutions of an n-set)."""
    a, b = 1, 1
    for i in range(1, n):
        a, b = b, b + i * a
    return b if n >= 1 else 1


# ---------------------------------------------------------------------------
# subset DP


def counts_subset_dp(g: Graph, cap: int = DEFAULT_DP_CAP) -> MatchingPolynomial:
    """Matching numbers by a DP over reachable vertex subsets.

    With ``u`` the lowest vertex of the remaining set ``S``,

        m_k(S) = m_k(S - u) + sum_{v in S, v ~ u} m_{k-1}(S - u - v).

    The int64 kernel evaluates this forwards (see ``_subset_dp_kernel``); when
    the telephone number of ``n`` could overflow int64 the top-down Python
    version with arbitrary-precision integers is used instead.
    """
    n = g.n
    if n > cap:
        raise CapacityError(f"subset DP is capped at n={cap}, got n={n}", cap)
    if n == 0:
        return MatchingPolynomial(0, (1,))
    # every m_k is bounded by the number of matchings of K_n
    if n <= 62 and telephone(n) < _INT64_SAFE:
        table = _subset_dp_kernel(n, np.array(g.adj, dtype=np.int64))
        return _trim([int(c) for c in table], n)
    return counts_subset_memo(g)


@numba.njit(cache=True)
def _probe(keys, ids, mask, key, count):
    slot = ((key * np.int64(-7046029254386353131)) >> 20) & mask
    while True:
        k = keys[slot]
        if k == key:
            return ids[slot], count
        if k == -1:
            keys[slot] = key
            ids[slot] = count
            return count, count + 1
        slot = (slot + 1) & mask


@numba.njit(cache=True)
def _subset_dp_kernel(n, adj):
    # After vertices 0..i-1 are decided, a state is the set of later vertices
    # already covered by a matching edge; vals[state] holds the generating
    # vector of partial matchings reaching it.  Only reachable states exist.
    d = n // 2
    states = np.zeros(1, dtype=np.int64)
    table = np.zeros((1, d + 1), dtype=np.int64)
    table[0, 0] = 1
    for i in range(n):
        bit = np.int64(1) << i
        later = adj[i] >> (i + 1)
        deg = 0
        x = later
        while x:
            deg += x & 1
            x >>= 1
        need = 2 * len(states) * (deg + 1)
        cap = 16
        while cap < need:
            cap <<= 1
        mask = cap - 1
        keys = np.full(cap, -1, dtype=np.int64)
        ids = np.empty(cap, dtype=np.int64)
        rows = min(need, cap)
        vals = np.empty((rows, d + 1), dtype=np.int64)
        out = np.empty(rows, dtype=np.int64)
        count = 0
        for r in range(len(states)):
            s = states[r]
            if s & bit:
                # vertex i already matched to an earlier vertex
                t = s & ~bit
                j, c2 = _probe(keys, ids, mask, t, count)
                if c2 > count:
                    vals[j, :] = 0
                    out[j] = t
                    count = c2
                for k in range(d + 1):
                    vals[j, k] += table[r, k]
                continue
            j, c2 = _probe(keys, ids, mask, s, count)
            if c2 > count:
                vals[j, :] = 0
                out[j] = s
                count = c2
            for k in range(d + 1):
                vals[j, k] += table[r, k]
            x = later
            v = i + 1
            while x:
                if x & 1:
                    bv = np.int64(1) << v
                    if not (s & bv):
                        t = s | bv
                        j, c2 = _probe(keys, ids, mask, t, count)
                        if c2 > count:
                            vals[j, :] = 0
                            out[j] = t
                            count = c2
                        for k in range(d):
                            vals[j, k + 1] += table[r, k]
                x >>= 1
                v += 1
        states = out[:count].copy()
        table = vals[:count].copy()
    return table[0]


def counts_complement(g: Graph, cap: int = DEFAULT_DP_CAP) -> MatchingPolynomial:
    """Matching numbers of a dense graph from those of its complement.

    Inclusion-exclusion over the complement edges used by a matching of K_n:

        m_k(G) = sum_j (-1)**j m_j(complement) m_{k-j}(K_{n-2j}).
    """
    n = g.n
    comp = Graph.from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n) if not g.adj[u] >> v & 1]
    )
    mc = matching_polynomial(comp, "auto", cap)
    d = n // 2
    kn = {}
    coeffs = [0] * (d + 1)
    for j, cj in enumerate(mc.coeffs):
        if cj == 0:
            continue
        rest = n - 2 * j
        if rest not in kn:
            kn[rest] = closed_form("complete", rest).coeffs
        sign = -cj if j % 2 else cj
        for i, c in enumerate(kn[rest]):
            coeffs[i + j] += sign * c
    return _trim(coeffs, n)


# ---------------------------------------------------------------------------
# edge recursion


def counts_edge_recursion(
    g: Graph, max_memo: int = 2_000_000, time_budget: float | None = None
) -> MatchingPolynomial:
    """Matching numbers by m(G) = m(G - e) - m(G - u - v) on coefficient vectors.

    Subproblems are edge subsets of ``g`` (a bitmask over ``g.edges``); the
    vertex set is implied because isolated vertices do not change m_k.
    Disconnected subproblems are split into components and multiplied, and
    connected ones are expanded along all edges of a max-degree vertex.
    """
    edges = g.edges
    incident = [0] * g.n
    for idx, (u, v) in enumerate(edges):
        incident[u] |= 1 << idx
        incident[v] |= 1 << idx
    memo: dict[int, list[int]] = {}
    deadline = None if time_budget is None else time.monotonic() + time_budget

    def edge_components(emask: int) -> list[int]:
        out = []
        rest = emask
        while rest:
            comp = rest & -rest
            frontier = comp
            while frontier:
                verts = 0
                for idx in iter_bits(frontier):
                    u, v = edges[idx]
                    verts |= (1 << u) | (1 << v)
                reach = 0
                for w in iter_bits(verts):
                    reach |= incident[w]
                frontier = reach & rest & ~comp
                comp |= frontier
            out.append(comp)
            rest &= ~comp
        return out

    def solve(emask: int) -> list[int]:
        if emask == 0:
            return [1]
        hit = memo.get(emask)
        if hit is not None:
            return hit
        if len(memo) >= max_memo:
            raise ResourceError(f"edge recursion memo exceeded {max_memo} entries")
        if deadline is not None and time.monotonic() > deadline:
            raise ResourceError(f"edge recursion exceeded {time_budget}s")
        parts = edge_components(emask)
        if len(parts) > 1:
            res = [1]
            for part in parts:
                res = convolve(res, solve(part))
        else:
            # deletion-contraction on every edge at a max-degree vertex v,
            # unrolled: m(H) = m(H - v) + sum_u x^2-shift m(H - v - u).  Each
            # subproblem is then an induced subgraph, so the memo holds at
            # most 2^n entries.
            v = max(range(g.n), key=lambda w: (bin(incident[w] & emask).count("1"), -w))
            rest = emask & ~incident[v]
            res = list(solve(rest))
            for idx in iter_bits(incident[v] & emask):
                a, b = edges[idx]
                u = b if a == v else a
                contracted = solve(rest & ~incident[u])
                if len(contracted) + 1 > len(res):
                    res.extend([0] * (len(contracted) + 1 - len(res)))
                for k, c in enumerate(contracted):
                    res[k + 1] += c
        memo[emask] = res
        return res

    full = (1 << len(edges)) - 1
    return _trim(solve(full), g.n)


def counts_subset_memo(g: Graph) -> MatchingPolynomial:
    """Top-down memoised version of the subset recurrence in pure Python.

    Slow; kept as an independent reference for the numpy DP.
    """
    memo: dict[int, list[int]] = {0: [1]}

    def solve(s: int) -> list[int]:
        hit = memo.get(s)
        if hit is not None:
            return hit
        u = (s & -s).bit_length() - 1
        rest = s & ~(1 << u)
        res = list(solve(rest))
        for v in iter_bits(g.adj[u] & rest):
            sub = solve(rest & ~(1 << v))
            if len(sub) + 1 > len(res):
                res.extend([0] * (len(sub) + 1 - len(res)))
            for k, c in enumerate(sub):
                res[k + 1] += c
        memo[s] = res
        return res

    return _trim(solve((1 << g.n) - 1), g.n)


# ---------------------------------------------------------------------------
# forests


def counts_forest(g: Graph) -> MatchingPolynomial:
    """Matching numbers of a forest in one rooted pass per tree.

    For each vertex ``v`` keep two generating polynomials in the number of
    matching edges inside the subtree: ``free[v]`` (v unmatched) and
    ``used[v]`` (v matched to a child).
    """
    if not g.is_forest():
        raise DomainError("counts_forest requires an acyclic graph")
    n = g.n
    nbrs = [g.neighbors(v) for v in range(n)]
    free: list[list[int] | None] = [None] * n
    used: list[list[int] | None] = [None] * n
    visited = [False] * n
    result = [1]
    for root in range(n):
        if visited[root]:
            continue
        # iterative post-order
        order = []
        parent = {root: -1}
        stack = [root]
        visited[root] = True
        while stack:
            v = stack.pop()
            order.append(v)
            for w in nbrs[v]:
                if not visited[w]:
                    visited[w] = True
                    parent[w] = v
                    stack.append(w)
        for v in reversed(order):
            a, b = [1], [0]
            for c in nbrs[v]:
                if parent.get(c) != v:
                    continue
                fc, uc = free[c], used[c]
                tot = _add(fc, uc)
                b = _add(convolve(b, tot), [0] + convolve(a, fc))
                a = convolve(a, tot)
                free[c] = used[c] = None
            free[v], used[v] = a, b
        result = convolve(result, _add(free[root], used[root]))
        free[root] = used[root] = None
    return _trim(result, n)


def _add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return out


# ---------------------------------------------------------------------------
# closed forms


def closed_form(family: str, n: int) -> MatchingPolynomial:
    """m_k for ``path``, ``cycle`` or ``complete`` graphs on ``n`` vertices."""
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    d = n // 2
    if family == "path":
        coeffs = [comb(n - k, k) for k in range(d + 1)]
    elif family == "cycle":
        if n < 3:
            raise DomainError(f"cycle needs n >= 3, got {n}")
        # n/(n-k) * C(n-k, k) is an integer; compute without rounding
        coeffs = [n * comb(n - k, k) // (n - k) for k in range(d + 1)]
    elif family == "complete":
        coeffs = [factorial(n) // (factorial(k) * 2**k * factorial(n - 2 * k)) for k in range(d + 1)]
    else:
        raise DomainError(f"unknown family {family!r}")
    return _trim(coeffs, n)


def complete_by_recurrence(n: int) -> MatchingPolynomial:
    """m(K_n) from m(K_n) = x m(K_{n-1}) - (n-1) m(K_{n-2})."""
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    prev, cur = [1], [1]  # K_{-1} placeholder is never read for n >= 1
    if n == 0:
        return _trim([1], 0)
    for j in range(2, n + 1):
        nxt = list(cur) + [0] * (j // 2 + 1 - len(cur))
        for k, c in enumerate(prev):
            nxt[k + 1] += (j - 1) * c
        prev, cur = cur, nxt
    return _trim(cur, n)


# ---------------------------------------------------------------------------
# evaluation


def dense_coefficients(poly: MatchingPolynomial) -> list[int]:
    """Coefficients of m(G, x) in descending powers x**n .. x**0."""
    out = [0] * (poly.n + 1)
    for k, c in enumerate(poly.coeffs):
        out[2 * k] = -c if k % 2 else c
    return out


def evaluate(poly: MatchingPolynomial, x):
    """Value of m(G, x); exact for int/Fraction arguments."""
    y = x * x
    acc = 0
    for k, c in enumerate(poly.coeffs):
        acc = acc * y + (-c if k % 2 else c)
    return acc * x ** (poly.n - 2 * poly.matching_number)


def derivative(poly: MatchingPolynomial) -> list[int]:
    """Coefficients of m'(G, x) in descending powers x**(n-1) .. x**0."""
    n = poly.n
    dense = dense_coefficients(poly)
    return [c * (n - i) for i, c in enumerate(dense[:-1])]


# ---------------------------------------------------------------------------
# engine selection

ENGINES = ("auto", "dp", "recursion", "forest", "complement")


def matching_polynomial(
    g: Graph, engine: str = "auto", cap: int = DEFAULT_DP_CAP, max_memo: int = 2_000_000
) -> MatchingPolynomial:
    """Dispatch to a counting engine.

    ``auto`` tries the forest pass, then the subset DP up to ``cap`` vertices,
    then the edge recursion under its memo budget.
    """
    if engine == "dp":
        return counts_subset_dp(g, cap)
    if engine == "recursion":
        return counts_edge_recursion(g, max_memo)
    if engine == "forest":
        return counts_forest(g)
    if engine == "complement":
        return counts_complement(g, cap)
    if engine != "auto":
        raise DomainError(f"unknown engine {engine!r}")
    if g.is_forest():
        return counts_forest(g)
    parts = components(g)
    if len(parts) > 1:
        res = MatchingPolynomial(0, (1,))
        for _, h in parts:
            res = product(res, matching_polynomial(h, "auto", cap, max_memo))
        return res
    if g.n <= cap:
        if 4 * g.m > g.n * (g.n - 1):
            # denser than 1/2: the complement has fewer reachable states
            return counts_complement(g, cap)
        return counts_subset_dp(g, cap)
    return counts_edge_recursion(g, max_memo)
