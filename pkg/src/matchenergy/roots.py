"""Matching roots, matching energy and the normalised spectrum.

Matching polynomials are even or odd, so every root comes as a pair
``±sqrt(y)`` where ``y`` is a root of

    q(y) = sum_k (-1)**k m_k y**(nu - k),      nu = matching number,

plus ``n - 2*nu`` zero roots.  ``q`` is real-rooted with positive roots.  We
split it into squarefree factors with exact integer arithmetic, take the
eigenvalues of each factor's (balanced) companion matrix and polish them
with Newton's method.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .errors import DomainError, NumericError
from .graph import Graph, components
from .mpoly import MatchingPolynomial, matching_polynomial

DEFAULT_TOL = 1e-10
CHECK_TOL = 1e-8


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class RootSpectrum:
    """Matching roots sorted in decreasing order, with multiplicity."""

    n: int
    roots: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        roots = np.sort(np.asarray(self.roots, dtype=float))[::-1]
        if len(roots) != self.n:
            raise DomainError(f"expected {self.n} roots, got {len(roots)}")
        object.__setattr__(self, "roots", _frozen(roots))

    def power_sum(self, k: int) -> float:
        return math.fsum(self.roots**k)

    def symmetry_defect(self) -> float:
        """max_i |x_i + x_{n+1-i}|, zero for an exactly symmetric spectrum."""
        if self.n == 0:
            return 0.0
        return float(np.max(np.abs(self.roots + self.roots[::-1])))


@dataclass(frozen=True, eq=False)
class NormalizedSpectrum:
    lambdas: np.ndarray
    n: int
    p: float

    def __post_init__(self):
        object.__setattr__(self, "lambdas", _frozen(np.sort(self.lambdas)[::-1]))


# ---------------------------------------------------------------------------
# root extraction


def _sqf_factors(coeffs: list[int]) -> list[tuple[list[int], int]]:
    from sympy import Poly, symbols

    y = symbols("y")
    _, factors = Poly(coeffs, y, domain="ZZ").sqf_list()
    return [([int(c) for c in f.all_coeffs()], mult) for f, mult in factors]


def _horner(c: np.ndarray, y: float) -> tuple[float, float]:
    val, der = 0.0, 0.0
    for a in c:
        der = der * y + val
        val = val * y + a
    return val, der


def _simple_roots(coeffs: list[int], tol: float) -> np.ndarray:
    """Real roots of a squarefree integer polynomial known to be real-rooted."""
    lead = coeffs[0]
    c = np.array([float(Fraction(a, lead)) for a in coeffs])
    deg = len(c) - 1
    if deg == 1:
        return np.array([-c[1]])
    approx = np.roots(c)
    scale = max(1.0, float(np.max(np.abs(approx))))
    if np.max(np.abs(approx.imag)) > 1e-6 * scale:
        raise NumericError(
            "companion eigenvalues are not real", float(np.max(np.abs(approx.imag)))
        )
    ys = np.sort(approx.real)
    out = ys.copy()
    for i, y0 in enumerate(ys):
        lo = -np.inf if i == 0 else 0.5 * (ys[i - 1] + y0)
        hi = np.inf if i == deg - 1 else 0.5 * (y0 + ys[i + 1])
        y = y0
        for _ in range(50):
            val, der = _horner(c, y)
            if der == 0.0:
                break
            step = val / der
            y_new = y - step
            if not lo < y_new < hi:
                break
            y = y_new
            if abs(step) <= tol * max(1.0, abs(y)):
                break
        if abs(_horner(c, y)[0]) <= abs(_horner(c, y0)[0]):
            out[i] = y
    return out


def matching_roots(poly: MatchingPolynomial, tol: float = DEFAULT_TOL) -> RootSpectrum:
    """All ``n`` real roots of m(G, x).

    Raises NumericError if ``sum x_i**2`` misses ``2 m_1`` by more than
    ``tol * max(1, 2 m_1)``.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    nu = poly.matching_number
    n = poly.n
    ys: list[float] = []
    if nu > 0:
        q = [(-c if k % 2 else c) for k, c in enumerate(poly.coeffs[: nu + 1])]
        for factor, mult in _sqf_factors(q):
            if len(factor) == 1:
                continue
            roots = _simple_roots(factor, tol)
            floor = -tol * max(1.0, float(np.max(np.abs(roots))))
            if np.min(roots) < floor:
                raise NumericError("negative root of q(y)", float(-np.min(roots)))
            ys.extend(np.clip(roots, 0.0, None).tolist() * mult)
    if len(ys) != nu:
        raise NumericError(f"found {len(ys)} roots of q, expected {nu}", float(abs(len(ys) - nu)))
    half = np.sqrt(np.array(ys, dtype=float))
    roots = np.concatenate([half, -half, np.zeros(n - 2 * nu)])
    spec = RootSpectrum(n, roots, tol)
    m1 = poly.m(1)
    residual = abs(2.0 * math.fsum(ys) - 2 * m1)
    if residual > tol * max(1.0, 2.0 * m1):
        raise NumericError(f"sum of squared roots misses 2*m_1 by {residual:.3e}", residual)
    return spec


def matching_energy(spectrum: RootSpectrum) -> float:
    return math.fsum(np.abs(spectrum.roots))


# ---------------------------------------------------------------------------
# fast paths


def complete_spectrum_fast(n: int) -> RootSpectrum:
    """Matching roots of K_n as eigenvalues of a Jacobi matrix.

    m(K_n) = x m(K_{n-1}) - (n-1) m(K_{n-2}) is the characteristic
    recurrence of the symmetric tridiagonal matrix with zero diagonal and
    off-diagonal entries sqrt(1), ..., sqrt(n-1).
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if n == 1:
        return RootSpectrum(1, [0.0], 1e-15)
    ev = eigvalsh_tridiagonal(np.zeros(n), np.sqrt(np.arange(1.0, n)))
    return RootSpectrum(n, ev, CHECK_TOL)


def forest_spectrum_fast(g: Graph) -> RootSpectrum:
    """For forests the matching and characteristic polynomials coincide."""
    if not g.is_forest():
        raise DomainError("forest_spectrum_fast requires an acyclic graph")
    if g.n == 0:
        return RootSpectrum(0, [], CHECK_TOL)
    return RootSpectrum(g.n, np.linalg.eigvalsh(g.adjacency_matrix()), CHECK_TOL)


def normalize(spectrum: RootSpectrum, n: int, p: float) -> NormalizedSpectrum:
    """lambda_i = x_i / sqrt(n p)."""
    if not 0.0 < p <= 1.0:
        raise DomainError(f"p must lie in (0, 1], got {p}")
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    return NormalizedSpectrum(spectrum.roots / math.sqrt(n * p), n, p)


# ---------------------------------------------------------------------------
# graph-level composition


def _component_spectrum(h: Graph, engine: str, tol: float) -> np.ndarray:
    if h.m == 0:
        return np.zeros(h.n)
    if engine == "auto":
        if h.is_complete():
            return complete_spectrum_fast(h.n).roots
        if h.is_forest():
            return forest_spectrum_fast(h).roots
    return matching_roots(matching_polynomial(h, engine), tol).roots


def spectrum_of_graph(g: Graph, engine: str = "auto", tol: float = DEFAULT_TOL) -> RootSpectrum:
    """Matching roots of ``g``, computed component by component.

    With ``engine="auto"`` complete components and trees use the eigenvalue
    fast paths; everything else goes through exact counting.
    """
    parts = [_component_spectrum(h, engine, tol) for _, h in components(g)]
    roots = np.concatenate(parts) if parts else np.zeros(0)
    return RootSpectrum(g.n, roots, tol)


def energy_of_graph(g: Graph, engine: str = "auto", tol: float = DEFAULT_TOL) -> float:
    return matching_energy(spectrum_of_graph(g, engine, tol))
