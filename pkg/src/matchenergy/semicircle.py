"""The standard semicircle law on [-2, 2]."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

ABS_MOMENT = 8.0 / (3.0 * math.pi)


def density(x):
    """(1/2pi) sqrt(4 - x^2) on [-2, 2], zero elsewhere.  Accepts arrays."""
    x = np.asarray(x, dtype=float)
    out = np.where(np.abs(x) <= 2.0, np.sqrt(np.clip(4.0 - x * x, 0.0, None)) / (2.0 * math.pi), 0.0)
    return float(out) if out.ndim == 0 else out


def cdf(x):
    x = np.asarray(x, dtype=float)
    xc = np.clip(x, -2.0, 2.0)
    out = 0.5 + xc * np.sqrt(4.0 - xc * xc) / (4.0 * math.pi) + np.arcsin(xc / 2.0) / math.pi
    out = np.clip(out, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def quantile(q: float) -> float:
    """Inverse of :func:`cdf` on (0, 1)."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    if q == 0.0:
        return -2.0
    if q == 1.0:
        return 2.0
    return brentq(lambda x: cdf(x) - q, -2.0, 2.0, xtol=1e-15, rtol=1e-15)


def moment(k: int) -> Fraction:
    """E X^k: zero for odd k, the Catalan number C_{k/2} for even k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k % 2:
        return Fraction(0)
    m = k // 2
    return Fraction(math.comb(2 * m, m), m + 1)


def abs_moment() -> float:
    """E|X| = 8 / (3 pi)."""
    return ABS_MOMENT
