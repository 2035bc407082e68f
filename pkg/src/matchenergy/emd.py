"""Empirical distribution of normalised matching roots."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import semicircle
from .roots import NormalizedSpectrum


@dataclass(frozen=True, eq=False)
class EmpiricalDistribution:
    """Right-continuous step CDF with a jump of 1/n at every sample point."""

    sample: np.ndarray

    def __post_init__(self):
        arr = np.sort(np.asarray(self.sample, dtype=float))
        arr.setflags(write=False)
        object.__setattr__(self, "sample", arr)

    @property
    def n(self) -> int:
        return len(self.sample)

    @classmethod
    def from_spectrum(cls, ns: NormalizedSpectrum) -> EmpiricalDistribution:
        return cls(ns.lambdas)

    def eval(self, x):
        """F_n(x): fraction of the sample that is <= x."""
        return np.searchsorted(self.sample, x, side="right") / self.n

    def eval_left(self, x):
        """F_n(x-): fraction of the sample strictly below x."""
        return np.searchsorted(self.sample, x, side="left") / self.n

    def moment(self, k: int) -> float:
        if k < 0:
            raise ValueError("k must be nonnegative")
        return math.fsum(self.sample**k) / self.n

    def mean_abs(self) -> float:
        return math.fsum(np.abs(self.sample)) / self.n

    def ks_distance(self) -> float:
        """sup_x |F_n(x) - F_sc(x)|, attained at a sample point or just left of it."""
        if self.n == 0:
            return 0.0
        f = semicircle.cdf(self.sample)
        i = np.arange(1, self.n + 1)
        upper = i / self.n - f
        lower = f - (i - 1) / self.n
        return float(max(np.max(upper), np.max(lower)))


def from_spectrum(ns: NormalizedSpectrum) -> EmpiricalDistribution:
    return EmpiricalDistribution.from_spectrum(ns)
