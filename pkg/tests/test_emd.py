import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchenergy import semicircle
from matchenergy.emd import EmpiricalDistribution, from_spectrum
from matchenergy.graph import Graph, complete, path
from matchenergy.mpoly import matching_polynomial
from matchenergy.roots import energy_of_graph, normalize, spectrum_of_graph
from matchenergy.treewalk import count_tree_like


def emd_of(g, p=1.0):
    return from_spectrum(normalize(spectrum_of_graph(g), g.n, p))


def test_from_spectrum_examples():
    k4 = emd_of(complete(4))
    expect = sorted(s * math.sqrt(3 + t * math.sqrt(6)) / 2 for s in (1, -1) for t in (1, -1))
    assert k4.n == 4 and np.allclose(k4.sample, expect, atol=1e-12)
    empty = emd_of(Graph.empty(3))
    assert empty.sample.tolist() == [0, 0, 0]
    assert empty.eval(0.0) == 1.0 and empty.eval(-1e-12) == 0.0
    p2 = emd_of(path(2))
    assert np.allclose(p2.sample, [-1 / math.sqrt(2), 1 / math.sqrt(2)])


def test_eval():
    d = emd_of(complete(5))
    assert d.eval(1e9) == 1.0
    assert d.eval(d.sample[0] - 1e-9) == 0.0
    assert d.eval(d.sample[2]) == pytest.approx(3 / 5)
    assert d.eval_left(d.sample[2]) == pytest.approx(2 / 5)
    for x in np.linspace(0.01, 2, 37):
        assert d.eval_left(-x) == pytest.approx(1 - d.eval(x))


def test_moment_examples():
    d = emd_of(complete(6))
    assert d.moment(0) == 1.0
    assert abs(d.moment(1)) < 1e-12
    for n in range(2, 9):
        assert emd_of(complete(n)).moment(2) == pytest.approx((n - 1) / n, abs=1e-12)


def test_mean_abs_examples():
    assert emd_of(path(2)).mean_abs() == pytest.approx(1 / math.sqrt(2))
    assert emd_of(complete(4)).mean_abs() == pytest.approx(energy_of_graph(complete(4)) / 8)
    assert emd_of(complete(4)).mean_abs() == pytest.approx(0.76910, abs=1e-5)
    assert EmpiricalDistribution(np.zeros(4)).mean_abs() == 0.0


def test_ks_examples():
    quartiles = [semicircle.quantile(j / 8) for j in (1, 3, 5, 7)]
    assert EmpiricalDistribution(quartiles).ks_distance() == pytest.approx(0.125, abs=1e-12)
    assert EmpiricalDistribution([0.0]).ks_distance() == pytest.approx(0.5)
    assert EmpiricalDistribution([-4, -3, 3, 4]).ks_distance() == pytest.approx(0.5)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-5, 5, allow_nan=False), min_size=1, max_size=40))
def test_ks_bounds_and_brute_force(xs):
    d = EmpiricalDistribution(xs)
    ks = d.ks_distance()
    assert 0.0 <= ks <= 1.0
    # brute force over the sample points and their left limits
    brute = max(
        max(abs(d.eval(x) - semicircle.cdf(x)), abs(d.eval_left(x) - semicircle.cdf(x)))
        for x in d.sample
    )
    assert ks == pytest.approx(brute, abs=1e-12)


@pytest.mark.parametrize("g", [complete(5), path(6), Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])])
def test_moments_match_walk_counts(g):
    p = 0.5
    d = emd_of(g, p)
    for k in range(1, 9):
        walks = count_tree_like(g, k)
        got = g.n * (g.n * p) ** (k / 2) * d.moment(k)
        assert got == pytest.approx(walks, rel=1e-6, abs=1e-9)


def test_mean_abs_reproduces_energy(small_corpus):
    for g in small_corpus:
        if g.n == 0:
            continue
        p = 0.3
        me = energy_of_graph(g)
        assert emd_of(g, p).mean_abs() * g.n**1.5 * p**0.5 == pytest.approx(me, rel=1e-8, abs=1e-12)


def test_sample_readonly():
    d = EmpiricalDistribution([3.0, 1.0])
    assert d.sample.tolist() == [1.0, 3.0]
    with pytest.raises(ValueError):
        d.sample[0] = 0.0
    with pytest.raises(ValueError):
        d.moment(-1)
