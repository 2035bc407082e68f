from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_graphs, brute_force_counts, random_graphs
from matchenergy.errors import CapacityError, DomainError, ResourceError
from matchenergy.graph import Graph, complete, cycle, delete_edge, gen_gnp, path, random_tree, star
from matchenergy.mpoly import (
    MatchingPolynomial,
    closed_form,
    complete_by_recurrence,
    convolve,
    counts_complement,
    counts_edge_recursion,
    counts_forest,
    counts_subset_dp,
    counts_subset_memo,
    derivative,
    evaluate,
    matching_polynomial,
    product,
    telephone,
)

ENGINES = [counts_subset_dp, counts_edge_recursion, counts_subset_memo, counts_complement]

# m_k frozen from brute_force_counts (asserted again below)
KNOWN = [
    (path(4), (1, 3, 1)),
    (complete(4), (1, 6, 3)),
    (cycle(4), (1, 4, 2)),
    (path(3).disjoint_union(path(2)), (1, 3, 2)),
    (star(5), (1, 4)),
    (complete(3), (1, 3)),
    (Graph.empty(5), (1,)),
    (Graph.empty(1), (1,)),
]


@pytest.mark.parametrize("g,expected", KNOWN)
def test_known_counts(g, expected):
    assert brute_force_counts(g) == expected
    for engine in ENGINES:
        assert engine(g).coeffs == expected, engine.__name__
    if g.is_forest():
        assert counts_forest(g).coeffs == expected


def test_basic_conventions():
    g = gen_gnp(9, 0.6, 3)
    poly = matching_polynomial(g)
    assert poly.m(0) == 1
    assert poly.m(1) == g.m
    assert all(poly.m(k) == 0 for k in range(g.n // 2 + 1, g.n + 3))


def test_engines_agree_exhaustively_on_five_vertices():
    for n in range(0, 6):
        for g in all_graphs(n):
            ref = brute_force_counts(g)
            assert counts_subset_dp(g).coeffs == ref
            assert counts_edge_recursion(g).coeffs == ref
            if g.is_forest():
                assert counts_forest(g).coeffs == ref


def test_engines_agree_on_random_graphs():
    for g in random_graphs(80, range(6, 11), seed=3):
        ref = counts_subset_dp(g)
        assert counts_edge_recursion(g) == ref
        assert counts_complement(g) == ref
        assert matching_polynomial(g) == ref


@pytest.mark.parametrize("n", [1, 5, 12, 20, 26])
def test_forest_engine_on_random_trees(n):
    t = random_tree(n, n)
    assert counts_forest(t) == counts_subset_dp(t)


def test_forest_engine_large_tree():
    t = random_tree(600, 1)
    poly = counts_forest(t)
    assert poly.m(1) == 599
    assert random_tree(100, 5).m == counts_forest(random_tree(100, 5)).m(1)


def test_forest_engine_rejects_cycles():
    with pytest.raises(DomainError):
        counts_forest(cycle(5))


def test_dp_cap():
    with pytest.raises(CapacityError) as info:
        counts_subset_dp(path(30))
    assert info.value.cap == 26
    assert counts_subset_dp(path(30), cap=30) == closed_form("path", 30)


def test_dp_big_integer_fallback():
    # telephone(34) > 2**62, so the exact Python path is taken
    assert telephone(34) > 2**62
    assert counts_subset_dp(cycle(34), cap=34) == closed_form("cycle", 34)
    assert counts_subset_dp(path(40), cap=40) == closed_form("path", 40)


@pytest.mark.parametrize("seed", range(5))
def test_memo_agrees_with_kernel(seed):
    g = gen_gnp(14, 0.5, seed)
    assert counts_subset_memo(g) == counts_subset_dp(g)


def test_edge_recursion_budget():
    with pytest.raises(ResourceError):
        counts_edge_recursion(complete(12), max_memo=10)


@pytest.mark.parametrize("n", range(3, 17))
def test_closed_forms_match_engines(n):
    assert closed_form("path", n) == counts_subset_dp(path(n))
    assert closed_form("cycle", n) == counts_subset_dp(cycle(n))
    assert closed_form("complete", n) == counts_subset_dp(complete(n))
    assert complete_by_recurrence(n) == closed_form("complete", n)


def test_closed_form_examples():
    assert closed_form("path", 4).coeffs == (1, 3, 1)
    assert closed_form("cycle", 4).coeffs == (1, 4, 2)
    assert closed_form("complete", 4).coeffs == (1, 6, 3)
    assert complete_by_recurrence(2).coeffs == (1, 1)
    assert complete_by_recurrence(3).coeffs == brute_force_counts(complete(3))
    with pytest.raises(DomainError):
        closed_form("cycle", 2)
    with pytest.raises(DomainError):
        closed_form("wheel", 5)


def test_telephone_numbers():
    assert [telephone(n) for n in range(8)] == [1, 1, 2, 4, 10, 26, 76, 232]
    assert all(closed_form("complete", n).total() == telephone(n) for n in range(12))


def test_evaluate_and_derivative():
    assert evaluate(counts_subset_dp(path(2)), 1) == 0
    assert evaluate(MatchingPolynomial(3, (1,)), 2) == 8
    # P_4: x^4 - 3x^2 + 1, derivative 4x^3 - 6x
    p4 = counts_subset_dp(path(4))
    assert derivative(p4) == [4, 0, -6, 0]
    assert evaluate(p4, Fraction(1, 2)) == Fraction(1, 16) - Fraction(3, 4) + 1
    # finite-difference check of the derivative at x = 1.3
    h = 1e-6
    fd = (evaluate(p4, 1.3 + h) - evaluate(p4, 1.3 - h)) / (2 * h)
    exact = sum(c * 1.3 ** (len(derivative(p4)) - 1 - i) for i, c in enumerate(derivative(p4)))
    assert fd == pytest.approx(exact, rel=1e-8)


def test_polynomial_validation():
    with pytest.raises(DomainError):
        MatchingPolynomial(2, (2, 1))
    with pytest.raises(DomainError):
        MatchingPolynomial(2, (1, 1, 1))
    assert MatchingPolynomial(4, (1, 3, 0)).coeffs == (1, 3)
    poly = MatchingPolynomial(4, (1, 3, 1))
    assert MatchingPolynomial.from_json(poly.to_json()) == poly


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 7), st.integers(1, 7))
def test_multiplicative_over_disjoint_union(seed, a, b):
    g, h = gen_gnp(a, 0.5, seed), gen_gnp(b, 0.6, seed + 1)
    union = matching_polynomial(g.disjoint_union(h))
    assert union == product(matching_polynomial(g), matching_polynomial(h))
    assert list(union.coeffs) == convolve(matching_polynomial(g).coeffs, matching_polynomial(h).coeffs)[: len(union.coeffs)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(2, 10))
def test_monotone_under_edge_deletion(seed, n):
    g = gen_gnp(n, 0.6, seed)
    base = counts_subset_dp(g)
    for e in g.edges:
        smaller = counts_subset_dp(delete_edge(g, e))
        diffs = [base.m(k) - smaller.m(k) for k in range(n // 2 + 1)]
        assert all(d >= 0 for d in diffs)
        assert any(d > 0 for d in diffs[1:])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 12))
def test_counts_bounded_by_binomials(seed, n):
    from math import comb

    g = gen_gnp(n, 0.5, seed)
    poly = counts_subset_dp(g)
    assert all(poly.m(k) <= comb(g.m, k) for k in range(len(poly.coeffs)))
    assert all(c > 0 for c in poly.coeffs)
