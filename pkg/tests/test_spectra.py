import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from distset.config import Budget, BudgetExceeded
from distset.metrics import is_metric, spectrum
from distset.sampling import metric_triples, random_triangle_set
from distset.spectra import (
    OracleTooLarge,
    TriangleError,
    TriangleSet,
    brute_force_oracle,
    realize_spec3,
    realize_spec3_upto,
)

F = Fraction


def assert_sound(T, w):
    X = w.to_space()
    assert is_metric(X)
    assert spectrum(X, 3, distinct=True).tuples == T.triples
    assert w.triangles() == T.triples


def test_single_equilateral():
    T = TriangleSet.of([(1, 1, 1)])
    w = realize_spec3(T, 3)
    assert set(w.edge_colors.values()) == {1}
    assert_sound(T, w)


def test_degenerate_triple_allowed():
    T = TriangleSet.of([(1, 2, 3)])
    w = realize_spec3(T, 3)
    assert sorted(w.edge_colors.values()) == [1, 2, 3]
    assert_sound(T, w)


@pytest.mark.parametrize("k", range(3, 8))
def test_monochromatic_any_k(k):
    T = TriangleSet.of([(1, 1, 1)])
    w = realize_spec3(T, k)
    assert set(w.edge_colors.values()) == {1}


def test_upto_examples():
    assert realize_spec3_upto(TriangleSet.of([(1, 1, 1)]), 5)[0] == 3
    T = TriangleSet.of([(1, 1, 1), (1, 1, 2), (2, 2, 1)])
    # the oracle settles the least k independently
    assert brute_force_oracle(T, 3) is None
    assert brute_force_oracle(T, 4) is not None
    k, w = realize_spec3_upto(T, 5)
    assert k == 4
    assert_sound(T, w)


def test_unrealisable_sets():
    # a lone (1,1,2) fits a 4-cycle of 1s with diagonals 2 but not 5 points
    T = TriangleSet.of([(1, 1, 2)])
    assert [realize_spec3(T, k) is not None for k in (3, 4, 5, 6)] == [True, True, False, False]
    assert [brute_force_oracle(T, k) is not None for k in (3, 4, 5, 6)] == [True, True, False, False]
    # using both colours puts a mixed triangle at some vertex
    T = TriangleSet.of([(1, 1, 1), (2, 2, 2)])
    assert realize_spec3_upto(T, 7) is None


def test_rejects_non_metric_triple():
    with pytest.raises(TriangleError):
        TriangleSet.of([(1, 1, 3)])
    with pytest.raises(TriangleError):
        TriangleSet.of([(0, 1, 1)])
    with pytest.raises(TriangleError):
        TriangleSet.of([])


def test_prefilter_counts_triangles():
    T = TriangleSet.of(metric_triples([1, 2]))
    assert len(T.triples) == 4 > math.comb(3, 3)
    assert realize_spec3(T, 3) is None


def test_guards():
    T = TriangleSet.of(metric_triples([1, 2, 3]))
    with pytest.raises(OracleTooLarge):
        brute_force_oracle(T, 7)
    with pytest.raises(BudgetExceeded):
        realize_spec3(T, 7, Budget(search_nodes=10))


def test_witness_is_canonical():
    T = TriangleSet.of([(1, 1, 1), (1, 2, 2), (2, 2, 2)])
    w = realize_spec3(T, 5)
    assert w.color(0, 1) <= w.color(0, 2) <= w.color(1, 2)
    prof = [tuple(w.color(r, v) for r in range(3)) for v in range(3, 5)]
    assert prof == sorted(prof)
    assert_sound(T, w)


@settings(max_examples=60)
@given(st.integers(0, 10**6), st.integers(3, 6))
def test_agrees_with_oracle(seed, k):
    T = random_triangle_set(random.Random(seed), 3 if k <= 5 else 2)
    if len(T.alphabet) ** math.comb(k, 2) > 10**6:
        return
    w = realize_spec3(T, k)
    o = brute_force_oracle(T, k)
    assert (w is None) == (o is None)
    if w is not None:
        assert_sound(T, w)
        assert_sound(T, o)


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.integers(1, 7), st.integers(1, 7))
def test_scaling_invariance(seed, p, q):
    T = random_triangle_set(random.Random(seed))
    Ts = T.scaled(F(p, q))
    for k in (3, 4, 5):
        assert (realize_spec3(T, k) is None) == (realize_spec3(Ts, k) is None)
