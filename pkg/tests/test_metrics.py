import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from distset.config import Budget, BudgetExceeded
from distset.constructors import GlueSchedule, build_cantor_ultrametric, build_discrete_ultrametric, glue_spaces
from distset.metrics import (
    FiniteMetricSpace,
    MalformedSpace,
    distance_set,
    eps_net,
    integer_matrix,
    is_metric,
    is_ultrametric,
    spectrum,
    spectrum_project,
)

F = Fraction


def triangle(a, b, c):
    # d(p0,p1)=a, d(p0,p2)=b, d(p1,p2)=c
    m = {("p0", "p1"): a, ("p0", "p2"): b, ("p1", "p2"): c}
    return FiniteMetricSpace.from_function(["p0", "p1", "p2"], lambda u, v: m[tuple(sorted((u, v)))])


def point():
    return FiniteMetricSpace(("p",), ((F(0),),))


def brute_spectrum(X, n, distinct=False):
    """Every ordered n-tuple of points, reduced to its least slot order."""
    pairs = list(itertools.combinations(range(n), 2))
    out = set()
    for pts in itertools.product(range(len(X)), repeat=n):
        if distinct and len(set(pts)) < n:
            continue
        best = None
        for perm in itertools.permutations(pts):
            t = tuple(X.dist[perm[i]][perm[j]] for i, j in pairs)
            best = t if best is None or t < best else best
        out.add(best)
    return out


def test_is_metric_examples():
    assert is_metric(point())
    assert is_metric(triangle(1, 2, 3))
    v = is_metric(triangle(1, 1, 3))
    assert not v
    i, j, k = v.witness
    D = triangle(1, 1, 3).dist
    assert D[i][k] > D[i][j] + D[j][k]
    assert str(v).startswith("FAIL")


def test_is_metric_rejects_axiom_failures():
    asym = FiniteMetricSpace(("a", "b"), ((F(0), F(1)), (F(2), F(0))))
    assert is_metric(asym).reason == "asymmetric"
    same = FiniteMetricSpace(("a", "b"), ((F(0), F(0)), (F(0), F(0))))
    assert not is_metric(same)
    diag = FiniteMetricSpace(("a",), ((F(1),),))
    assert not is_metric(diag)


def test_malformed_matrix():
    with pytest.raises(MalformedSpace):
        FiniteMetricSpace(("a", "b"), ((F(0),),))
    with pytest.raises(MalformedSpace):
        FiniteMetricSpace(("a",), ((0.0,),))
    with pytest.raises(MalformedSpace):
        FiniteMetricSpace(("a", "a"), ((F(0), F(1)), (F(1), F(0))))


def test_is_ultrametric_examples():
    assert is_ultrametric(build_discrete_ultrametric([1, 2]))
    v = is_ultrametric(triangle(3, 4, 5))
    assert not v and v.reason == "ultrametric inequality"
    assert is_ultrametric(FiniteMetricSpace.from_function(["a", "b"], lambda u, v: F(7)))


def test_huge_denominators_stay_exact():
    # 1/p + 1/q vs (p+q)/(pq) with primes beyond 64-bit products
    p, q = 2**61 - 1, 2**89 - 1
    X = triangle(F(1, p), F(1, q), F(1, p) + F(1, q))
    assert integer_matrix(X).dtype == object
    assert is_metric(X)
    Y = triangle(F(1, p), F(1, q), F(1, p) + F(1, q) + F(1, p * q * 3))
    assert not is_metric(Y)


def test_distance_set_examples():
    assert distance_set(point()) == {0}
    assert distance_set(build_discrete_ultrametric([1, 2])) == {0, 1, 2}
    A1 = build_discrete_ultrametric([F(1, 2)])
    A2 = build_discrete_ultrametric([F(1, 2), F(3, 2)])
    assert distance_set(glue_spaces(GlueSchedule((A1, A2), (F(1, 2), F(3, 2))))) == {0, F(1, 2), F(3, 2)}


def test_spectrum_examples():
    X = build_discrete_ultrametric([1, 2])
    assert spectrum(X, 2).as_values() == distance_set(X)
    assert spectrum(point(), 3).tuples == {(0, 0, 0)}
    S = spectrum(triangle(1, 1, 1), 3)
    assert S.tuples == {(0, 0, 0), (0, 1, 1), (1, 1, 1)}
    assert S.tuples == brute_spectrum(triangle(1, 1, 1), 3)
    assert (1, 0, 1) in S and (1, 1, 0) in S
    assert len(S.expand()) == 1 + 3 + 1


def test_spectrum_distinct_flag():
    S = spectrum(triangle(1, 1, 1), 3, distinct=True)
    assert S.tuples == {(1, 1, 1)}


def test_spectrum_project_examples():
    S3 = spectrum(triangle(1, 1, 1), 3)
    assert spectrum_project(S3, 2).as_values() == {0, 1}
    assert spectrum_project(S3, 3) == S3
    X = build_discrete_ultrametric([1, 2])
    assert spectrum_project(spectrum(X, 3), 2).as_values() == distance_set(X) == {0, 1, 2}
    with pytest.raises(ValueError):
        spectrum_project(S3, 4)


def test_spectrum_budget_guard():
    X = build_cantor_ultrametric([4, 3, 2, 1], 4)
    with pytest.raises(BudgetExceeded):
        spectrum(X, 4, budget=Budget(spectrum_tuples=100))


def test_budget_env(monkeypatch):
    monkeypatch.setenv("DISTSET_BUDGET", "17")
    assert Budget.from_env().search_nodes == 17
    monkeypatch.setenv("DISTSET_BUDGET", "lots")
    with pytest.raises(ValueError):
        Budget.from_env()


def test_eps_net_examples():
    X = build_cantor_ultrametric([F(1, 2), F(1, 4), F(1, 8)], 3)
    assert len(eps_net(X, X.diameter())) == 1
    assert eps_net(X, F(1, 4)) == ["000", "100"]
    assert eps_net(X, F(1, 16)) == list(X.labels)
    with pytest.raises(ValueError):
        eps_net(X, 0)


small_spaces = st.sampled_from(
    [
        build_discrete_ultrametric([1]),
        build_discrete_ultrametric([1, 2]),
        build_discrete_ultrametric([F(1, 3), 2, F(5, 2), 7]),
        build_cantor_ultrametric([F(1, 2), F(1, 4), F(1, 8)], 3),
        build_cantor_ultrametric([3, 2], 2),
        triangle(1, 2, 3),
        triangle(2, 2, 3),
    ]
)


@given(small_spaces, st.integers(2, 3), st.booleans())
def test_spectrum_matches_brute_force(X, n, distinct):
    assert spectrum(X, n, distinct=distinct).tuples == brute_spectrum(X, n, distinct)


@given(small_spaces, st.randoms())
def test_spectrum_invariant_under_relabelling(X, rnd):
    perm = list(range(len(X)))
    rnd.shuffle(perm)
    Y = X.relabel(perm)
    for n in (2, 3):
        assert spectrum(X, n) == spectrum(Y, n)


@given(small_spaces)
def test_projection_commutes(X):
    for n in (3, 4):
        S = spectrum(X, n)
        for m in range(2, n):
            assert spectrum_project(S, m) == spectrum(X, m)
    assert spectrum(X, 2).as_values() == distance_set(X)


@given(small_spaces, st.integers(1, 40))
def test_eps_net_covers_and_is_minimal(X, k):
    eps = X.diameter() * F(k, 40)
    net = eps_net(X, eps)
    idx = [X.index(p) for p in net]
    for i in range(len(X)):
        assert any(X.dist[i][c] <= eps for c in idx)
    for c in idx:
        assert all(X.dist[c][o] > eps for o in idx if o != c)
