"""Finite metric spaces with exact distances and the checks run on them."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .config import Budget, BudgetExceeded
from .exact import format_rational


class MalformedSpace(ValueError):
    pass


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Labelled points with an exact distance matrix.

    The constructor only checks shape; the metric axioms are the business
    of :func:`is_metric`.  ``meta`` carries provenance and is ignored by
    equality.
    """

    labels: tuple
    dist: tuple
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise MalformedSpace("point labels must be distinct")
        if len(self.dist) != n or any(len(row) != n for row in self.dist):
            raise MalformedSpace(f"distance matrix must be {n}x{n}")
        for row in self.dist:
            for v in row:
                if not isinstance(v, Fraction):
                    raise MalformedSpace(f"distance {v!r} is not an exact rational")

    @classmethod
    def from_function(cls, labels: Sequence, d, meta=None) -> "FiniteMetricSpace":
        labels = tuple(labels)
        n = len(labels)
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                rows[i][j] = rows[j][i] = Fraction(d(labels[i], labels[j]))
        return cls(labels, tuple(map(tuple, rows)), dict(meta or {}))

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        return self.labels.index(label)

    def d(self, x, y) -> Fraction:
        return self.dist[self.index(x)][self.index(y)]

    def diameter(self) -> Fraction:
        return max((v for row in self.dist for v in row), default=Fraction(0))

    def relabel(self, perm: Sequence[int]) -> "FiniteMetricSpace":
        """Reorder points so that new point ``i`` is old point ``perm[i]``."""
        labels = tuple(self.labels[p] for p in perm)
        dist = tuple(tuple(self.dist[p][q] for q in perm) for p in perm)
        return FiniteMetricSpace(labels, dist, dict(self.meta))


def scale(X: FiniteMetricSpace, factor) -> FiniteMetricSpace:
    """Multiply every distance by a positive rational."""
    factor = Fraction(factor)
    if factor <= 0:
        raise ValueError("scale factor must be positive")
    dist = tuple(tuple(v * factor for v in row) for row in X.dist)
    meta = dict(X.meta)
    meta["scale"] = format_rational(factor * Fraction(X.meta.get("scale", 1)))
    return FiniteMetricSpace(X.labels, dist, meta)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: tuple | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "PASS"
        return f"FAIL {self.reason} witness={self.witness}"


def integer_matrix(X: FiniteMetricSpace) -> np.ndarray:
    """Distances times the common denominator, as exact integers.

    int64 when the values leave headroom for one addition, otherwise an
    object array of Python ints.
    """
    den = 1
    for row in X.dist:
        for v in row:
            den = math.lcm(den, v.denominator)
    ints = [[v.numerator * (den // v.denominator) for v in row] for row in X.dist]
    top = max((max(r, default=0) for r in ints), default=0)
    dtype = np.int64 if top < 2**61 else object
    return np.array(ints, dtype=dtype).reshape(len(X), len(X))


def _check_axioms(X: FiniteMetricSpace) -> Verdict | None:
    D = X.dist
    n = len(X)
    for i in range(n):
        if D[i][i] != 0:
            return Verdict(False, (i,), "nonzero diagonal")
        for j in range(i + 1, n):
            if D[i][j] != D[j][i]:
                return Verdict(False, (i, j), "asymmetric")
            if D[i][j] <= 0:
                return Verdict(False, (i, j), "distinct points at distance <= 0")
    return None


def _first_triple(bad: np.ndarray, j: int) -> tuple[int, int, int]:
    i, k = (int(v) for v in np.argwhere(bad)[0])
    return (i, j, k)


def is_metric(X: FiniteMetricSpace) -> Verdict:
    """Check the metric axioms on every pair and every triple.

    A failing triangle is reported as ``(i, j, k)`` with
    ``d(i, k) > d(i, j) + d(j, k)``.
    """
    bad = _check_axioms(X)
    if bad is not None:
        return bad
    M = integer_matrix(X)
    for j in range(len(X)):
        viol = M > M[:, j, None] + M[None, j, :]
        if viol.any():
            return Verdict(False, _first_triple(viol, j), "triangle inequality")
    return Verdict(True)


def is_ultrametric(X: FiniteMetricSpace) -> Verdict:
    bad = _check_axioms(X)
    if bad is not None:
        return bad
    M = integer_matrix(X)
    for j in range(len(X)):
        viol = M > np.maximum(M[:, j, None], M[None, j, :])
        if viol.any():
            return Verdict(False, _first_triple(viol, j), "ultrametric inequality")
    return Verdict(True)


def distance_set(X: FiniteMetricSpace) -> frozenset:
    return frozenset(v for row in X.dist for v in row)


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def _slot_maps(n: int) -> list[tuple[int, ...]]:
    """For each point permutation, where each pair slot is read from."""
    pairs = _pairs(n)
    index = {p: k for k, p in enumerate(pairs)}
    maps = []
    for perm in itertools.permutations(range(n)):
        maps.append(tuple(index[tuple(sorted((perm[i], perm[j])))] for i, j in pairs))
    return maps


_SLOT_CACHE: dict[int, list] = {}


def _maps(n: int) -> list[tuple[int, ...]]:
    maps = _SLOT_CACHE.get(n)
    if maps is None:
        maps = _SLOT_CACHE[n] = _slot_maps(n)
    return maps


def canonical(t: Sequence, n: int) -> tuple:
    """Least relabelling of a pair-distance tuple under permutations of the n points."""
    return min(tuple(t[k] for k in m) for m in _maps(n))


@dataclass(frozen=True)
class SpectrumSet:
    """Distance tuples ``(d(x_i, x_j))_{i<j<n}``, stored up to relabelling."""

    n: int
    tuples: frozenset
    distinct: bool = False

    def __contains__(self, t) -> bool:
        return canonical(tuple(Fraction(v) for v in t), self.n) in self.tuples

    def __len__(self) -> int:
        return len(self.tuples)

    def expand(self) -> set:
        """All slot orders of the stored tuples."""
        return {tuple(t[k] for k in m) for t in self.tuples for m in _maps(self.n)}

    def as_values(self) -> frozenset:
        """For ``n == 2``, the plain set of distances."""
        if self.n != 2:
            raise ValueError("only a 2-point spectrum is a set of values")
        return frozenset(t[0] for t in self.tuples)


def spectrum(X: FiniteMetricSpace, n: int, distinct: bool = False, budget: Budget | None = None) -> SpectrumSet:
    """All n-point distance configurations realised in ``X``.

    Points may repeat unless ``distinct`` is set.
    """
    if n < 2:
        raise ValueError("spectrum needs n >= 2")
    budget = budget or Budget.from_env()
    size = len(X)
    count = math.comb(size, n) if distinct else math.comb(size + n - 1, n)
    if count > budget.spectrum_tuples:
        raise BudgetExceeded(f"{count} point multisets exceed the budget {budget.spectrum_tuples}")
    pairs = _pairs(n)
    D = X.dist
    combos = itertools.combinations if distinct else itertools.combinations_with_replacement
    out = set()
    for pts in combos(range(size), n):
        out.add(canonical(tuple(D[pts[i]][pts[j]] for i, j in pairs), n))
    return SpectrumSet(n, frozenset(out), distinct)


def spectrum_project(S: SpectrumSet, m: int) -> SpectrumSet:
    """The m-point spectrum induced by an n-point one (``m <= n``)."""
    if not 2 <= m <= S.n:
        raise ValueError(f"cannot project a {S.n}-point spectrum to {m} points")
    if m == S.n:
        return S
    index = {p: k for k, p in enumerate(_pairs(S.n))}
    sub_pairs = _pairs(m)
    out = set()
    for t in S.tuples:
        for pts in itertools.combinations(range(S.n), m):
            out.add(canonical(tuple(t[index[(pts[i], pts[j])]] for i, j in sub_pairs), m))
    return SpectrumSet(m, frozenset(out), S.distinct)


def eps_net(X: FiniteMetricSpace, eps) -> list:
    """Greedy first-fit net: every point lies within ``eps`` of a chosen one.

    Chosen points are pairwise more than ``eps`` apart, so none can be
    dropped.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    centers: list[int] = []
    for i in range(len(X)):
        if all(X.dist[i][c] > eps for c in centers):
            centers.append(i)
    return [X.labels[c] for c in centers]


def covers(X: FiniteMetricSpace, net: Iterable, eps) -> bool:
    idx = [X.index(p) for p in net]
    eps = Fraction(eps)
    return all(any(X.dist[i][c] <= eps for c in idx) for i in range(len(X)))
