"""Realising a prescribed set of triangles as the 3-point spectrum of a finite space.

A k-point space whose distinct-point triangles are exactly ``T`` is the
same thing as a colouring of the edges of K_k by distances such that the
sorted colour triples of its triangles are exactly ``T``.  The solver
searches colourings by backtracking with vertex-relabelling symmetry
broken; :func:`brute_force_oracle` enumerates every colouring and is kept
deliberately naive so the two can be cross-checked.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import Budget, BudgetExceeded
from .exact import format_rational
from .metrics import FiniteMetricSpace


class TriangleError(ValueError):
    pass


class OracleTooLarge(BudgetExceeded):
    pass


@dataclass(frozen=True)
class TriangleSet:
    """Sorted metric triples ``a <= b <= c`` with ``c <= a + b``."""

    triples: frozenset

    def __post_init__(self):
        if not self.triples:
            raise TriangleError("triangle set is empty")
        for t in self.triples:
            self.check_triple(t)
            if tuple(sorted(t)) != tuple(t):
                raise TriangleError(f"triple {t} is not sorted")

    @staticmethod
    def check_triple(t) -> None:
        a, b, c = sorted(Fraction(v) for v in t)
        if a <= 0:
            raise TriangleError(f"triple {tuple(map(format_rational, t))} has a non-positive side")
        if c > a + b:
            raise TriangleError(
                f"triple {tuple(map(format_rational, (a, b, c)))} violates the triangle inequality"
            )

    @classmethod
    def of(cls, triples) -> "TriangleSet":
        return cls(frozenset(tuple(sorted(Fraction(v) for v in t)) for t in triples))

    @property
    def alphabet(self) -> list[Fraction]:
        return sorted({v for t in self.triples for v in t})

    def scaled(self, factor) -> "TriangleSet":
        factor = Fraction(factor)
        return TriangleSet.of([tuple(v * factor for v in t) for t in self.triples])


@dataclass(frozen=True)
class ColoredClique:
    k: int
    edge_colors: dict

    def color(self, i: int, j: int) -> Fraction:
        return self.edge_colors[(min(i, j), max(i, j))]

    def triangles(self) -> frozenset:
        return frozenset(
            tuple(sorted((self.color(h, i), self.color(h, j), self.color(i, j))))
            for h, i, j in itertools.combinations(range(self.k), 3)
        )

    def to_space(self) -> FiniteMetricSpace:
        labels = [f"v{i}" for i in range(self.k)]
        return FiniteMetricSpace.from_function(
            labels,
            lambda u, v: self.color(int(u[1:]), int(v[1:])),
            {"construction": "spec3-witness", "parameters": {"k": self.k}},
        )


def _edges(k: int) -> list[tuple[int, int]]:
    """Edges in column order, so each edge completes the triangles below it."""
    return [(i, j) for j in range(1, k) for i in range(j)]


def realize_spec3(T: TriangleSet, k: int, budget: Budget | None = None) -> ColoredClique | None:
    """A colouring of K_k whose triangle set is exactly ``T``, or ``None``.

    ``None`` is a proof of unrealisability on k points: the search is
    exhaustive up to relabelling vertices.  The witness is the
    lexicographically least canonical one in edge column order.
    """
    if k < 3:
        raise ValueError("k must be at least 3")
    budget = budget or Budget.from_env()
    if math.comb(k, 3) < len(T.triples):
        return None
    alphabet = T.alphabet
    rank = {v: i for i, v in enumerate(alphabet)}
    target = {tuple(rank[v] for v in t) for t in T.triples}
    edges = _edges(k)
    col = [[-1] * k for _ in range(k)]
    covered = dict.fromkeys(target, 0)
    state = {"uncovered": len(target), "done": 0, "nodes": 0}
    total = math.comb(k, 3)
    colors = range(len(alphabet))

    def profile_ok(i: int, j: int) -> bool:
        # triangle {0,1,2} sorted; vertices >= 3 ordered by their edges to 0, 1, 2
        if j == 2:
            return col[0][1] <= col[0][2] if i == 0 else col[0][2] <= col[1][2]
        if j >= 4 and i <= 2:
            mine = [col[r][j] for r in range(i + 1)]
            prev = [col[r][j - 1] for r in range(i + 1)]
            return mine >= prev
        return True

    def place(pos: int) -> bool:
        if pos == len(edges):
            return state["uncovered"] == 0
        state["nodes"] += 1
        if state["nodes"] > budget.search_nodes:
            raise BudgetExceeded(f"search exceeded {budget.search_nodes} nodes at k={k}")
        i, j = edges[pos]
        for c in colors:
            col[i][j] = col[j][i] = c
            if not profile_ok(i, j):
                continue
            tris = [tuple(sorted((col[h][i], col[h][j], c))) for h in range(i)]
            if any(t not in target for t in tris):
                continue
            for t in tris:
                if covered[t] == 0:
                    state["uncovered"] -= 1
                covered[t] += 1
            state["done"] += len(tris)
            if state["uncovered"] <= total - state["done"] and place(pos + 1):
                return True
            state["done"] -= len(tris)
            for t in tris:
                covered[t] -= 1
                if covered[t] == 0:
                    state["uncovered"] += 1
        col[i][j] = col[j][i] = -1
        return False

    if not place(0):
        return None
    return ColoredClique(k, {(i, j): alphabet[col[i][j]] for i, j in edges})


def realize_spec3_upto(T: TriangleSet, k_max: int, budget: Budget | None = None):
    """Least ``k <= k_max`` admitting a witness, as ``(k, witness)``; ``None`` if none does."""
    if k_max < 3:
        raise ValueError("k_max must be at least 3")
    for k in range(3, k_max + 1):
        w = realize_spec3(T, k, budget)
        if w is not None:
            return k, w
    return None


def brute_force_oracle(T: TriangleSet, k: int, limit: int = 10**7, chunk: int = 1 << 16) -> ColoredClique | None:
    """Plain enumeration of every colouring of K_k over the alphabet of ``T``."""
    if k < 3:
        raise ValueError("k must be at least 3")
    alphabet = T.alphabet
    a = len(alphabet)
    edges = list(itertools.combinations(range(k), 2))
    E = len(edges)
    count = a**E
    if count > limit:
        raise OracleTooLarge(f"{count} colourings exceed the oracle limit {limit}")
    eidx = {e: n for n, e in enumerate(edges)}
    tri = np.array(
        [(eidx[(h, i)], eidx[(h, j)], eidx[(i, j)]) for h, i, j in itertools.combinations(range(k), 3)]
    )
    rank = {v: i for i, v in enumerate(alphabet)}
    tcodes = np.array(sorted(rank[x] * a * a + rank[y] * a + rank[z] for x, y, z in T.triples))
    weights = a ** np.arange(E - 1, -1, -1, dtype=np.int64)
    for start in range(0, count, chunk):
        idx = np.arange(start, min(start + chunk, count), dtype=np.int64)
        cols = (idx[:, None] // weights[None, :]) % a
        sides = np.sort(cols[:, tri], axis=2)
        codes = sides[:, :, 0] * a * a + sides[:, :, 1] * a + sides[:, :, 2]
        ok = np.isin(codes, tcodes).all(axis=1)
        for t in tcodes:
            ok &= (codes == t).any(axis=1)
        hits = np.flatnonzero(ok)
        if hits.size:
            row = cols[hits[0]]
            return ColoredClique(k, {e: alphabet[int(row[n])] for n, e in enumerate(edges)})
    return None
