"""Seeded random instances for experiments and acceptance runs."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .constructors import GlueSchedule, build_cantor_ultrametric, build_discrete_ultrametric
from .metrics import distance_set
from .spectra import TriangleSet
from .trees import BinaryTree, TreeNode, TruncatedTree


def random_rational(rng: random.Random, max_num: int = 100, max_den: int = 50) -> Fraction:
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))


def random_target(rng: random.Random, max_size: int = 20, **kw) -> list[Fraction]:
    size = rng.randint(1, max_size)
    values: set[Fraction] = set()
    while len(values) < size:
        values.add(random_rational(rng, **kw))
    return sorted(values)


def random_decreasing(rng: random.Random, length: int) -> list[Fraction]:
    values: set[Fraction] = set()
    while len(values) < length:
        values.add(random_rational(rng, 1000, 997))
    return sorted(values, reverse=True)


def _nonzero_word(rng: random.Random, depth: int) -> str:
    while True:
        w = "".join(rng.choice("01") for _ in range(depth))
        if "1" in w:
            return w


def random_tree(rng: random.Random, depth: int, branching_bound: int, max_branches: int = 200) -> TruncatedTree:
    """Tree on 2 x N holding the zero branch and a branch through ``0^(depth-1) 1``.

    The second branch makes the truncated limit-point condition hold; the
    rest are uniform over nonzero words and b-values.
    """
    b_of = lambda: tuple(rng.randint(0, branching_bound) for _ in range(depth))  # noqa: E731
    leaves = {TreeNode("0" * depth, (0,) * depth), TreeNode("0" * (depth - 1) + "1", b_of())}
    target = rng.randint(2, max_branches)
    space = (2**depth - 1) * (branching_bound + 1) ** depth
    target = min(target, space + 1)
    while len(leaves) < target:
        leaves.add(TreeNode(_nonzero_word(rng, depth), b_of()))
    return TruncatedTree.from_leaves(depth, sorted(leaves), branching_bound)


def random_binary_tree(rng: random.Random, depth: int, density: float | None = None) -> BinaryTree:
    density = rng.uniform(0.1, 0.9) if density is None else density
    leaves = {"0" * depth, "0" * (depth - 1) + "1"}
    for k in range(1, 2**depth):
        if rng.random() < density:
            leaves.add(format(k, "b").zfill(depth))
    return BinaryTree.from_leaves(depth, leaves)


def random_piece(rng: random.Random, values: list[Fraction]):
    """Discrete or Cantor piece whose positive distances are exactly ``values``."""
    if len(values) <= 4 and rng.random() < 0.5:
        return build_cantor_ultrametric(sorted(values, reverse=True), len(values))
    return build_discrete_ultrametric(values)


def random_schedule(rng: random.Random, pieces: int | None = None) -> GlueSchedule:
    """Nested targets ``A_n = A ∩ [0, bound_n)`` with admissible deltas."""
    pieces = pieces or rng.randint(2, 4)
    size = rng.randint(pieces, 3 * pieces)
    A: set[Fraction] = set()
    while len(A) < size:
        A.add(random_rational(rng, 40, 7))
    A = sorted(A)
    # cutting A at increasing positions keeps each A_n nonempty and nested
    cuts = sorted(rng.sample(range(1, len(A) + 1), pieces - 1)) + [len(A)]
    targets = [A[:c] for c in cuts]
    deltas, prev = [], Fraction(0)
    for An in targets:
        top = An[-1]
        ok = [v for v in An if 2 * v >= top and v >= prev]
        delta = rng.choice(ok)
        deltas.append(delta)
        prev = delta
    spaces = tuple(random_piece(rng, An) for An in targets)
    return GlueSchedule(spaces, tuple(deltas))


def violated_schedule(rng: random.Random, condition: str) -> GlueSchedule:
    """A schedule breaking exactly ``condition`` at some piece."""
    for _ in range(1000):
        G = random_schedule(rng)
        deltas = list(G.deltas)
        n = rng.randrange(len(deltas))
        A = sorted(distance_set(G.pieces[n]) - {0})
        if condition == "membership":
            deltas[n] += Fraction(1, 1009)
            if deltas[n] in A:
                continue
        elif condition == "half_sup":
            low = [v for v in A if 2 * v < A[-1] and (n == 0 or v >= deltas[n - 1])]
            if not low:
                continue
            deltas[n] = rng.choice(low)
        elif condition == "monotone":
            if n == 0:
                continue
            prev = sorted(distance_set(G.pieces[n - 1]) - {0})
            bigger = [v for v in prev if v > deltas[n] and 2 * v >= prev[-1]]
            if not bigger:
                continue
            deltas[n - 1] = bigger[0]
        else:
            raise ValueError(condition)
        return GlueSchedule(G.pieces, tuple(deltas))
    raise RuntimeError(f"could not build a schedule violating {condition}")


def metric_triples(alphabet) -> list[tuple]:
    return [t for t in itertools.combinations_with_replacement(sorted(alphabet), 3) if t[2] <= t[0] + t[1]]


def random_triangle_set(rng: random.Random, max_alphabet: int = 3) -> TriangleSet:
    while True:
        size = rng.randint(1, max_alphabet)
        alphabet = sorted({Fraction(rng.randint(1, 6), rng.choice([1, 2])) for _ in range(size)})
        pool = metric_triples(alphabet)
        chosen = [t for t in pool if rng.random() < 0.5]
        if chosen:
            return TriangleSet.of(chosen)
