"""Finite spaces realising prescribed distance sets.

Four builders (discrete two-point-per-value ultrametric, Cantor-word
ultrametric, tree space, compact tree space) and a gluing operation for
stacking bounded pieces into an unbounded space.  Builders that are proved
to yield metrics re-verify their output and raise :class:`MetricViolation`
on failure.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .exact import format_rational, is_zero_word, pi_of_word, two_pow_neg
from .metrics import FiniteMetricSpace, Verdict, distance_set, is_metric, is_ultrametric
from .trees import (
    BinaryTree,
    ChoiceData,
    TruncatedTree,
    common_prefix_length,
    lift,
    make_choices,
    project_first,
    representative,
)


class MetricViolation(AssertionError):
    def __init__(self, verdict: Verdict, labels=()):
        witness = verdict.witness
        if witness and labels:
            witness = tuple(labels[i] for i in witness)
        super().__init__(f"constructed space is not a metric: {verdict.reason} at {witness}")
        self.verdict = verdict
        self.witness = witness


class ScheduleViolation(ValueError):
    """A gluing schedule breaks one of its conditions.

    ``condition`` is ``"membership"``, ``"half_sup"`` or ``"monotone"``.
    """

    def __init__(self, condition: str, index: int, message: str):
        super().__init__(f"{condition} violated at piece {index}: {message}")
        self.condition = condition
        self.index = index


@dataclass(frozen=True)
class DistanceTarget:
    values: frozenset

    def __post_init__(self):
        if not self.values:
            raise ValueError("distance target must be nonempty")
        for v in self.values:
            if not isinstance(v, Fraction) or v <= 0:
                raise ValueError(f"target values must be positive rationals, got {v!r}")

    @classmethod
    def of(cls, values: Iterable) -> "DistanceTarget":
        return cls(frozenset(Fraction(v) for v in values))

    def sorted(self) -> list[Fraction]:
        return sorted(self.values)


def _params(**kw):
    return {k: ([format_rational(x) for x in v] if isinstance(v, (list, tuple)) else v) for k, v in kw.items()}


def build_discrete_ultrametric(A, anchor=None) -> FiniteMetricSpace:
    """Points ``x_i, y_i`` per target value ``a_i``.

    ``d(x_i, y_i) = a_i``; any other pair from indices ``i != j`` sits at
    ``max(a, a_i, a_j)`` where the anchor ``a`` defaults to ``min(A)``.
    """
    if not isinstance(A, DistanceTarget):
        A = DistanceTarget.of(A)
    values = A.sorted()
    a = values[0] if anchor is None else Fraction(anchor)
    if a not in A.values:
        raise ValueError(f"anchor {a} is not in the target set")
    labels = [f"{p}{i}" for i in range(len(values)) for p in "xy"]

    def d(u, v):
        i, j = int(u[1:]), int(v[1:])
        if i == j:
            return values[i]
        return max(a, values[i], values[j])

    meta = {"construction": "lemma1", "parameters": _params(values=values, anchor=format_rational(a))}
    return FiniteMetricSpace.from_function(labels, d, meta)


def build_cantor_ultrametric(d_seq: Sequence, depth: int) -> FiniteMetricSpace:
    """All binary words of length ``depth``; ``d(u, v) = d_seq[first index where u, v differ]``."""
    d_seq = [Fraction(v) for v in d_seq]
    if depth < 0 or len(d_seq) < depth:
        raise ValueError(f"need at least depth={depth} distances, got {len(d_seq)}")
    if any(v <= 0 for v in d_seq):
        raise ValueError("distances must be positive")
    for i in range(len(d_seq) - 1):
        if not d_seq[i] > d_seq[i + 1]:
            raise ValueError(f"distances must be strictly decreasing (index {i})")
    labels = [format(k, "b").zfill(depth) if depth else "" for k in range(1 << depth)]

    def d(u, v):
        n = next(i for i, (a, b) in enumerate(zip(u, v)) if a != b)
        return d_seq[n]

    meta = {"construction": "cantor", "parameters": _params(d_seq=d_seq[:depth]) | {"depth": depth}}
    return FiniteMetricSpace.from_function(labels, d, meta)


def tree_distance(C: ChoiceData, x1, x2) -> Fraction:
    """Distance between two distinct branches of a tree space."""
    k = common_prefix_length(x1, x2)
    s = x1.s[:k]
    if is_zero_word(s):
        return max(pi_of_word(x1.s), pi_of_word(x2.s))
    return C.value_at(s)


def _tree_meta(T: TruncatedTree, construction: str) -> dict:
    from .io import tree_to_json

    return {"construction": construction, "parameters": {"tree": tree_to_json(T)}}


def build_tree_space(T: TruncatedTree, C: ChoiceData | None = None, verify: bool = True) -> FiniteMetricSpace:
    """Metric on the full-depth branches of ``T``, keyed to their mutual predecessor.

    Two branches splitting at ``(s, b)`` are at distance
    ``max(pi(alpha1), pi(alpha2))`` when ``s`` is all zeros, otherwise the
    least epsilon in ``[2^-|s|, d_s]``, otherwise ``d_s``.
    """
    C = C if C is not None else make_choices(T)
    branches = T.branches
    labels = [br.label() for br in branches]
    by_label = dict(zip(labels, branches))
    X = FiniteMetricSpace.from_function(
        labels, lambda u, v: tree_distance(C, by_label[u], by_label[v]), _tree_meta(T, "tree")
    )
    if verify:
        verdict = is_metric(X)
        if not verdict:
            raise MetricViolation(verdict, X.labels)
    return X


def build_compact_tree_space(S: BinaryTree, depth: int | None = None, verify: bool = True) -> FiniteMetricSpace:
    """Tree space of the lift ``{(s, 0^|s|)}`` of a tree on 2, labelled by words.

    With ``depth`` below ``S.depth`` the tree is cut back first.
    """
    if depth is not None and depth != S.depth:
        if depth > S.depth:
            raise ValueError(f"tree only has depth {S.depth}")
        S = BinaryTree(depth, frozenset(w for w in S.words if len(w) <= depth))
    T = lift(S)
    X = build_tree_space(T, make_choices(S), verify=verify)
    labels = tuple(label.split("|")[0] for label in X.labels)
    return FiniteMetricSpace(labels, X.dist, _tree_meta(T, "compact"))


def build_compact_finite(A) -> FiniteMetricSpace:
    """Compact space for a finite target: the discrete construction."""
    X = build_discrete_ultrametric(A)
    meta = dict(X.meta)
    meta["construction"] = "compact"
    return FiniteMetricSpace(X.labels, X.dist, meta)


@dataclass(frozen=True)
class GlueSchedule:
    """Pieces to stack, the cross distances ``deltas`` and optional targets.

    When ``targets`` is omitted each piece's target is its own set of
    positive distances.
    """

    pieces: tuple
    deltas: tuple
    targets: tuple | None = None

    def target(self, n: int) -> frozenset:
        if self.targets is not None:
            return frozenset(Fraction(v) for v in self.targets[n])
        return distance_set(self.pieces[n]) - {Fraction(0)}

    def validate(self) -> None:
        if not self.pieces:
            raise ValueError("schedule has no pieces")
        if len(self.deltas) != len(self.pieces):
            raise ValueError(f"{len(self.pieces)} pieces but {len(self.deltas)} deltas")
        for n, delta in enumerate(self.deltas):
            A = self.target(n)
            if not A:
                raise ScheduleViolation("membership", n, "piece has no positive distances")
            if delta not in A:
                raise ScheduleViolation("membership", n, f"delta {delta} not in the piece's distance set")
            if 2 * delta < max(A):
                raise ScheduleViolation("half_sup", n, f"delta {delta} < sup/2 = {max(A) / 2}")
            if n and self.deltas[n - 1] > delta:
                raise ScheduleViolation("monotone", n, f"delta {self.deltas[n - 1]} > {delta}")


def glue_spaces(G: GlueSchedule, verify: bool = True) -> FiniteMetricSpace:
    """Disjoint union; points of pieces ``n < m`` are ``deltas[m]`` apart."""
    G = GlueSchedule(tuple(G.pieces), tuple(Fraction(v) for v in G.deltas), G.targets)
    G.validate()
    owner, labels = [], []
    for n, piece in enumerate(G.pieces):
        for i, label in enumerate(piece.labels):
            owner.append((n, i))
            labels.append(f"{n}:{label}")
    size = len(labels)
    rows = [[Fraction(0)] * size for _ in range(size)]
    for p in range(size):
        n, i = owner[p]
        for q in range(p + 1, size):
            m, j = owner[q]
            v = G.pieces[n].dist[i][j] if n == m else G.deltas[max(n, m)]
            rows[p][q] = rows[q][p] = v
    meta = {
        "construction": "glue",
        "parameters": {
            "deltas": [format_rational(v) for v in G.deltas],
            "pieces": [dict(p.meta) for p in G.pieces],
        },
    }
    X = FiniteMetricSpace(tuple(labels), tuple(map(tuple, rows)), meta)
    if verify:
        verdict = is_metric(X)
        if not verdict:
            raise MetricViolation(verdict, X.labels)
    return X


def net_depth(C: ChoiceData, eps) -> int:
    """Least ``n`` with an epsilon in ``(2^-n, eps)``, capped at the tree depth."""
    eps = Fraction(eps)
    for n in range(C.depth + 1):
        if any(two_pow_neg(n) < e < eps for e in C.epsilons):
            return n
    return C.depth


def canonical_net(S: BinaryTree, eps) -> list[str]:
    """Labels of the chosen branches ``alpha_s`` for ``|s| <= n_0`` in a compact tree space."""
    C = make_choices(S)
    n0 = net_depth(C, eps)
    net = set()
    for s in S.words:
        if len(s) <= n0:
            net.add(C.alpha.get(s, "0" * S.depth))
    return sorted(net)


def check_tree_space(T: TruncatedTree, X: FiniteMetricSpace, C: ChoiceData | None = None) -> dict[str, Verdict]:
    """Finite-depth checks of the tree construction, by name.

    ``X`` must be the output of :func:`build_tree_space` (or its compact
    variant) on ``T``, with points in branch order.
    """
    C = C if C is not None else make_choices(T)
    branches = T.branches
    n = len(branches)
    if len(X) != n:
        raise ValueError("space does not match the tree")
    N = T.depth
    unit = 1 << N
    P = np.array([int(br.s, 2) for br in branches], dtype=np.int64)
    D = np.array([[int(v * unit) for v in row] for row in X.dist], dtype=np.int64)
    L = np.array([[common_prefix_length(a, b) for b in branches] for a in branches], dtype=np.int64)
    zero_prefix = np.array(
        [[is_zero_word(a.s[: L[i, j]]) for j, b in enumerate(branches)] for i, a in enumerate(branches)]
    )
    off = ~np.eye(n, dtype=bool)
    out = {"metric": is_metric(X)}

    # triples whose pairs all split on the zero chain are ultrametric
    Z = zero_prefix & off
    verdict = Verdict(True)
    for j in range(n):
        mask = Z[:, j, None] & Z[None, j, :] & Z
        viol = mask & (D > np.maximum(D[:, j, None], D[None, j, :]))
        if viol.any():
            i, k = (int(v) for v in np.argwhere(viol)[0])
            verdict = Verdict(False, (X.labels[i], X.labels[j], X.labels[k]), "zero-chain triple not ultrametric")
            break
    out["zero_chain_ultrametric"] = verdict

    nz = ~zero_prefix & off
    lo = np.abs(P[:, None] - P[None, :])
    hi = P[:, None] + P[None, :]
    viol = nz & ((D < lo) | (D > hi))
    if viol.any():
        i, j = (int(v) for v in np.argwhere(viol)[0])
        out["split_pair_bounds"] = Verdict(False, (X.labels[i], X.labels[j]), "|pi1-pi2| <= d <= pi1+pi2 fails")
    else:
        out["split_pair_bounds"] = Verdict(True)

    dist = distance_set(X)
    S = project_first(T)
    branch_values = {pi_of_word(w) for w in S.leaves}
    missing = sorted(branch_values - dist)
    out["contains_branch_values"] = Verdict(not missing, tuple(missing) or None, "branch value not realised")
    allowed = branch_values | set(C.epsilons) | set(C.d.values())
    extra = sorted(dist - allowed)
    out["within_allowed_values"] = Verdict(not extra, tuple(extra) or None, "distance outside allowed values")

    out["separability"] = check_separability(T, X)
    return out


def check_separability(T: TruncatedTree, X: FiniteMetricSpace) -> Verdict:
    """``d(x, rep(x restricted to n)) < 2^(1-n)`` for every branch ``x`` and ``n <= depth``."""
    branches = T.branches
    pos = {br: i for i, br in enumerate(branches)}
    reps = {}
    for x in branches:
        for n in range(T.depth + 1):
            node = x.restrict(n)
            if node not in reps:
                reps[node] = representative(T, node)
            dv = X.dist[pos[x]][pos[reps[node]]]
            if not dv < 2 * two_pow_neg(n):
                return Verdict(
                    False,
                    (X.labels[pos[x]], n, X.labels[pos[reps[node]]], format_rational(dv)),
                    "separability bound 2^(1-n) exceeded",
                )
    return Verdict(True)


def ultrametric_checks(X: FiniteMetricSpace) -> dict[str, Verdict]:
    return {"metric": is_metric(X), "ultrametric": is_ultrametric(X)}
