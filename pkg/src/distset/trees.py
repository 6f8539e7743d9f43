"""Pruned trees on 2 and on 2 x N, truncated at a finite depth.

A node of a tree on 2 x N is a pair ``(s, b)`` of a bit word and an equally
long tuple of naturals.  Branches of a truncated tree are its nodes of full
depth.  Trees on 2 are stored as sets of bit words.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from .exact import check_word, is_prefix, is_zero_word, pi_of_word, two_pow_neg, zeros


class TreeError(ValueError):
    pass


class LimitPointViolation(TreeError):
    """No representable value below ``2**-index`` in the projected tree."""

    def __init__(self, index: int):
        super().__init__(
            f"truncated limit-point condition fails at i={index}: "
            f"no nonzero full-depth word with value < 2^-{index}"
        )
        self.index = index


class TreeNode(NamedTuple):
    s: str
    b: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.s)

    def restrict(self, n: int) -> "TreeNode":
        return TreeNode(self.s[:n], self.b[:n])

    def label(self) -> str:
        return self.s + "|" + ",".join(map(str, self.b))


ROOT = TreeNode("", ())


def zero_node(k: int) -> TreeNode:
    return TreeNode(zeros(k), (0,) * k)


def _closure(items, restrict, length=len):
    out = set()
    for item in items:
        for n in range(length(item) + 1):
            out.add(restrict(item, n))
    return frozenset(out)


@dataclass(frozen=True)
class BinaryTree:
    """A pruned tree on 2 truncated at ``depth``."""

    depth: int
    words: frozenset

    def __post_init__(self):
        if self.depth < 1:
            raise TreeError("depth must be at least 1")
        for w in self.words:
            check_word(w)
            if len(w) > self.depth:
                raise TreeError(f"word {w!r} longer than depth {self.depth}")
            if w and w[:-1] not in self.words:
                raise TreeError(f"word {w!r} has no predecessor in the tree")
        if "" not in self.words:
            raise TreeError("tree is empty")
        for w in self.words:
            if len(w) < self.depth and w + "0" not in self.words and w + "1" not in self.words:
                raise TreeError(f"word {w!r} has no extension (tree not pruned)")

    @classmethod
    def from_leaves(cls, depth: int, leaves: Iterable[str]) -> "BinaryTree":
        leaves = list(leaves)
        for w in leaves:
            check_word(w)
        return cls(depth, _closure(leaves, lambda w, n: w[:n]))

    @property
    def leaves(self) -> list[str]:
        return sorted(w for w in self.words if len(w) == self.depth)

    def extensions(self, s: str) -> list[str]:
        """Full-depth words of the tree extending ``s``, in lexicographic order."""
        return [w for w in self.leaves if is_prefix(s, w)]


@dataclass(frozen=True)
class TruncatedTree:
    """A pruned tree on 2 x N truncated at ``depth``.

    The zero chain ``(0^k, 0^k)`` must be present and must be the only
    full-depth node whose first coordinate is all zeros.
    """

    depth: int
    branching_bound: int
    nodes: frozenset = field(repr=False)

    def __post_init__(self):
        if self.depth < 1:
            raise TreeError("depth must be at least 1")
        N = self.depth
        for node in self.nodes:
            s, b = node
            check_word(s)
            if len(s) != len(b):
                raise TreeError(f"node {node} has |s| != |b|")
            if len(s) > N:
                raise TreeError(f"node {node} deeper than {N}")
            if any(not isinstance(v, int) or v < 0 or v > self.branching_bound for v in b):
                raise TreeError(f"node {node} has b outside 0..{self.branching_bound}")
            if s and node.restrict(len(s) - 1) not in self.nodes:
                raise TreeError(f"node {node} has no predecessor in the tree")
        if ROOT not in self.nodes:
            raise TreeError("tree is empty")
        has_child = {node.restrict(node.length - 1) for node in self.nodes if node.length}
        for node in self.nodes:
            if node.length < N and node not in has_child:
                raise TreeError(f"node {node.label()} has no extension (tree not pruned)")
        if zero_node(N) not in self.nodes:
            raise TreeError("the zero branch (0^N, 0^N) is missing")
        zero_leaves = [n for n in self.nodes if n.length == N and is_zero_word(n.s)]
        if len(zero_leaves) != 1:
            raise TreeError("the zero branch must be the only branch with s = 0^N")

    @classmethod
    def from_leaves(cls, depth: int, leaves, branching_bound: int | None = None) -> "TruncatedTree":
        leaves = [TreeNode(check_word(s), tuple(int(v) for v in b)) for s, b in leaves]
        if branching_bound is None:
            branching_bound = max((max(n.b, default=0) for n in leaves), default=0)
        return cls(depth, branching_bound, _closure(leaves, TreeNode.restrict, lambda n: n.length))

    @property
    def branches(self) -> list[TreeNode]:
        return sorted(n for n in self.nodes if n.length == self.depth)

    @property
    def zero_branch(self) -> TreeNode:
        return zero_node(self.depth)


def lift(S: BinaryTree) -> TruncatedTree:
    """The tree ``{(s, 0^|s|) : s in S}`` on 2 x N."""
    nodes = frozenset(TreeNode(s, (0,) * len(s)) for s in S.words)
    return TruncatedTree(S.depth, 0, nodes)


def project_first(T: TruncatedTree) -> BinaryTree:
    """First-coordinate projection ``{s : (s, b) in T for some b}``."""
    return BinaryTree(T.depth, frozenset(n.s for n in T.nodes))


def common_prefix_length(x1: TreeNode, x2: TreeNode) -> int:
    n = 0
    for a1, a2, b1, b2 in zip(x1.s, x2.s, x1.b, x2.b):
        if a1 != a2 or b1 != b2:
            break
        n += 1
    return n


def mutual_predecessor(x1: TreeNode, x2: TreeNode) -> TreeNode:
    """Longest node lying below both branches."""
    if x1 == x2:
        raise TreeError("a branch has no maximal mutual predecessor with itself")
    return x1.restrict(common_prefix_length(x1, x2))


@dataclass(frozen=True)
class ChoiceData:
    """Chosen extensions ``alpha[s]``, their values ``d[s]`` and the epsilons.

    ``epsilons[i]`` is the largest ``d`` value strictly below ``2**-i``, for
    ``i < depth``.  Below depth ``depth`` no nonzero full-depth word is small
    enough, so the sequence stops there.
    """

    depth: int
    alpha: dict
    d: dict
    epsilons: tuple

    def value_at(self, s: str) -> Fraction:
        """Distance assigned to two branches splitting at a node with nonzero ``s``.

        The least epsilon in ``[2^-|s|, d[s]]``, or ``d[s]`` when there is none.
        """
        lo, hi = two_pow_neg(len(s)), self.d[s]
        fit = [e for e in self.epsilons if lo <= e <= hi]
        return min(fit) if fit else hi


def make_choices(T) -> ChoiceData:
    """Lexicographically least choices for a tree on 2 x N (or on 2).

    Raises :class:`LimitPointViolation` when some ``i < depth`` has no
    nonzero full-depth word of value below ``2**-i``.
    """
    S = project_first(T) if isinstance(T, TruncatedTree) else T
    N = S.depth
    leaves = [w for w in S.leaves if not is_zero_word(w)]
    alpha = {}
    for s in sorted(S.words, key=lambda w: (len(w), w)):
        ext = next((w for w in leaves if w.startswith(s)), None)
        if ext is not None:
            alpha[s] = ext
    d = {s: pi_of_word(w) for s, w in alpha.items()}
    values = sorted(set(d.values()))
    epsilons = []
    for i in range(N):
        below = [v for v in values if v < two_pow_neg(i)]
        if not below:
            raise LimitPointViolation(i)
        epsilons.append(below[-1])
    return ChoiceData(N, alpha, d, tuple(epsilons))


def representative(T: TruncatedTree, node: TreeNode) -> TreeNode:
    """Branch chosen to stand for ``node``: the lex-least nonzero branch through it.

    Falls back to the zero branch when that is the only branch through ``node``.
    """
    n = node.length
    for br in T.branches:
        if br.restrict(n) == node and not is_zero_word(br.s):
            return br
    if node == zero_node(n):
        return T.zero_branch
    raise TreeError(f"node {node.label()} is not in the tree")
