"""JSON and CSV file formats.  Rationals are always strings, never floats."""
from __future__ import annotations

import csv
import io as _io
import json
from fractions import Fraction
from pathlib import Path

from .exact import format_rational, parse_rational
from .metrics import FiniteMetricSpace, SpectrumSet
from .trees import BinaryTree, TreeError, TreeNode, TruncatedTree


class InputError(ValueError):
    """Unusable input file; the message is anchored to a line or a JSON path."""


def load_json(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=1) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def _rational(value, where: str) -> Fraction:
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from exc


def _field(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{where}: missing field {key!r}")
    return obj[key]


def rationals_from_json(obj, where="values") -> list[Fraction]:
    if isinstance(obj, dict):
        obj = _field(obj, "values", where)
        where = f"{where}.values"
    if not isinstance(obj, list):
        raise InputError(f"{where}: expected a list of rationals")
    return [_rational(v, f"{where}[{i}]") for i, v in enumerate(obj)]


def space_to_json(X: FiniteMetricSpace) -> dict:
    out = {
        "points": list(X.labels),
        "matrix": [[format_rational(v) for v in row] for row in X.dist],
    }
    for key in ("construction", "parameters", "scale"):
        if key in X.meta:
            out[key] = X.meta[key]
    return out


def space_from_json(obj, where="space") -> FiniteMetricSpace:
    labels = _field(obj, "points", where)
    matrix = _field(obj, "matrix", where)
    if not isinstance(labels, list) or not isinstance(matrix, list):
        raise InputError(f"{where}: points and matrix must be lists")
    if len(matrix) != len(labels):
        raise InputError(f"{where}.matrix: {len(matrix)} rows for {len(labels)} points")
    rows = []
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != len(labels):
            raise InputError(f"{where}.matrix[{i}]: expected {len(labels)} entries")
        rows.append(tuple(_rational(v, f"{where}.matrix[{i}][{j}]") for j, v in enumerate(row)))
    meta = {k: obj[k] for k in ("construction", "parameters", "scale") if k in obj}
    try:
        return FiniteMetricSpace(tuple(str(p) for p in labels), tuple(rows), meta)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from exc


def space_to_csv(X: FiniteMetricSpace) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + list(X.labels))
    for label, row in zip(X.labels, X.dist):
        w.writerow([label] + [format_rational(v) for v in row])
    return buf.getvalue()


def tree_to_json(T) -> dict:
    if isinstance(T, BinaryTree):
        return {"depth": T.depth, "nodes": [[w] for w in T.leaves]}
    return {
        "depth": T.depth,
        "branching_bound": T.branching_bound,
        "nodes": [[br.s, list(br.b)] for br in T.branches],
    }


def tree_from_json(obj, where="tree", binary: bool | None = None):
    """Read a tree file; nodes may list only leaves.

    Nodes given as bare words (or with the b part omitted) describe a tree
    on 2.  Pass ``binary=False`` to lift such a file to 2 x N with zero
    second coordinates.
    """
    depth = _field(obj, "depth", where)
    nodes = _field(obj, "nodes", where)
    if not isinstance(depth, int) or isinstance(depth, bool) or depth < 1:
        raise InputError(f"{where}.depth: expected a positive integer")
    if not isinstance(nodes, list):
        raise InputError(f"{where}.nodes: expected a list")
    parsed = []
    for i, node in enumerate(nodes):
        if isinstance(node, str):
            node = [node]
        if not isinstance(node, list) or not 1 <= len(node) <= 2 or not isinstance(node[0], str):
            raise InputError(f"{where}.nodes[{i}]: expected [\"bits\", [b-values]]")
        s = node[0]
        b = node[1] if len(node) == 2 else None
        if b is not None and (not isinstance(b, list) or any(not isinstance(v, int) or v < 0 for v in b)):
            raise InputError(f"{where}.nodes[{i}]: b must be a list of naturals")
        parsed.append((s, b))
    on_two = all(b is None for _, b in parsed)
    try:
        if on_two and binary is not False:
            return BinaryTree.from_leaves(depth, [s for s, _ in parsed])
        leaves = [TreeNode(s, tuple(b) if b is not None else (0,) * len(s)) for s, b in parsed]
        bound = obj.get("branching_bound")
        if bound is not None and (not isinstance(bound, int) or bound < 0):
            raise InputError(f"{where}.branching_bound: expected a natural")
        return TruncatedTree.from_leaves(depth, leaves, bound)
    except TreeError as exc:
        raise InputError(f"{where}: {exc}") from exc
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from exc


def spectrum_to_json(S: SpectrumSet) -> dict:
    return {
        "n": S.n,
        "distinct": S.distinct,
        "tuples": [[format_rational(v) for v in t] for t in sorted(S.tuples)],
    }


def spectrum_from_json(obj, where="spectrum") -> SpectrumSet:
    from .metrics import canonical

    n = _field(obj, "n", where)
    tuples = _field(obj, "tuples", where)
    if not isinstance(n, int) or n < 2:
        raise InputError(f"{where}.n: expected an integer >= 2")
    width = n * (n - 1) // 2
    out = set()
    for i, t in enumerate(tuples):
        if not isinstance(t, list) or len(t) != width:
            raise InputError(f"{where}.tuples[{i}]: expected {width} entries")
        out.add(canonical(tuple(_rational(v, f"{where}.tuples[{i}][{j}]") for j, v in enumerate(t)), n))
    return SpectrumSet(n, frozenset(out), bool(obj.get("distinct", False)))


def triangles_from_json(obj, where="triples"):
    from .spectra import TriangleError, TriangleSet

    if isinstance(obj, dict):
        obj = _field(obj, "triples", where)
        where = f"{where}.triples"
    if not isinstance(obj, list):
        raise InputError(f"{where}: expected a list of triples")
    triples = []
    for i, t in enumerate(obj):
        if not isinstance(t, list) or len(t) != 3:
            raise InputError(f"{where}[{i}]: expected three rationals")
        triple = tuple(_rational(v, f"{where}[{i}][{j}]") for j, v in enumerate(t))
        try:
            TriangleSet.check_triple(triple)
        except TriangleError as exc:
            raise InputError(f"{where}[{i}]: {exc}") from exc
        triples.append(triple)
    try:
        return TriangleSet.of(triples)
    except TriangleError as exc:
        raise InputError(f"{where}: {exc}") from exc


def triangles_to_json(T) -> dict:
    return {"triples": [[format_rational(v) for v in t] for t in sorted(T.triples)]}


def witness_to_json(clique) -> dict:
    return {
        "k": clique.k,
        "edges": [[i, j, format_rational(c)] for (i, j), c in sorted(clique.edge_colors.items())],
        "space": space_to_json(clique.to_space()),
    }
