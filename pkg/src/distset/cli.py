"""Command-line front end.

Exit codes: 0 on success, PASS or SAT; 1 on a failed verification or
UNSAT; 2 on unusable input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

from . import constructors as con
from . import io
from .config import Budget, BudgetExceeded
from .exact import format_rational
from .metrics import (
    Verdict,
    distance_set,
    eps_net,
    is_metric,
    is_ultrametric,
    scale,
    spectrum,
    spectrum_project,
)
from .spectra import realize_spec3, realize_spec3_upto
from .trees import BinaryTree, TreeError, TruncatedTree

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class CommandConfig:
    subcommand: str
    args: argparse.Namespace
    budget: Budget
    seed: int


def _rationals_arg(text: str) -> list[Fraction]:
    return io.rationals_from_json([t for t in text.split(",") if t.strip()], "argument")


def _emit(obj, out):
    text = io.dump_json(obj, out)
    if out is None:
        sys.stdout.write(text)


def _fmt_set(values) -> str:
    return "{" + ", ".join(format_rational(v) for v in sorted(values)) + "}"


def _load_space(path):
    return io.space_from_json(io.load_json(path), str(path))


def cmd_build(cfg: CommandConfig) -> int:
    a = cfg.args
    kind = a.kind
    if kind == "lemma1":
        X = con.build_discrete_ultrametric(io.rationals_from_json(io.load_json(a.set), a.set), a.anchor)
    elif kind == "cantor":
        d_seq = _rationals_arg(a.d) if a.d else io.rationals_from_json(io.load_json(a.dseq), a.dseq)
        X = con.build_cantor_ultrametric(d_seq, a.depth if a.depth is not None else len(d_seq))
    elif kind == "tree":
        T = io.tree_from_json(io.load_json(a.tree), a.tree, binary=False)
        X = con.build_tree_space(T)
    elif kind == "compact":
        if a.set:
            X = con.build_compact_finite(io.rationals_from_json(io.load_json(a.set), a.set))
        else:
            S = io.tree_from_json(io.load_json(a.tree), a.tree)
            if isinstance(S, TruncatedTree):
                raise io.InputError(f"{a.tree}: compact construction takes a tree on 2 (omit b values)")
            X = con.build_compact_tree_space(S, a.depth)
    elif kind == "glue":
        pieces = [_load_space(p) for p in a.pieces]
        X = con.glue_spaces(con.GlueSchedule(tuple(pieces), tuple(_rationals_arg(a.deltas))))
    elif kind == "scale":
        X = scale(_load_space(a.space), _rationals_arg(a.factor)[0])
    else:  # pragma: no cover - argparse restricts choices
        raise io.InputError(f"unknown construction {kind!r}")
    _emit(io.space_to_json(X), a.output)
    if a.csv:
        Path(a.csv).write_text(io.space_to_csv(X))
    return EXIT_OK


def _report(X, cfg: CommandConfig) -> list[tuple[str, Verdict]]:
    checks = [("metric axioms and triangle inequality", is_metric(X))]
    kind = X.meta.get("construction")
    params = X.meta.get("parameters", {})
    dist = distance_set(X)
    if kind == "lemma1" or (kind == "compact" and "values" in params):
        want = {Fraction(0)} | set(io.rationals_from_json(params["values"]))
        checks.append(("ultrametric", is_ultrametric(X)))
        checks.append(("distance set equals target plus 0", Verdict(dist == want, None, "distance set mismatch")))
    elif kind == "cantor":
        d_seq = io.rationals_from_json(params["d_seq"])
        checks.append(("ultrametric", is_ultrametric(X)))
        checks.append(
            ("distance set equals d_seq plus 0", Verdict(dist == {Fraction(0)} | set(d_seq), None, "mismatch"))
        )
        ok = all(len([v for v in dist if v >= b]) == len([v for v in d_seq if v >= b]) for b in d_seq)
        checks.append(("finitely many distances above each threshold", Verdict(ok, None, "count mismatch")))
    elif kind in ("tree", "compact"):
        T = io.tree_from_json(params["tree"], "parameters.tree", binary=False)
        expected = [br.s if kind == "compact" else br.label() for br in T.branches]
        if list(X.labels) != expected:
            checks.append(("points are the tree's branches in order", Verdict(False, None, "label mismatch")))
        else:
            for name, v in con.check_tree_space(T, X).items():
                if name != "metric":
                    checks.append((name.replace("_", " "), v))
    checks.append(
        ("2-point spectrum equals distance set", Verdict(spectrum(X, 2, budget=cfg.budget).as_values() == dist))
    )
    if len(X) >= 3 and len(X) <= 40:
        rng = random.Random(cfg.seed)
        perm = list(range(len(X)))
        rng.shuffle(perm)
        same = spectrum(X, 3, budget=cfg.budget) == spectrum(X.relabel(perm), 3, budget=cfg.budget)
        checks.append((f"3-point spectrum invariant under relabelling (seed {cfg.seed})", Verdict(same)))
        proj = spectrum_project(spectrum(X, 3, budget=cfg.budget), 2).as_values() == dist
        checks.append(("3-point spectrum projects to distance set", Verdict(proj)))
    return checks


def cmd_verify(cfg: CommandConfig) -> int:
    a = cfg.args
    X = _load_space(a.space)
    if a.report:
        checks = _report(X, cfg)
        if a.ultrametric and not any(name == "ultrametric" for name, _ in checks):
            checks.insert(1, ("ultrametric", is_ultrametric(X)))
        for name, v in checks:
            print(f"{v}  {name}")
        return EXIT_OK if all(v for _, v in checks) else EXIT_FAIL
    v = is_metric(X)
    if v and a.ultrametric:
        v = is_ultrametric(X)
    if not v and v.witness:
        v = replace(v, witness=tuple(X.labels[i] for i in v.witness))
    print(v)
    return EXIT_OK if v else EXIT_FAIL


def cmd_dist(cfg: CommandConfig) -> int:
    X = _load_space(cfg.args.space)
    print(_fmt_set(distance_set(X)))
    if cfg.args.csv:
        Path(cfg.args.csv).write_text(io.space_to_csv(X))
    return EXIT_OK


def cmd_spec(cfg: CommandConfig) -> int:
    a = cfg.args
    S = spectrum(_load_space(a.space), a.n, distinct=a.distinct, budget=cfg.budget)
    if a.project:
        S = spectrum_project(S, a.project)
    _emit(io.spectrum_to_json(S), a.output)
    return EXIT_OK


def cmd_net(cfg: CommandConfig) -> int:
    a = cfg.args
    X = _load_space(a.space)
    eps = _rationals_arg(a.eps)[0]
    if eps <= 0:
        raise io.InputError("--eps must be positive")
    if a.canonical:
        if X.meta.get("construction") != "compact" or "tree" not in X.meta.get("parameters", {}):
            raise io.InputError(f"{a.space}: --canonical needs a space built by 'build compact --tree'")
        T = io.tree_from_json(X.meta["parameters"]["tree"], "parameters.tree", binary=False)
        net = con.canonical_net(BinaryTree(T.depth, frozenset(n.s for n in T.nodes)), eps)
    else:
        net = eps_net(X, eps)
    _emit({"eps": format_rational(eps), "net": net}, a.output)
    return EXIT_OK


def cmd_realize(cfg: CommandConfig) -> int:
    a = cfg.args
    T = io.triangles_from_json(io.load_json(a.triples), a.triples)
    if a.k is not None:
        w = realize_spec3(T, a.k, cfg.budget)
        found = (a.k, w) if w is not None else None
    else:
        found = realize_spec3_upto(T, a.kmax, cfg.budget)
    if found is None:
        print(f"UNSAT for k = {a.k}" if a.k is not None else f"UNSAT for 3 <= k <= {a.kmax}")
        return EXIT_FAIL
    _emit(io.witness_to_json(found[1]), a.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="distset", description=__doc__.splitlines()[0])
    p.add_argument("--budget", type=int, help="enumeration budget (overrides DISTSET_BUDGET)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized report checks")
    sub = p.add_subparsers(dest="subcommand", required=True)

    b = sub.add_parser("build", help="construct a space and write its JSON file")
    b.add_argument("kind", choices=["lemma1", "cantor", "tree", "compact", "glue", "scale"])
    b.add_argument("--set", help="distance target file (lemma1, compact finite mode)")
    b.add_argument("--anchor", help="anchor value for lemma1 (default: min of the set)")
    b.add_argument("--d", help="comma-separated decreasing distances (cantor)")
    b.add_argument("--dseq", help="file with decreasing distances (cantor)")
    b.add_argument("--depth", type=int)
    b.add_argument("--tree", help="tree file (tree, compact)")
    b.add_argument("--pieces", nargs="+", help="space files to glue, in order")
    b.add_argument("--deltas", help="comma-separated cross distances, one per piece")
    b.add_argument("--space", help="space file (scale)")
    b.add_argument("--factor", help="positive rational (scale)")
    b.add_argument("-o", "--output")
    b.add_argument("--csv", help="also write the distance matrix as CSV")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="check metric axioms")
    v.add_argument("space")
    v.add_argument("--ultrametric", action="store_true")
    v.add_argument("--report", action="store_true", help="list every invariant checked")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dist", help="print the distance set")
    d.add_argument("space")
    d.add_argument("--csv", help="write the distance matrix as CSV")
    d.set_defaults(func=cmd_dist)

    s = sub.add_parser("spec", help="n-point spectrum")
    s.add_argument("space")
    s.add_argument("-n", type=int, default=3)
    s.add_argument("--distinct", action="store_true", help="only tuples of distinct points")
    s.add_argument("--project", type=int, help="project the result to this many points")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_spec)

    n = sub.add_parser("net", help="eps-net of a space")
    n.add_argument("space")
    n.add_argument("--eps", required=True)
    n.add_argument("--canonical", action="store_true", help="chosen-branch net of a compact tree space")
    n.add_argument("-o", "--output")
    n.set_defaults(func=cmd_net)

    r = sub.add_parser("realize", help="find a space with a given distinct-point 3-point spectrum")
    r.add_argument("--triples", required=True)
    r.add_argument("--kmax", type=int, default=6)
    r.add_argument("--k", type=int, help="search this k only")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_realize)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        budget = Budget.from_env()
        if args.budget is not None:
            budget = replace(budget, spectrum_tuples=args.budget, search_nodes=args.budget)
        cfg = CommandConfig(args.subcommand, args, budget, args.seed)
        return args.func(cfg)
    except con.MetricViolation as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (io.InputError, TreeError, con.ScheduleViolation, BudgetExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except json.JSONDecodeError as exc:  # pragma: no cover - load_json wraps these
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
