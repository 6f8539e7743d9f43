"""Drive the CLI over the fixture files in subprocesses and check exit codes."""
import subprocess
import sys
import tempfile
from pathlib import Path

FIX = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def cli(*argv):
    p = subprocess.run([sys.executable, "-m", "distset", *map(str, argv)], capture_output=True, text=True)
    return p.returncode, p.stdout.strip(), p.stderr.strip()


def main():
    tmp = Path(tempfile.mkdtemp())
    steps = [
        (0, ["build", "lemma1", "--set", FIX / "set_lemma1.json", "-o", tmp / "X.json"]),
        (0, ["verify", tmp / "X.json", "--ultrametric"]),
        (0, ["dist", tmp / "X.json"]),
        (0, ["spec", tmp / "X.json", "-n", "3"]),
        (0, ["build", "lemma1", "--set", FIX / "set_glue1.json", "-o", tmp / "a.json"]),
        (0, ["build", "lemma1", "--set", FIX / "set_glue2.json", "-o", tmp / "b.json"]),
        (0, ["build", "glue", "--pieces", tmp / "a.json", tmp / "b.json", "--deltas", "1/2,3/2", "-o", tmp / "g.json"]),
        (0, ["dist", tmp / "g.json"]),
        (0, ["build", "tree", "--tree", FIX / "tree_epsilon.json", "-o", tmp / "t.json"]),
        (0, ["verify", tmp / "t.json", "--report"]),
        (0, ["build", "tree", "--tree", FIX / "tree_baire.json", "-o", tmp / "baire.json"]),
        (0, ["verify", tmp / "baire.json"]),
        (0, ["build", "compact", "--tree", FIX / "tree_compact_full3.json", "-o", tmp / "k.json"]),
        (0, ["net", tmp / "k.json", "--eps", "1/4", "--canonical"]),
        # the gap tree builds fine; only its report fails
        (0, ["build", "compact", "--tree", FIX / "tree_separability_gap.json", "-o", tmp / "gap.json"]),
        (1, ["verify", tmp / "gap.json", "--report"]),
        (0, ["realize", "--triples", FIX / "triples_degenerate.json", "--k", "3"]),
        (0, ["realize", "--triples", FIX / "triples_mixed.json", "--kmax", "5"]),
        (1, ["realize", "--triples", FIX / "triples_unsat.json", "--kmax", "5"]),
        (2, ["realize", "--triples", FIX / "triples_not_metric.json"]),
        (2, ["realize", "--triples", FIX / "triples_broken_json.json"]),
    ]
    failures = 0
    for want, argv in steps:
        code, out, err = cli(*argv)
        ok = code == want
        failures += not ok
        shown = " ".join(str(a).replace(str(tmp) + "/", "").replace(str(FIX) + "/", "") for a in argv)
        print(f"{'ok  ' if ok else 'BAD '} exit {code} (want {want})  {shown}")
        for line in (out.splitlines()[:3] if argv[0] in ("dist", "verify") else []) + err.splitlines()[:1]:
            print(f"        {line}")
    print(f"{len(steps) - failures}/{len(steps)} steps as expected")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
