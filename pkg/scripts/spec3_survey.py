"""Least k realizing each triangle set over a small alphabet.

Usage: python3 scripts/spec3_survey.py [alphabet ...] [--kmax K]
"""
import argparse
import itertools
import time
from fractions import Fraction

from distset.exact import format_rational, parse_rational
from distset.sampling import metric_triples
from distset.spectra import TriangleSet, realize_spec3_upto


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("alphabet", nargs="*", default=["1", "2"])
    ap.add_argument("--kmax", type=int, default=6)
    a = ap.parse_args()
    alphabet = sorted(parse_rational(v) for v in a.alphabet)
    pool = metric_triples(alphabet)
    t0 = time.perf_counter()
    counts = {}
    for r in range(1, len(pool) + 1):
        for sub in itertools.combinations(pool, r):
            T = TriangleSet.of(sub)
            found = realize_spec3_upto(T, a.kmax)
            k = found[0] if found else None
            counts[k] = counts.get(k, 0) + 1
            fmt = " ".join("(" + ",".join(format_rational(Fraction(v)) for v in t) + ")" for t in sorted(T.triples))
            print(f"{'-' if k is None else k:>2}  {fmt}")
    print()
    for k in sorted(counts, key=lambda v: (v is None, v)):
        label = f"unrealized for k <= {a.kmax}" if k is None else f"least k = {k}"
        print(f"{label}: {counts[k]} sets")
    print(f"{time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
