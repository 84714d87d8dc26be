"""Empirical w(p, q) on the grid (Qm+a)^2 + (Qn+b)^2 against the closed forms."""

import argparse
import itertools
import sys

from pythreg.counting import CSV_HEADER, w_pair


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", type=int, default=2000)
    ap.add_argument("--Q", type=int, default=7)
    ap.add_argument("--a", type=int, default=1)
    ap.add_argument("--b", type=int, default=0)
    ap.add_argument("--moduli", default="5,13,17,29")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)

    moduli = [int(x) for x in args.moduli.split(",")]
    print(CSV_HEADER)
    worst = 0.0
    for p, q in itertools.combinations_with_replacement(moduli, 2):
        r = w_pair(args.N, args.Q, args.a, args.b, p, q, workers=args.workers)
        worst = max(worst, r.abs_error)
        print(r.csv_row())
    print(f"# max |empirical - closed form| = {worst:.3g}  (tolerance 50/N = {50 / args.N:.3g})", file=sys.stderr)


if __name__ == "__main__":
    main()
