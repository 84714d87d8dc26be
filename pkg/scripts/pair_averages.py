"""Type I / Type II averages for a few functions along a doubling ladder in N."""

import argparse

from pythreg.multfunc import parse_spec
from pythreg.pairs import CSV_HEADER, dlms_log_average, typeI_average, typeII_average
from pythreg.weights import WeightConfig


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--f", action="append", default=None, help="function spec (repeatable)")
    ap.add_argument("--Q", type=int, default=30)
    ap.add_argument("--N0", type=int, default=250)
    ap.add_argument("--steps", type=int, default=3)
    ap.add_argument("--delta", type=float, default=0.1)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)

    specs = args.f or ["one", "liouville", "modchar 5 2", "prod modchar 5 2 arch 0.5"]
    print(CSV_HEADER + ",dlms_re,dlms_im")
    for text in specs:
        f = parse_spec(text)
        for rung in range(args.steps):
            N = args.N0 * 2**rung
            d = dlms_log_average(f, N)
            for avg, kind in ((typeI_average, "hyperbolic"), (typeII_average, "elliptic")):
                r = avg(f, args.Q, WeightConfig(1, 2, args.delta, kind), N, workers=args.workers)
                print(f"{r.csv_row()},{d.real!r},{d.imag!r}")


if __name__ == "__main__":
    main()
