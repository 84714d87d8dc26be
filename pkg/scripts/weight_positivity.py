"""Riemann-sum densities of the trapezoid weights for several (l, l', delta)."""

import argparse
import warnings

from pythreg.weights import WeightConfig, resonance, weight_density


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", type=int, default=2000)
    ap.add_argument("--deltas", default="0.05,0.1")
    args = ap.parse_args(argv)

    print("kind,ell,ell_prime,delta,N,density,slope")
    for kind in ("hyperbolic", "elliptic"):
        for l, lp in ((1, 1), (1, 2), (2, 1)):
            for delta in (float(d) for d in args.deltas.split(",")):
                cfg = WeightConfig(l, lp, delta, kind)
                with warnings.catch_warnings():
                    # l'/l = 2 is the boundary case b = 2; its slope 1 is still reported
                    warnings.simplefilter("ignore")
                    slope = resonance(cfg).slope
                print(f"{kind},{l},{lp},{delta},{args.N},{weight_density(cfg, args.N)!r},{slope!r}")


if __name__ == "__main__":
    main()
