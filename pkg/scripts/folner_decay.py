"""Averages of Liouville and a few characters over the Folner sets Phi_K."""

import argparse

from pythreg.multfunc import Liouville, dirichlet_character, modify_character
from pythreg.weights import folner_average, folner_average_exact, folner_size


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--K", default="2,3,5,7")
    args = ap.parse_args(argv)

    funcs = {
        "liouville": Liouville(),
        "modchar 5 2": modify_character(dirichlet_character(5, 2)),
        "modchar 7 1": modify_character(dirichlet_character(7, 1)),
    }
    print("f,K,size,value_re,value_im,abs,exact")
    for K in (int(k) for k in args.K.split(",")):
        for name, f in funcs.items():
            v = folner_average(f, K)
            try:
                exact = str(folner_average_exact(f, K))
            except ValueError:
                exact = ""
            print(f"{name},{K},{folner_size(K)},{v.real!r},{v.imag!r},{abs(v)!r},{exact}")


if __name__ == "__main__":
    main()
