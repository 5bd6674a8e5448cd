"""Greedy |H| across n for the 2sqrt and cbrt regimes, without early stopping."""
import argparse
import csv
import sys
import time

from hopforge.suites import SCALING_NS, band, scaling_point


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", type=int, nargs="*", default=list(SCALING_NS))
    ap.add_argument("--regimes", nargs="*", default=["2sqrt", "cbrt"])
    ap.add_argument("--families", nargs="*", default=["random_dag", "path"])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("-o", "--out", default="-")
    args = ap.parse_args()
    f = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(f, lineterminator="\n")
    w.writerow(["regime", "family", "n", "beta", "size", "ratio", "rounds", "millis"])
    for regime in args.regimes:
        for family in args.families:
            ratios = []
            for n in args.ns:
                t = time.perf_counter()
                beta, size, ratio, tr = scaling_point(family, n, regime, args.seed)
                ms = round(1000 * (time.perf_counter() - t))
                w.writerow([regime, family, n, beta, size, f"{ratio:.5f}", len(tr.rounds), ms])
                f.flush()
                ratios.append(ratio)
            print(f"{regime}/{family}: band={band(ratios):.2f}", file=sys.stderr)


if __name__ == "__main__":
    main()
