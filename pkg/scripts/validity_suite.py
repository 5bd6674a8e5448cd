"""Every algorithm on 100 seeded instances per family; one CSV row per run."""
import argparse
import sys
import time

from hopforge.experiment import rows_to_csv
from hopforge.suites import ALGOS, FAMILIES, run_validity


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=100)
    ap.add_argument("--algos", nargs="*", default=list(ALGOS))
    ap.add_argument("-o", "--out", default="-")
    args = ap.parse_args()
    t0 = time.perf_counter()
    rows = [run_validity(a, f, s) for a in args.algos for f in FAMILIES for s in range(args.seeds)]
    text = rows_to_csv(rows)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        open(args.out, "w").write(text)
    for a in args.algos:
        ok = sum(r.status == "ok" for r in rows if r.algo == a)
        print(f"{a}: {ok}/{len(FAMILIES) * args.seeds} valid", file=sys.stderr)
    print(f"total {time.perf_counter() - t0:.0f}s", file=sys.stderr)


if __name__ == "__main__":
    main()
