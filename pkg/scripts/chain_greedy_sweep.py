"""Chain-greedy hopbound and size on grids, layered graphs and random DAGs."""
import argparse
import math

from hopforge import generators as gen
from hopforge.chain_greedy import chain_greedy_bound, chain_greedy_dag
from hopforge.graph import validate_shortcut_set
from hopforge.supershortcut import log_star


def instances(n):
    r = math.isqrt(n)
    while n % r:
        r -= 1
    yield "grid", gen.grid(r, n // r)
    yield "layered", gen.layered(n, 4, 0.3, 1)
    yield "random_dag", gen.random_dag(n, 0.3, 0, span=3, backbone=True)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", type=int, nargs="*", default=[216, 512, 1000])
    args = ap.parse_args()
    print("family,n,chains,rounds,size,size_ratio,hopbound,bound")
    for n in args.ns:
        for name, g in instances(n):
            res = chain_greedy_dag(g)
            rep = validate_shortcut_set(g, res.h, chain_greedy_bound(g.n))
            print(f"{name},{g.n},{res.chains},{res.rounds},{len(res.h)},"
                  f"{len(res.h) / (g.n * log_star(g.n)):.4f},{rep.worst},{chain_greedy_bound(g.n)}")


if __name__ == "__main__":
    main()
