"""Set-cover pipeline: picked chains, hopbound and size for several D."""
import argparse

from hopforge import generators as gen
from hopforge.graph import validate_shortcut_set
from hopforge.setcover import det_shortcut_dag, setcover_size_bound
from hopforge.supershortcut import log_star


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", type=int, nargs="*", default=[216, 512])
    ap.add_argument("--Ds", type=int, nargs="*", default=[4, 6, 8])
    args = ap.parse_args()
    print("family,n,D,picked,picked_bound,size,size_ratio,hopbound")
    for n in args.ns:
        fams = {"layered": gen.layered(n, 4, 0.3, 1), "random_dag": gen.random_dag(n, 3.0 / n, 3),
                "backbone_dag": gen.random_dag(n, 0.3, 0, span=3, backbone=True)}
        for name, g in fams.items():
            for D in args.Ds:
                res = det_shortcut_dag(g, D)
                rep = validate_shortcut_set(g, res.h, 10 * D)
                c = len(res.picked)
                ratio = len(res.h) / (n * log_star(n) + c * c * D)
                print(f"{name},{n},{D},{c},{setcover_size_bound(n, D):.1f},{len(res.h)},{ratio:.4f},{rep.worst}")


if __name__ == "__main__":
    main()
