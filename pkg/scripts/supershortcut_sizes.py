"""Plan size |E|/(k log* k) for the hop-4 and hop-2 path plans."""
import argparse

from hopforge.supershortcut import log_star, shortcut_path_binarylift, shortcut_path_d4


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-exp", type=int, default=16)
    args = ap.parse_args()
    print("k,d4_edges,d4_ratio,binarylift_edges")
    for e in range(3, args.max_exp + 1):
        k = 2 ** e
        d4 = len(shortcut_path_d4(k).edges)
        bl = len(shortcut_path_binarylift(k).edges) if e <= 14 else ""
        print(f"{k},{d4},{d4 / (k * log_star(k)):.4f},{bl}")


if __name__ == "__main__":
    main()
