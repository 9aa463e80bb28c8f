"""Integer points of the labeled region against its predicted volume, as N grows.

No carefree condition is imposed. For p = 3 the count is O(N) via numpy; larger
p recurse over all tuples: about 80 s at p = 5, N = 1e4.
"""

import argparse
import math
import time

from pureshapes import ShapeWindow, region_lattice_count, region_volume_prediction


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--window", default="1,2,4")
    ap.add_argument("--N", type=float, nargs="+", default=[1e3, 1e4])
    args = ap.parse_args()
    w = ShapeWindow.parse(args.p, args.window)
    print(f"p = {args.p}, window {w}")
    print(f"{'N':>9} {'count':>10} {'predicted':>12} {'ratio':>7} {'1-4.2/logN':>11} {'sec':>6}")
    for N in args.N:
        N = int(N)
        t0 = time.perf_counter()
        c = region_lattice_count(args.p, N, w)
        v = region_volume_prediction(args.p, N, w)
        print(f"{N:9d} {c:10d} {v:12.1f} {c / v:7.4f} {1 - 4.2 / math.log(N):11.4f} {time.perf_counter() - t0:6.1f}")


if __name__ == "__main__":
    main()
