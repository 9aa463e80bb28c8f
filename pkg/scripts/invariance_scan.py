"""Check that canonical shapes separate orbits: every field up to a radicand bound, zero collisions expected."""

import argparse
import collections
import time

from pureshapes.census import enumerate_tuples
from pureshapes.fields import field_from_tuple, orbit_members
from pureshapes.shapes import shape_params


def scan(p, bound):
    shapes = collections.defaultdict(set)
    for t in enumerate_tuples(p, bound):
        shapes[shape_params(field_from_tuple(t))].add(min(orbit_members(p, t.a)))
    collisions = {s: o for s, o in shapes.items() if len(o) > 1}
    return len(shapes), collisions


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, nargs="+", default=[3, 5, 7])
    ap.add_argument("--bound", type=int, default=1000)
    args = ap.parse_args()
    for p in args.p:
        t0 = time.perf_counter()
        n, bad = scan(p, args.bound)
        print(f"p = {p}: {n} distinct shapes, {len(bad)} collisions, {time.perf_counter() - t0:.1f}s")
        for s, orbits in list(bad.items())[:5]:
            print(f"  {s.lambdas_p}: {sorted(orbits)}")


if __name__ == "__main__":
    main()
