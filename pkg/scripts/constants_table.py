"""Leading constants and Euler products for several primes and truncation points."""

import argparse

from pureshapes.cli import constant_lines


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, nargs="+", default=[3, 5, 7, 11])
    ap.add_argument("--Y", type=int, nargs="+", default=[10**3, 10**5, 10**6])
    args = ap.parse_args()
    print(f"{'p':>3} {'h-':>4} {'Y':>8} {'prod delta':>12} {'tail':>8} {'s6 wild':>12} {'s6 tame':>12} {'C wild':>12} {'C tame':>12}")
    for p in args.p:
        for Y in args.Y:
            d = constant_lines(p, Y)
            print(
                f"{p:3d} {d['h_minus']:4d} {Y:8d} {d['euler_product']:12.9f} {d['euler_tail_bound']:8.1e} "
                f"{d['section6']['c_wild']:12.4e} {d['section6']['c_tame']:12.4e} "
                f"{d['theorem_c']['c_wild']:12.4e} {d['theorem_c']['c_tame']:12.4e}"
            )
        print(f"    displays: {d['section6']['wild_display']}  |  {d['section6']['tame_display']}")


if __name__ == "__main__":
    main()
