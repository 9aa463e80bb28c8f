"""Recompute the frozen test fixtures from independent routes and write tests/fixtures/frozen.json.

Determinants come from sympy, census counts from the generic enumerator (not the
p = 3 vectorized path the library uses by default), and the micro-census from a
radicand-by-radicand scan with sympy factorization.
"""

import json
import math
import pathlib
import sys
import time

import sympy

from pureshapes.census import TypeFilter, _reports
from pureshapes.determinants import composite_exponent_matrix, maillet_matrix
from pureshapes.densities import euler_product
from pureshapes.shapes import ShapeWindow

OUT = pathlib.Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "frozen.json"


def composite_dets():
    out = {}
    for n in (9, 15, 21, 25, 27):
        ell = (n - 1) // 2
        out[str(n)] = int(2**ell * sympy.Matrix(composite_exponent_matrix(n)).det())
    return out


def maillet_dets():
    return {str(p): int(sympy.Matrix(maillet_matrix(p)).det()) for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31)}


def micro_census_p3(X: int):
    """Scan radicands m = a b^2 directly; a field is counted via its smaller radicand."""
    tuples = {"wild": 0, "tame": 0}
    fields = {"wild": 0, "tame": 0}
    N = math.isqrt(X // 3)
    for m in range(2, N * N * N + 1):
        f = sympy.factorint(m)
        if any(e >= 3 for e in f.values()):
            continue
        a = math.prod(q for q, e in f.items() if e == 1)
        b = math.prod(q for q, e in f.items() if e == 2)
        tame = m % 3 != 0 and m * m % 9 == 1
        disc = (3 if tame else 27) * (a * b) ** 2
        if disc > X:
            continue
        kind = "tame" if tame else "wild"
        tuples[kind] += 1
        if m < a * a * b:
            fields[kind] += 1
    return {"tuples": tuples, "fields": fields}


def census_p3(X: int, windows):
    ws = [ShapeWindow.parse(3, w) for w in windows]
    reps = _reports(3, X, ws, TypeFilter.BOTH, None, None, 10**6, fast=False)
    return {
        w: {k: getattr(r, k) for k in ("tuple_count_wild", "tuple_count_tame", "field_count_wild", "field_count_tame")}
        for w, r in zip(windows, reps)
    }


def main():
    t0 = time.time()
    data = {
        "composite_jacobian_det": composite_dets(),
        "maillet_det": maillet_dets(),
        "micro_census_p3_X675": micro_census_p3(675),
        "micro_census_p3_X20000": micro_census_p3(20000),
        "census_p3_X1e12": census_p3(10**12, ["1,2", "1,4", "1,8", "1,16"]),
        "euler_product_p3_Y1e6": euler_product(3, 10**6),
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {OUT} in {time.time() - t0:.1f}s", file=sys.stderr)


if __name__ == "__main__":
    main()
