"""Self-check suites run by ``pureshapes verify``."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from .densities import delta_q, delta_q_bruteforce, delta_q_expansion, euler_product
from .determinants import (
    bareiss_det,
    h_minus_analytic,
    jacobian_det,
    maillet_class_number,
    reduced_exponent_matrix,
    shadow_jacobian_det,
)
from .fields import SCTuple, field_from_tuple, integral_basis, orbit_members
from .census import enumerate_tuples
from .shapes import (
    ShapeWindow,
    change_of_basis_matrix,
    gram,
    lambda_pth_powers,
    lambda_pth_powers_from_basis,
    measure_window,
    measure_window_quad,
    minkowski_gram,
    rational_det,
    shape_params,
)

PRIMES_TO_23 = (3, 5, 7, 11, 13, 17, 19, 23)


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}: {self.detail}"


def determinant_checks() -> list[Check]:
    out = []
    for p in PRIMES_TO_23:
        J = abs(jacobian_det(p))
        h = maillet_class_number(p).h_minus
        target = 2 ** (p - 2) * p ** ((p - 3) // 2) * h
        out.append(Check(f"jacobian identity p={p}", J == target, f"|det C_p| = {J}, 2^(p-2) p^((p-3)/2) h^- = {target}"))
        ha = h_minus_analytic(p)
        out.append(Check(f"h^- routes agree p={p}", ha == h, f"Maillet {h}, Bernoulli {ha}"))
    out.append(Check("h^- at p=23", maillet_class_number(23).h_minus == 3, "expected 3"))
    red = bareiss_det([[1, 3], [-3, 1]])
    out.append(
        Check("p=5 reduction", abs(jacobian_det(5)) == 40 == 4 * abs(red) == 8 * 5,
              f"|det C_5| = {abs(jacobian_det(5))}, 2^2 |det [[1,3],[-3,1]]| = {4 * abs(red)}")
    )
    out.append(Check("reduced matrix p=5", reduced_exponent_matrix(5) == [[-3, -1], [-1, 3]], "ell x ell exponent block"))
    bad = [d for d in range(2, 33, 2) if shadow_jacobian_det(d) != 2]
    out.append(Check("shadow determinant", not bad, "det = 2 for even d <= 32" if not bad else f"fails at {bad}"))
    return out


def density_checks() -> list[Check]:
    out = []
    for q in (2, 3, 5, 7):
        for n in (2, 4, 6):
            a, b = delta_q(q, n), delta_q_bruteforce(q, n)
            out.append(Check(f"delta_q q={q} n={n}", a == b, f"closed {a}, enumerated {b}"))
    out.append(Check("expansion n=2", delta_q_expansion(2) == [1, 0, -3, 2], "1 - 3/q^2 + 2/q^3"))
    out.append(Check("expansion n=4", delta_q_expansion(4) == [1, 0, -10, 20, -15, 4], "1 - 10/q^2 + 20/q^3 - 15/q^4 + 4/q^5"))
    e = euler_product(3, 2)
    out.append(Check("euler product Y=2", math.isclose(e, 0.5, rel_tol=1e-15), f"{e}"))
    return out


def shape_checks(bound: int = 120, seed: int = 0) -> list[Check]:
    out = []
    for p in (3, 5, 7):
        bad = [t.a for t in enumerate_tuples(p, bound)
               if lambda_pth_powers(p, t.a) != lambda_pth_powers_from_basis(field_from_tuple(t))]
        out.append(Check(f"shape parameters p={p}", not bad, f"prod <= {bound}" if not bad else f"mismatch {bad[:3]}"))
    for p in (3, 5):
        seen: dict = {}
        collisions = 0
        for t in enumerate_tuples(p, bound):
            f = field_from_tuple(t)
            key = (f.ramification, shape_params(f))
            canon = min(orbit_members(p, t.a))
            if seen.setdefault(key, canon) != canon:
                collisions += 1
        out.append(Check(f"complete invariance p={p}", collisions == 0, f"{len(seen)} orbits, {collisions} collisions"))
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(20):
        R1 = Fraction(rng.randint(100, 300), 100)
        R2 = R1 + Fraction(rng.randint(1, 300), 100)
        R3 = R2 + Fraction(rng.randint(1, 300), 100)
        for w in (ShapeWindow(3, (R1, R2)), ShapeWindow(5, (R1, R2, R3))):
            worst = max(worst, abs(measure_window(w) - measure_window_quad(w)))
    out.append(Check("window measure", worst < 1e-9, f"max |closed - quadrature| = {worst:.2e}"))
    for a, p in (((2, 1), 3), ((10, 1), 3), ((2, 3, 1, 1), 5), ((1, 1, 1, 1, 1, 7), 7)):
        f = field_from_tuple(SCTuple(p, a))
        with mpmath.workprec(200):
            d = mpmath.det(minkowski_gram(integral_basis(f), 200))
        rel = abs(d - abs(f.disc)) / abs(f.disc)
        out.append(Check(f"gram det {a}", rel < 1e-9, f"{f.ramification.value}, |disc| = {abs(f.disc)}, rel err {float(rel):.1e}"))
        if f.is_tame:
            C = change_of_basis_matrix(f)
            out.append(Check(f"det C_t {a}", rational_det(C) == Fraction(1, p), "1/p"))
            G = gram(f)
            out.append(Check(f"tame gram symmetric {a}", G.is_symmetric(), "C_t G C_t^T"))
    return out


SUITES: dict[str, Callable[[], list[Check]]] = {
    "determinants": determinant_checks,
    "densities": density_checks,
    "shapes": shape_checks,
}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        return [c for fn in SUITES.values() for c in fn()]
    return SUITES[name]()
