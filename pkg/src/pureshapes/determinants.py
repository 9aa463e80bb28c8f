"""Exact integer determinants behind the volume computation.

All determinants are computed fraction-free (Bareiss). The relative class
number of Q(zeta_p) is obtained twice: from Maillet's determinant and, as an
independent oracle, from the odd-character Bernoulli product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import mpmath

from .fields import check_odd_prime
from .shapes import shape_exponent

IntMatrix = list[list[int]]

MAILLET_BOUND = 199


class DivisibilityFailure(ArithmeticError):
    pass


class PrecisionLoss(ArithmeticError):
    pass


def bareiss_det(M: Sequence[Sequence[int]]) -> int:
    A = [list(map(int, row)) for row in M]
    n = len(A)
    if n == 0:
        return 1
    if any(len(row) != n for row in A):
        raise ValueError("matrix must be square")
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if A[r][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


def jacobian_exponent_matrix(p: int) -> IntMatrix:
    """Exponents of a_j in x_i for the change of variables a -> (lambda^p, pair products, rest)."""
    check_odd_prime(p)
    ell = (p - 1) // 2
    n = p - 1
    C = []
    for i in range(1, ell + 1):
        C.append([shape_exponent(p, i, j) for j in range(1, p)])
    for i in range(ell + 1, p - 1):
        row = [0] * n
        row[i - ell - 1] = 1
        row[p - i + ell - 1] = 1
        C.append(row)
    C.append([1 - sum(r[j] for r in C) for j in range(n)])
    return C


def reduction_pipeline(p: int) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """(C, C', C''): C' replaces the last row by all ones, C'' subtracts column j from column p-j."""
    C = jacobian_exponent_matrix(p)
    ell = (p - 1) // 2
    C1 = [row[:] for row in C[:-1]] + [[1] * (p - 1)]
    C2 = [row[:] for row in C1]
    for row in C2:
        for j in range(1, ell + 1):
            row[p - j - 1] -= row[j - 1]
    return C, C1, C2


def reduced_exponent_matrix(p: int) -> IntMatrix:
    """The ell x ell matrix (2ij - p - 2p floor(ij/p))."""
    ell = (p - 1) // 2
    return [[shape_exponent(p, i, j) for j in range(1, ell + 1)] for i in range(1, ell + 1)]


def jacobian_det(p: int) -> int:
    return bareiss_det(jacobian_exponent_matrix(p))


@dataclass(frozen=True)
class ClassNumberData:
    p: int
    D_p: int
    h_minus: int


def maillet_matrix(p: int) -> IntMatrix:
    ell = (p - 1) // 2
    inv = {s: pow(s, -1, p) for s in range(1, ell + 1)}
    return [[(r * inv[s]) % p for s in range(1, ell + 1)] for r in range(1, ell + 1)]


def maillet_class_number(p: int, bound: int = MAILLET_BOUND) -> ClassNumberData:
    check_odd_prime(p)
    if p > bound:
        raise ValueError(f"p = {p} exceeds the configured bound {bound}")
    D = bareiss_det(maillet_matrix(p))
    scale = p ** ((p - 3) // 2)
    h, rem = divmod(abs(D), scale)
    if rem or h == 0:
        raise DivisibilityFailure(f"|D_{p}| = {abs(D)} is not a nonzero multiple of {scale}")
    return ClassNumberData(p, D, h)


def _primitive_root(p: int) -> int:
    n = p - 1
    factors = {q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, math.isqrt(q) + 1))}
    return next(g for g in range(2, p) if all(pow(g, n // q, p) != 1 for q in factors))


def h_minus_analytic(p: int, precision: int = 256) -> int:
    """h_p^- = 2p * prod over odd chars of (-B_{1,chi}/2), B_{1,chi} = (1/p) sum chi(a) a."""
    check_odd_prime(p)
    if p > MAILLET_BOUND:
        raise ValueError(f"p = {p} exceeds {MAILLET_BOUND}")
    # the product grows roughly like p^(p/4); keep headroom above its size
    prec = max(precision, 64 + int(p * math.log2(p)))
    g = _primitive_root(p)
    dlog = {}
    x = 1
    for k in range(p - 1):
        dlog[x] = k
        x = x * g % p
    with mpmath.workprec(prec):
        w = mpmath.expjpi(mpmath.mpf(2) / (p - 1))
        total = mpmath.mpc(1)
        for c in range(1, p - 1, 2):
            s = mpmath.fsum(w ** ((c * dlog[a]) % (p - 1)) * a for a in range(1, p))
            total *= -s / (2 * p)
        value = 2 * p * total
        h = int(mpmath.nint(mpmath.re(value)))
        err = abs(value - h)
        if err > mpmath.mpf("1e-6") or h <= 0:
            raise PrecisionLoss(f"h^- estimate {mpmath.nstr(value, 20)} is not near an integer")
    return h


def shadow_matrix(d: int) -> IntMatrix:
    """Recursive coefficient matrix: C_2 = [[1,-1],[0,2]], C_d borders C_{d-2}."""
    if d < 2 or d % 2:
        raise ValueError("d must be an even integer >= 2")
    if d == 2:
        return [[1, -1], [0, 2]]
    inner = shadow_matrix(d - 2)
    C = [[0] * d for _ in range(d)]
    C[0][0], C[0][1] = 1, -1
    C[1][0] = 1
    for i in range(d - 2):
        C[i + 2][2:] = inner[i]
    C[d - 1][0], C[d - 1][1] = -1, 2
    return C


def shadow_jacobian_det(d: int) -> int:
    if d > 64:
        raise ValueError("d must be <= 64")
    return bareiss_det(shadow_matrix(d))


def composite_exponent_matrix(n: int) -> IntMatrix:
    """(2ij - nj - n floor(ij/n) + n floor((n-i)j/n)) for 1 <= i, j <= (n-1)/2."""
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be an odd integer >= 3")
    ell = (n - 1) // 2
    return [
        [2 * i * j - n * j - n * ((i * j) // n) + n * (((n - i) * j) // n) for j in range(1, ell + 1)]
        for i in range(1, ell + 1)
    ]


def composite_jacobian_det(n: int) -> int:
    """2^ell times the determinant above; no claim of nonvanishing is made."""
    ell = (n - 1) // 2
    return 2**ell * bareiss_det(composite_exponent_matrix(n))
