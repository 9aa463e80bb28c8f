"""Local densities of the strongly carefree condition and the predicted constants."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .determinants import maillet_class_number
from .fields import check_odd_prime, is_prime

DEFAULT_Y = 10**6
BRUTE_FORCE_LIMIT = 10**6


class TooLarge(ValueError):
    pass


class Normalization(enum.Enum):
    THEOREM_C = "theorem_c"
    SECTION_SIX = "section6"


def delta_q(q: int, n: int) -> Fraction:
    """(q-1)^n (q+n) / q^(n+1)."""
    if not is_prime(q) or n < 2:
        raise ValueError("need q prime and n >= 2")
    return Fraction((q - 1) ** n * (q + n), q ** (n + 1))


def _locally_carefree(residues, q: int) -> bool:
    q2 = q * q
    hits = 0
    for r in residues:
        if r % q2 == 0:
            return False
        if r % q == 0:
            hits += 1
    return hits <= 1


def _literal_count(q: int, n: int) -> int:
    return sum(_locally_carefree(t, q) for t in itertools.product(range(q * q), repeat=n))


def _transfer_count(q: int, n: int) -> int:
    # state = how many coordinates so far are 0 mod q (0, 1); tuples reaching 2 die
    counts = [1, 0]
    for _ in range(n):
        new = [0, 0]
        for r in range(q * q):
            if r % (q * q) == 0:
                continue
            if r % q == 0:
                new[1] += counts[0]
            else:
                new[0] += counts[0]
                new[1] += counts[1]
        counts = new
    return counts[0] + counts[1]


def delta_q_bruteforce(q: int, n: int) -> Fraction:
    """Fraction of residue tuples mod q^2 that are locally strongly carefree, by enumeration.

    Small cases are enumerated tuple by tuple; larger ones walk the residues one
    coordinate at a time, tracking how many coordinates are divisible by q.
    """
    if not is_prime(q) or q > 13 or not 1 <= n <= 6:
        raise TooLarge(f"enumeration supports primes q <= 13 and n <= 6, got q={q}, n={n}")
    total = q ** (2 * n)
    good = _literal_count(q, n) if total <= BRUTE_FORCE_LIMIT else _transfer_count(q, n)
    return Fraction(good, total)


def complement_count(q: int, n: int) -> int:
    """Tuples with no coordinate 0 mod q^2 and at least two coordinates 0 mod q."""
    return sum(math.comb(n, i) * (q - 1) ** i * (q * q - q) ** (n - i) for i in range(2, n + 1))


def delta_q_expansion(n: int) -> list[int]:
    """Integer coefficients c_k with delta_q = sum_k c_k q^-k, from (1 - x)^n (1 + n x)."""
    coeffs = [0] * (n + 2)
    for k in range(n + 1):
        c = (-1) ** k * math.comb(n, k)
        coeffs[k] += c
        coeffs[k + 1] += n * c
    return coeffs


def primes_up_to(Y: int) -> np.ndarray:
    if Y < 2:
        return np.array([], dtype=np.int64)
    sieve = np.ones(Y + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(Y) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.nonzero(sieve)[0]


def euler_tail_bound(n: int, Y: int) -> float:
    """Upper bound for sum_{q > Y} n^2 / q^2, which dominates 1 - prod_{q > Y} delta_q."""
    return n * n / Y


def euler_product(p: int, Y: int = DEFAULT_Y) -> float:
    """prod over primes q <= Y of delta_q(q, p - 1)."""
    if Y < 2:
        raise ValueError("Y must be >= 2")
    n = p - 1
    q = primes_up_to(int(Y)).astype(np.float64)
    x = 1.0 / q
    # log delta_q = n log(1 - 1/q) + log(1 + n/q)
    terms = n * np.log1p(-x) + np.log1p(n * x)
    return math.exp(math.fsum(terms.tolist()))


@dataclass(frozen=True)
class PredictedConstants:
    p: int
    euler_product: float
    c_wild: float
    c_tame: float
    truncation_Y: int
    normalization: Normalization
    h_minus: int
    tail_bound: float

    def predict(self, X: float, mu: float, tame: bool) -> float:
        """Predicted field count with |disc| <= X in a window of measure ``mu``."""
        p, ell = self.p, (self.p - 1) // 2
        if X <= 1 or math.isinf(mu):
            return math.nan if math.isinf(mu) else 0.0
        c = self.c_tame if tame else self.c_wild
        weight = mu if self.normalization is Normalization.THEOREM_C else math.factorial(ell) * mu
        return c * X ** (1 / (p - 1)) * math.log(X) ** (ell - 1) * weight


def predicted_constants(
    p: int, Y: int = DEFAULT_Y, normalization: Normalization = Normalization.SECTION_SIX
) -> PredictedConstants:
    """Leading constants of the field counts.

    THEOREM_C multiplies the window measure mu; SECTION_SIX multiplies the
    homogeneous polynomial H = ell! * mu. The two families differ in powers of
    p and in the wild/tame weights, so both are exposed.
    """
    check_odd_prime(p)
    ell = (p - 1) // 2
    h = maillet_class_number(p).h_minus
    E = euler_product(p, Y)
    base = (2 * p - 1) * 2 ** (p - 2) * h
    if normalization is Normalization.THEOREM_C:
        c_wild = E / (base * p ** (ell - 1))
        c_tame = (2 * p - 2) * E / (base * p ** (ell - 1))
    else:
        c_wild = (2 * p - 2) * E / (base * p ** (ell + 1 / (p - 1)))
        c_tame = E / (base * p ** (ell - 1 + (p - 2) / (p - 1)))
    return PredictedConstants(p, E, c_wild, c_tame, int(Y), normalization, h, euler_tail_bound(p - 1, int(Y)))
