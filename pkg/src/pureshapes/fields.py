"""Pure prime-degree fields Q(m^(1/p)) encoded by strongly carefree tuples.

A tuple ``(a_1, ..., a_{p-1})`` of squarefree, pairwise coprime positive
integers encodes the radicand ``m = prod(a_i ** i)``. Replacing ``m`` by
``m**k`` (``1 <= k < p``) and stripping p-th powers permutes the tuple by
``a'_i = a_{i * k^-1 mod p}``; tuples in one such orbit give isomorphic fields.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import Iterable, Optional

from .radical import RadicalMonomial, RadicalSum, monomial


class FieldError(ValueError):
    pass


class BadLength(FieldError):
    pass


class NotSquarefree(FieldError):
    def __init__(self, index: int):
        super().__init__(f"a_{index} is not squarefree")
        self.index = index


class NotCoprime(FieldError):
    def __init__(self, i: int, j: int):
        super().__init__(f"a_{i} and a_{j} share a factor")
        self.i, self.j = i, j


class DegenerateUnit(FieldError):
    pass


class NotPPowerFree(FieldError):
    pass


class FactorizationTooLarge(FieldError):
    pass


class WrongType(FieldError):
    pass


class Ramification(enum.Enum):
    WILD = "wild"
    TAME = "tame"


DEFAULT_TRIAL_BOUND = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        if n % d == 0:
            n //= d
        d += 1
    return True


@dataclass(frozen=True)
class SCTuple:
    """Strongly carefree (p-1)-tuple; construction validates every invariant."""

    p: int
    a: tuple[int, ...]

    def __post_init__(self):
        check_odd_prime(self.p)
        a = self.a
        if len(a) != self.p - 1:
            raise BadLength(f"expected {self.p - 1} entries, got {len(a)}")
        for i, x in enumerate(a, 1):
            if not isinstance(x, int) or x < 1:
                raise FieldError(f"a_{i} must be a positive integer")
            if not is_squarefree(x):
                raise NotSquarefree(i)
        for i in range(len(a)):
            for j in range(i + 1, len(a)):
                if gcd(a[i], a[j]) != 1:
                    raise NotCoprime(i + 1, j + 1)
        if all(x == 1 for x in a):
            raise DegenerateUnit("all a_i equal 1 (m = 1 gives no field)")

    @property
    def m(self) -> int:
        return radicand(self.p, self.a)

    @property
    def ell(self) -> int:
        return (self.p - 1) // 2


def validate(p: int, a: Iterable[int]) -> SCTuple:
    return SCTuple(p, tuple(a))


def radicand(p: int, a) -> int:
    return prod(x**i for i, x in enumerate(a, 1))


def _factor(m: int, bound: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        if d > bound:
            raise FactorizationTooLarge(f"cofactor {m} needs trial division past {bound}")
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def factor_radicand(p: int, m: int, bound: int = DEFAULT_TRIAL_BOUND) -> SCTuple:
    check_odd_prime(p)
    if m < 2:
        raise DegenerateUnit(f"radicand must be >= 2, got {m}")
    a = [1] * (p - 1)
    for q, e in _factor(m, bound).items():
        if e >= p:
            raise NotPPowerFree(f"{q}^{e} divides {m}")
        a[e - 1] *= q
    return SCTuple(p, tuple(a))


def ramification_of(p: int, m: int) -> Ramification:
    if m % p and pow(m, p - 1, p * p) == 1:
        return Ramification.TAME
    return Ramification.WILD


def ramification_type(t: SCTuple) -> Ramification:
    return ramification_of(t.p, t.m)


def discriminant(t: SCTuple) -> int:
    p = t.p
    e = p - 2 if ramification_type(t) is Ramification.TAME else p
    return (-1) ** ((p - 1) // 2) * p**e * prod(x ** (p - 1) for x in t.a)


@lru_cache(maxsize=None)
def orbit_index_maps(p: int) -> tuple[tuple[int, ...], ...]:
    """For k = 1..p-1, the 0-based source index of each entry of the k-th orbit member."""
    maps = []
    for k in range(1, p):
        kinv = pow(k, -1, p)
        maps.append(tuple((i * kinv) % p - 1 for i in range(1, p)))
    return tuple(maps)


def orbit_members(p: int, a) -> list[tuple[int, ...]]:
    """Orbit members in order k = 1..p-1 (may repeat)."""
    return [tuple(a[s] for s in src) for src in orbit_index_maps(p)]


def orbit(t: SCTuple) -> set[SCTuple]:
    return {SCTuple(t.p, b) for b in set(orbit_members(t.p, t.a))}


def canonical_tuple(p: int, a) -> tuple[int, ...]:
    return min(orbit_members(p, a))


def floor_exponent_product(p: int, a, j: int) -> int:
    """b_j = prod a_i^floor(i*j/p)."""
    return prod(x ** ((i * j) // p) for i, x in enumerate(a, 1))


@dataclass(frozen=True)
class PureField:
    tuple: SCTuple
    m: int
    ramification: Ramification
    disc: int
    b: tuple[int, ...]
    eps: Optional[int] = None

    @property
    def p(self) -> int:
        return self.tuple.p

    @property
    def a(self) -> tuple[int, ...]:
        return self.tuple.a

    @property
    def ell(self) -> int:
        return (self.p - 1) // 2

    @property
    def is_tame(self) -> bool:
        return self.ramification is Ramification.TAME

    def alpha_power(self, j: int) -> RadicalMonomial:
        """alpha**j with alpha = m**(1/p), normalized."""
        return monomial(1, [i * j for i in range(1, self.p)], self.a, self.p)

    def gamma(self, j: int) -> RadicalMonomial:
        """gamma_j = alpha**j / b_j (gamma_0 = 1)."""
        return monomial(1, [(i * j) % self.p for i in range(1, self.p)], self.a, self.p)


def field_from_tuple(t: SCTuple) -> PureField:
    """PureField for the given representative, without canonicalizing."""
    p, a = t.p, t.a
    m = t.m
    ram = ramification_of(p, m)
    eps = pow(m, -1, p * p) if ram is Ramification.TAME else None
    b = tuple(floor_exponent_product(p, a, j) for j in range(1, p))
    return PureField(t, m, ram, discriminant(t), b, eps)


def canonicalize(t: SCTuple) -> PureField:
    return field_from_tuple(SCTuple(t.p, canonical_tuple(t.p, t.a)))


def pure_field(p: int, m: int, bound: int = DEFAULT_TRIAL_BOUND) -> PureField:
    """Canonical field generated by the real p-th root of ``m``."""
    return canonicalize(factor_radicand(p, m, bound))


def integral_basis(f: PureField) -> list[RadicalSum]:
    p, base = f.p, f.a
    basis = [RadicalSum.rational(1, base, p)]
    if f.is_tame:
        nu = RadicalSum.rational(Fraction(f.m, p), base, p)
        for i in range(1, p):
            nu = nu + f.alpha_power(i) * Fraction(f.eps ** (i - 1), p)
        basis.append(nu)
        start = 2
    else:
        start = 1
    basis.extend(RadicalSum.of(f.gamma(j)) for j in range(start, p))
    return basis
