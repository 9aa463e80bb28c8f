"""Exact arithmetic on p-th-root radical monomials over a fixed radicand base.

A monomial is ``coef * prod(a_i ** (e_i / p))`` where the ``a_i`` are the
entries of a strongly carefree tuple. Because the ``a_i`` are squarefree and
pairwise coprime, the canonical form (``0 <= e_i < p``, exponent forced to 0
whenever ``a_i == 1``) is unique, so equality and zero tests on sums are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import mpmath

Rational = Union[int, Fraction]

GUARD_BITS = 24


class BaseMismatch(ValueError):
    pass


class NonPositive(ValueError):
    pass


@dataclass(frozen=True)
class RadicalMonomial:
    coef: Fraction
    exps: tuple[int, ...]
    base: tuple[int, ...]
    p: int

    def __post_init__(self):
        if len(self.exps) != len(self.base):
            raise ValueError("exponent vector and base differ in length")

    # arithmetic -------------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, RadicalMonomial):
            return mul(self, other)
        if isinstance(other, RadicalSum):
            return other * self
        if isinstance(other, (int, Fraction)):
            return normalize(RadicalMonomial(self.coef * other, self.exps, self.base, self.p))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RadicalMonomial):
            return mul(self, inverse(other))
        if isinstance(other, (int, Fraction)):
            return normalize(RadicalMonomial(self.coef / other, self.exps, self.base, self.p))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return inverse(self) ** (-k)
        return normalize(RadicalMonomial(self.coef ** k, tuple(e * k for e in self.exps), self.base, self.p))

    def __neg__(self):
        return RadicalMonomial(-self.coef, self.exps, self.base, self.p)

    def __add__(self, other):
        return RadicalSum.of(self) + other

    __radd__ = __add__

    def __sub__(self, other):
        return RadicalSum.of(self) - other

    def __rsub__(self, other):
        return -RadicalSum.of(self) + other

    # queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return self.coef == 0

    def is_rational(self) -> bool:
        return not any(self.exps)

    def pth_power(self) -> Fraction:
        """Exact value of ``self ** p``; always rational."""
        value = Fraction(self.coef) ** self.p
        for a, e in zip(self.base, self.exps):
            value *= Fraction(a) ** e
        return value

    def eval(self, precision: int = 53):
        return eval_radical(self, precision)

    def __float__(self):
        return float(eval_radical(self, 53))


def monomial(coef: Rational, exps: Iterable[int], base: Iterable[int], p: int) -> RadicalMonomial:
    """Build and normalize a monomial."""
    return normalize(RadicalMonomial(Fraction(coef), tuple(exps), tuple(base), p))


def one(base: Iterable[int], p: int) -> RadicalMonomial:
    base = tuple(base)
    return RadicalMonomial(Fraction(1), (0,) * len(base), base, p)


def normalize(x: RadicalMonomial) -> RadicalMonomial:
    if any(a <= 0 for a in x.base):
        raise ValueError("radicand base entries must be positive")
    coef = Fraction(x.coef)
    if coef == 0:
        return RadicalMonomial(Fraction(0), (0,) * len(x.base), x.base, x.p)
    exps = []
    for a, e in zip(x.base, x.exps):
        q, r = divmod(e, x.p)
        if a == 1:
            r = 0
        elif q:
            coef *= Fraction(a) ** q
        exps.append(r)
    return RadicalMonomial(coef, tuple(exps), x.base, x.p)


def _check_compatible(x, y):
    if x.base != y.base or x.p != y.p:
        raise BaseMismatch(f"base/degree mismatch: {x.base}/{x.p} vs {y.base}/{y.p}")


def mul(x: RadicalMonomial, y: RadicalMonomial) -> RadicalMonomial:
    _check_compatible(x, y)
    return normalize(
        RadicalMonomial(x.coef * y.coef, tuple(e + f for e, f in zip(x.exps, y.exps)), x.base, x.p)
    )


def inverse(x: RadicalMonomial) -> RadicalMonomial:
    if x.coef == 0:
        raise ZeroDivisionError("inverse of the zero monomial")
    return normalize(RadicalMonomial(1 / x.coef, tuple(-e for e in x.exps), x.base, x.p))


def cmp(x: RadicalMonomial, y: RadicalMonomial) -> int:
    """Exact three-way comparison of two positive monomials via their p-th powers."""
    _check_compatible(x, y)
    if x.coef <= 0 or y.coef <= 0:
        raise NonPositive("cmp requires positive monomials")
    u, v = x.pth_power(), y.pth_power()
    return (u > v) - (u < v)


@dataclass(frozen=True)
class RadicalSum:
    """Finite sum of monomials sharing one base; terms kept in normal form."""

    terms: tuple[RadicalMonomial, ...]
    base: tuple[int, ...]
    p: int

    @classmethod
    def build(cls, terms: Iterable[RadicalMonomial], base, p) -> "RadicalSum":
        base = tuple(base)
        acc: dict[tuple[int, ...], Fraction] = {}
        for t in terms:
            if t.base != base or t.p != p:
                raise BaseMismatch("term does not share the sum's base")
            t = normalize(t)
            if t.coef:
                acc[t.exps] = acc.get(t.exps, Fraction(0)) + t.coef
        out = tuple(
            RadicalMonomial(c, e, base, p) for e, c in sorted(acc.items()) if c != 0
        )
        return cls(out, base, p)

    @classmethod
    def of(cls, x: RadicalMonomial) -> "RadicalSum":
        return cls.build([x], x.base, x.p)

    @classmethod
    def zero(cls, base, p) -> "RadicalSum":
        return cls((), tuple(base), p)

    @classmethod
    def rational(cls, c: Rational, base, p) -> "RadicalSum":
        return cls.build([monomial(c, (0,) * len(tuple(base)), base, p)], base, p)

    def _coerce(self, other) -> "RadicalSum":
        if isinstance(other, RadicalSum):
            if other.base != self.base or other.p != self.p:
                raise BaseMismatch("sums over different bases")
            return other
        if isinstance(other, RadicalMonomial):
            return RadicalSum.build([other], self.base, self.p)
        if isinstance(other, (int, Fraction)):
            return RadicalSum.rational(other, self.base, self.p)
        raise TypeError(f"cannot combine RadicalSum with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        return RadicalSum.build(self.terms + other.terms, self.base, self.p)

    __radd__ = __add__

    def __neg__(self):
        return RadicalSum(tuple(-t for t in self.terms), self.base, self.p)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = self._coerce(other)
        return RadicalSum.build(
            [mul(s, t) for s in self.terms for t in other.terms], self.base, self.p
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RadicalSum.build([t / other for t in self.terms], self.base, self.p)
        if isinstance(other, RadicalMonomial):
            inv = inverse(other)
            return RadicalSum.build([mul(t, inv) for t in self.terms], self.base, self.p)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def as_monomial(self) -> RadicalMonomial:
        """The single term of a one-term sum (or the zero monomial)."""
        if not self.terms:
            return RadicalMonomial(Fraction(0), (0,) * len(self.base), self.base, self.p)
        if len(self.terms) > 1:
            raise ValueError("sum has more than one term")
        return self.terms[0]

    def eval(self, precision: int = 53):
        return eval_radical(self, precision)

    def __float__(self):
        return float(eval_radical(self, 53))


def _eval_monomial(x: RadicalMonomial):
    v = mpmath.mpf(x.coef.numerator) / x.coef.denominator
    for a, e in zip(x.base, x.exps):
        if e:
            v *= mpmath.root(a, x.p) ** e
    return v


def eval_radical(x: Union[RadicalMonomial, RadicalSum], precision: int = 53):
    """Evaluate to an ``mpmath.mpf`` with relative error below ``2**(1 - precision)``.

    Working precision grows until a sum with cancellation is resolved.
    """
    if precision < 24:
        raise ValueError("precision must be at least 24 bits")
    terms = x.terms if isinstance(x, RadicalSum) else (x,)
    terms = [t for t in terms if t.coef != 0]
    if not terms:
        return mpmath.mpf(0)
    guard = GUARD_BITS + len(terms).bit_length()
    while True:
        with mpmath.workprec(precision + guard):
            vals = [_eval_monomial(t) for t in terms]
            total = mpmath.fsum(vals)
            biggest = max(abs(v) for v in vals)
            # bits lost to cancellation must stay inside the guard band
            lost = 0 if total == 0 else max(0, int(mpmath.log(biggest / abs(total), 2)) + 1)
        if total != 0 and lost + 8 < guard:
            with mpmath.workprec(precision):
                return +total
        if guard > 64 * precision:
            # a nonzero normalized sum never vanishes; reaching here is a bug
            raise ArithmeticError("could not resolve cancellation in radical sum")
        guard *= 2
