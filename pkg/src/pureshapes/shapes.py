"""Gram matrices, shapes and shape parameters of pure prime-degree fields.

Shape parameters are kept exactly through their p-th powers, which are
rational; the canonical shape is the ascending vector of
``max(lambda, 1/lambda) ** p`` over the ``ell = (p - 1) / 2`` parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import mpmath
import numpy as np
from numpy.polynomial import Polynomial
from scipy import integrate

from .fields import PureField, WrongType
from .radical import RadicalMonomial, RadicalSum


class PrimeMismatch(ValueError):
    pass


class InvalidWindow(ValueError):
    pass


# ---------------------------------------------------------------------------
# Gram matrices


@dataclass(frozen=True)
class GramMatrix:
    n: int
    entries: tuple[tuple[RadicalSum, ...], ...]

    def __getitem__(self, ij) -> RadicalSum:
        i, j = ij
        return self.entries[i][j]

    def is_symmetric(self) -> bool:
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )

    def off_diagonal_zero(self) -> bool:
        return all(
            self.entries[i][j].is_zero()
            for i in range(self.n)
            for j in range(self.n)
            if i != j
        )

    def scaled(self, c: Union[int, Fraction, RadicalMonomial]) -> "GramMatrix":
        return GramMatrix(self.n, tuple(tuple(e * c for e in row) for row in self.entries))

    def evaluate(self, precision: int = 53) -> mpmath.matrix:
        with mpmath.workprec(precision):
            return mpmath.matrix([[e.eval(precision) for e in row] for row in self.entries])

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(e) for e in row] for row in self.entries])

    def det(self, precision: int = 53):
        with mpmath.workprec(precision):
            return mpmath.det(self.evaluate(precision))

    def is_positive_definite(self, precision: int = 53) -> bool:
        # smallest eigenvalue >= det / trace^(n-1) and det is bounded below (integral
        # lattice up to powers of p), so n log2(trace) extra bits keep the pivots honest
        trace = sum(abs(float(self.entries[i][i])) for i in range(self.n))
        precision = max(precision, 64 + self.n * (math.ceil(math.log2(trace + 2)) + 2 * self.n))
        with mpmath.workprec(precision):
            try:
                mpmath.cholesky(self.evaluate(precision))
            except ValueError:
                return False
        return True


def _zero(f: PureField) -> RadicalSum:
    return RadicalSum.zero(f.a, f.p)


def gram_wild(f: PureField) -> GramMatrix:
    """Gram matrix of {1, gamma_1, ..., gamma_{p-1}}: diag(p, p*gamma_j^2)."""
    p = f.p
    diag = [RadicalSum.rational(p, f.a, p)]
    diag += [RadicalSum.of(f.gamma(j) ** 2 * p) for j in range(1, p)]
    rows = tuple(
        tuple(diag[i] if i == j else _zero(f) for j in range(p)) for i in range(p)
    )
    return GramMatrix(p, rows)


def change_of_basis_matrix(f: PureField) -> list[list[Fraction]]:
    """Rows express {1, nu, gamma_2, ...} in the rational basis {1, gamma_1, ...}."""
    if not f.is_tame:
        raise WrongType("the altered basis exists only for tame fields")
    p = f.p
    C = [[Fraction(int(i == j)) for j in range(p)] for i in range(p)]
    C[1][0] = Fraction(f.m, p)
    C[1][1] = Fraction(1, p)
    for j in range(2, p):
        C[1][j] = Fraction(f.eps ** (j - 1) * f.b[j - 1], p)
    return C


def rational_det(M: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a small rational matrix by Gaussian elimination."""
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


def conjugate(C: Sequence[Sequence[Fraction]], G: GramMatrix) -> GramMatrix:
    """C * G * C^T with exact entries."""
    n = G.n
    zero = RadicalSum.zero(G.entries[0][0].base, G.entries[0][0].p)
    CG = [
        [sum((G.entries[k][j] * C[i][k] for k in range(n) if C[i][k]), zero) for j in range(n)]
        for i in range(n)
    ]
    out = tuple(
        tuple(sum((CG[i][k] * C[j][k] for k in range(n) if C[j][k]), zero) for j in range(n))
        for i in range(n)
    )
    return GramMatrix(n, out)


def nu_prime(f: PureField) -> RadicalSum:
    """<nu, nu> = (m^2 + gamma_1^2 + eps^2 gamma_1^4 + ... + eps^(2p-4) gamma_1^(2p-2)) / p."""
    p = f.p
    total = RadicalSum.rational(f.m**2, f.a, p)
    g1 = f.gamma(1)
    for k in range(1, p):
        total = total + g1 ** (2 * k) * f.eps ** (2 * (k - 1))
    return total / p


def gram_tame(f: PureField) -> GramMatrix:
    return conjugate(change_of_basis_matrix(f), gram_wild(f))


def gram(f: PureField) -> GramMatrix:
    """Gram matrix of the integral basis actually used for ``f``."""
    return gram_tame(f) if f.is_tame else gram_wild(f)


def perp_projection(G: GramMatrix) -> GramMatrix:
    """Gram of v - (<v, 1>/<1, 1>) 1 over basis vectors 2..n; index 0 must be j(1)."""
    g00 = G.entries[0][0].as_monomial()
    if not g00.is_rational():
        raise ValueError("first basis vector must have rational norm")
    c = g00.coef
    n = G.n
    rows = tuple(
        tuple(G.entries[i][j] - G.entries[i][0] * G.entries[0][j] / c for j in range(1, n))
        for i in range(1, n)
    )
    return GramMatrix(n - 1, rows)


def shape_gram(f: PureField) -> GramMatrix:
    """Gram of j(O_K^perp). Wild fields are reported scaled by 1/p, i.e. diag(gamma_j^2)."""
    G = perp_projection(gram(f))
    if not f.is_tame:
        G = G.scaled(Fraction(1, f.p))
    return G


def normalized_shape_gram(f: PureField) -> GramMatrix:
    """Shape Gram scaled by 1/(gamma_ell * gamma_{ell+1}) = 1/prod(a_i)."""
    return shape_gram(f).scaled(Fraction(1, math.prod(f.a)))


# ---------------------------------------------------------------------------
# Minkowski embedding (independent numeric route)


def _alpha_degree(t: RadicalMonomial) -> int:
    """s with t = rational * alpha^s, from exps[i] == s*i mod p."""
    p = t.p
    s = None
    for i, (a, e) in enumerate(zip(t.base, t.exps), 1):
        if a == 1:
            continue
        cand = (e * pow(i, -1, p)) % p
        if s is None:
            s = cand
        elif s != cand:
            raise ValueError("monomial does not lie in Q(alpha)")
    return s or 0


def minkowski_embedding(x: RadicalSum, precision: int = 53) -> list:
    """(sigma(x), tau_1(x), ..., tau_{p-1}(x)) with tau_k(alpha) = zeta^k alpha."""
    p = x.p
    with mpmath.workprec(precision):
        zeta = mpmath.expjpi(mpmath.mpf(2) / p)
        vals = [(t.eval(precision), _alpha_degree(t)) for t in x.terms]
        return [mpmath.fsum(v * zeta ** (k * s) for v, s in vals) for k in range(p)]


def minkowski_gram(basis: Sequence[RadicalSum], precision: int = 53) -> mpmath.matrix:
    with mpmath.workprec(precision):
        vecs = [minkowski_embedding(b, precision) for b in basis]
        n = len(vecs)
        M = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                M[i, j] = mpmath.re(mpmath.fsum(u * mpmath.conj(v) for u, v in zip(vecs[i], vecs[j])))
        return M


# ---------------------------------------------------------------------------
# Shape parameters


def shape_exponent(p: int, i: int, j: int) -> int:
    """2ij - p - 2p*floor(ij/p)."""
    return 2 * i * j - p - 2 * p * ((i * j) // p)


def lambda_pth_powers(p: int, a: Sequence[int]) -> list[Fraction]:
    """lambda_j^p for j = 1..ell from the closed exponent formula, in index order."""
    ell = (p - 1) // 2
    out = []
    for j in range(1, ell + 1):
        v = Fraction(1)
        for i in range(1, ell + 1):
            v *= Fraction(a[i - 1], a[p - i - 1]) ** shape_exponent(p, i, j)
        out.append(v)
    return out


def lambda_pth_powers_from_basis(f: PureField) -> list[Fraction]:
    """lambda_j^p computed as (gamma_j^2 / (gamma_ell gamma_{ell+1}))^p."""
    ell = f.ell
    denom = f.gamma(ell) * f.gamma(ell + 1)
    return [(f.gamma(j) ** 2 / denom).pth_power() for j in range(1, ell + 1)]


def fold(x: Fraction) -> Fraction:
    return x if x >= 1 else 1 / x


@dataclass(frozen=True)
class ShapeVector:
    p: int
    lambdas_p: tuple[Fraction, ...]

    def __post_init__(self):
        v = self.lambdas_p
        if len(v) != (self.p - 1) // 2:
            raise ValueError("shape vector must have ell entries")
        if any(x < 1 for x in v) or list(v) != sorted(v):
            raise ValueError("shape vector entries must be >= 1 and ascending")

    @classmethod
    def from_unfolded(cls, p: int, values: Iterable[Fraction]) -> "ShapeVector":
        return cls(p, tuple(sorted(fold(Fraction(x)) for x in values)))

    def as_floats(self) -> list[float]:
        return [float(x) for x in self.lambdas_p]


def shape_params(f: PureField) -> ShapeVector:
    return ShapeVector.from_unfolded(f.p, lambda_pth_powers(f.p, f.a))


def shapes_equal(f: PureField, g: PureField) -> bool:
    if f.p != g.p:
        raise PrimeMismatch(f"p = {f.p} vs p = {g.p}")
    if f.ramification is not g.ramification:
        return False
    return shape_params(f) == shape_params(g)


# ---------------------------------------------------------------------------
# Windows and their measure


Bound = Union[Fraction, float]


def _as_bound(x) -> Bound:
    if isinstance(x, float) and math.isinf(x):
        return math.inf
    if isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "oo"):
        return math.inf
    return Fraction(x)


@dataclass(frozen=True)
class ShapeWindow:
    """Bounds R_1 < ... < R_{ell+1} on the folded lambda^p values; R_{ell+1} may be inf."""

    p: int
    R: tuple[Bound, ...]

    def __post_init__(self):
        R = tuple(_as_bound(x) for x in self.R)
        object.__setattr__(self, "R", R)
        if len(R) != (self.p - 1) // 2 + 1:
            raise InvalidWindow(f"p = {self.p} needs {(self.p - 1) // 2 + 1} bounds, got {len(R)}")
        if any(math.isinf(x) for x in R[:-1]):
            raise InvalidWindow("only the last bound may be infinite")
        if R[0] < 1:
            raise InvalidWindow("R_1 must be >= 1")
        if any(x >= y for x, y in zip(R, R[1:])):
            raise InvalidWindow("bounds must be strictly increasing")

    @classmethod
    def parse(cls, p: int, text: str) -> "ShapeWindow":
        return cls(p, tuple(_as_bound(s) for s in text.split(",")))

    @property
    def bounded(self) -> bool:
        return not math.isinf(self.R[-1])

    def __str__(self):
        return ",".join("inf" if math.isinf(x) else str(x) for x in self.R)


def _log(x: Bound) -> float:
    if isinstance(x, Fraction):
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(x)


def _measure_polynomial(r: Sequence[float]) -> float:
    """Volume of {t_1 < ... < t_ell <= r_{ell+1}, t_i > r_i} by exact polynomial integration."""
    ell = len(r) - 1
    shift = r[0]
    r = [x - shift for x in r]
    f = Polynomial([1.0])
    for k in range(1, ell):
        F = f.integ()
        f = F - F(r[k - 1])
    F = f.integ()
    return float(F(r[ell]) - F(r[ell - 1]))


def measure_window(w: ShapeWindow) -> float:
    """mu of the window under prod dx_i / x_i."""
    if not w.bounded:
        return math.inf
    r = [_log(x) for x in w.R]
    ell = len(r) - 1
    if ell == 1:
        return r[1] - r[0]
    if ell == 2:
        return 0.5 * ((r[2] - r[0]) ** 2 - (r[1] - r[0]) ** 2)
    if ell == 3:
        return (
            ((r[3] - r[0]) ** 3 - (r[2] - r[0]) ** 3) / 6
            - 0.5 * (r[1] - r[0]) ** 2 * (r[3] - r[2])
        )
    return _measure_polynomial(r)


def measure_window_quad(w: ShapeWindow, epsrel: float = 1e-12) -> float:
    """Recursive adaptive quadrature of the iterated integral in x-coordinates."""
    if not w.bounded:
        return math.inf
    R = [float(x) for x in w.R]
    ell = len(R) - 1

    def inner(k: int, upper: float) -> float:
        # integral over x_k in (R_k, upper) of inner(k-1, x_k) dx_k / x_k (1-based k)
        if k == 0:
            return 1.0
        val, _ = integrate.quad(
            lambda x: inner(k - 1, x) / x, R[k - 1], upper, epsrel=epsrel, epsabs=0, limit=200
        )
        return val

    return inner(ell, R[ell])


def window_contains(w: ShapeWindow, s: ShapeVector) -> bool:
    if w.p != s.p:
        raise PrimeMismatch(f"window p = {w.p}, shape p = {s.p}")
    x, R = s.lambdas_p, w.R
    ell = len(x)
    if not (R[0] <= x[0] and x[-1] <= R[ell]):
        return False
    if any(a >= b for a, b in zip(x, x[1:])):
        return False
    return all(R[i] < x[i] for i in range(1, ell))
