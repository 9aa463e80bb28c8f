"""Census of strongly carefree tuples by discriminant bound and shape window.

Tuples are enumerated lexicographically. A field is counted once, through the
tuple that equals its canonical (lexicographically least) orbit member, so no
global seen-set is needed and the reduction over workers is a plain sum.
"""

from __future__ import annotations

import csv
import enum
import io
import itertools
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import Iterator, Optional, Sequence

import numpy as np

from .densities import DEFAULT_Y, Normalization, predicted_constants
from .determinants import jacobian_det
from .fields import Ramification, SCTuple, canonical_tuple, check_odd_prime, ramification_of
from .shapes import ShapeVector, ShapeWindow, lambda_pth_powers, measure_window, window_contains

SCHEMA = "pure-shapes/1"
WORKERS_ENV = "PURESHAPES_WORKERS"
DEFAULT_LIMITS = {3: 10**7, 5: 10**4, 7: 2 * 10**3}
FALLBACK_LIMIT = 300


class BoundTooSmall(ValueError):
    pass


class InfeasibleBound(ValueError):
    pass


class TypeFilter(enum.Enum):
    WILD = "wild"
    TAME = "tame"
    BOTH = "both"

    def admits(self, r: Ramification) -> bool:
        return self is TypeFilter.BOTH or self.value == r.value


# ---------------------------------------------------------------------------
# enumeration


def squarefree_table(N: int) -> np.ndarray:
    """Boolean array sf with sf[n] true iff n is squarefree (sf[0] false)."""
    sf = np.ones(N + 1, dtype=bool)
    sf[0] = False
    for d in range(2, math.isqrt(N) + 1):
        sf[d * d :: d * d] = False
    return sf


def _extend(prefix: list[int], used: int, room: int, slots: int, sf) -> Iterator[tuple[int, ...]]:
    if slots == 0:
        yield tuple(prefix)
        return
    for x in range(1, room + 1):
        if sf[x] and gcd(x, used) == 1:
            prefix.append(x)
            yield from _extend(prefix, used * x, room // x, slots - 1, sf)
            prefix.pop()


def _tuples_with_first(p: int, N: int, first: int, sf) -> Iterator[tuple[int, ...]]:
    if not sf[first]:
        return
    for t in _extend([first], first, N // first, p - 2, sf):
        if first > 1 or any(x > 1 for x in t):
            yield t


def enumerate_tuples(p: int, N: int) -> Iterator[SCTuple]:
    """Every strongly carefree tuple with prod(a) <= N, lexicographically, without (1,...,1)."""
    check_odd_prime(p)
    if N < 1:
        raise ValueError("N must be >= 1")
    sf = squarefree_table(N)
    for first in range(1, N + 1):
        for t in _tuples_with_first(p, N, first, sf):
            yield SCTuple(p, t)


def iroot(n: int, k: int) -> int:
    """Largest r >= 0 with r**k <= n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n < 2:
        return n
    r = int(round(n ** (1.0 / k)))
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def _floor_bound(X) -> int:
    if isinstance(X, str):
        X = Fraction(X) if "e" not in X.lower() else Fraction(float(X))
    return math.floor(Fraction(X))


def _p_exponent(p: int, t: Ramification) -> int:
    return p - 2 if t is Ramification.TAME else p


def disc_bound_to_radicand_bound(p: int, X: float, type: Ramification) -> float:
    """Largest real N with p^e N^(p-1) <= X (e = p wild, p - 2 tame)."""
    check_odd_prime(p)
    if X < p ** (p - 2):
        raise BoundTooSmall(f"X = {X} is below p^(p-2) = {p ** (p - 2)}")
    return (X / p ** _p_exponent(p, type)) ** (1.0 / (p - 1))


def integer_radicand_bound(p: int, X, type: Ramification) -> int:
    """Largest integer N with p^e N^(p-1) <= floor(X); 0 if none."""
    return iroot(_floor_bound(X) // p ** _p_exponent(p, type), p - 1)


# ---------------------------------------------------------------------------
# region and reports


@dataclass(frozen=True)
class RegionSpec:
    p: int
    N: int
    window: Optional[ShapeWindow] = None
    type_filter: TypeFilter = TypeFilter.BOTH

    def __post_init__(self):
        check_odd_prime(self.p)
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if self.window is not None and self.window.p != self.p:
            raise ValueError("window prime differs from region prime")


@dataclass
class Counts:
    tuple_wild: int = 0
    tuple_tame: int = 0
    field_wild: int = 0
    field_tame: int = 0

    def __iadd__(self, other: "Counts"):
        self.tuple_wild += other.tuple_wild
        self.tuple_tame += other.tuple_tame
        self.field_wild += other.field_wild
        self.field_tame += other.field_tame
        return self

    def add(self, tame: bool, tuples: int, fields: int):
        if tame:
            self.tuple_tame += tuples
            self.field_tame += fields
        else:
            self.tuple_wild += tuples
            self.field_wild += fields


def _round(x: Optional[float]) -> Optional[float]:
    if x is None or (isinstance(x, float) and (math.isnan(x) or math.isinf(x))):
        return None
    return float(f"{x:.12g}")


@dataclass
class CensusReport:
    p: int
    X: str
    window: Optional[ShapeWindow]
    type_filter: TypeFilter
    N_wild: int
    N_tame: int
    tuple_count_wild: int
    tuple_count_tame: int
    field_count_wild: int
    field_count_tame: int
    mu: Optional[float]
    predicted: dict = field(default_factory=dict)
    ratios: dict = field(default_factory=dict)
    euler_Y: int = DEFAULT_Y

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "p": self.p,
            "X": self.X,
            "window": None if self.window is None else str(self.window),
            "type_filter": self.type_filter.value,
            "N_wild": self.N_wild,
            "N_tame": self.N_tame,
            "tuple_count_wild": self.tuple_count_wild,
            "tuple_count_tame": self.tuple_count_tame,
            "field_count_wild": self.field_count_wild,
            "field_count_tame": self.field_count_tame,
            "mu": _round(self.mu),
            "predicted": self.predicted,
            "ratios": self.ratios,
            "metadata": {"float_digits": 12, "euler_truncation_Y": self.euler_Y},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


CSV_COLUMNS = [
    "p", "X", "window", "type_filter", "N_wild", "N_tame",
    "tuple_count_wild", "tuple_count_tame", "field_count_wild", "field_count_tame", "mu",
    "predicted_theorem_c_wild", "predicted_theorem_c_tame",
    "predicted_section6_wild", "predicted_section6_tame",
]


def reports_to_csv(reports: Sequence[CensusReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        d = r.to_dict()
        pred = d["predicted"]
        w.writerow(
            [d[c] for c in CSV_COLUMNS[:11]]
            + [pred.get(n, {}).get(t) for n in ("theorem_c", "section6") for t in ("wild", "tame")]
        )
    return buf.getvalue()


# ---------------------------------------------------------------------------
# counting kernels


def _window_flags(p: int, a: tuple[int, ...], windows) -> list[bool]:
    shape = ShapeVector.from_unfolded(p, lambda_pth_powers(p, a))
    return [w is None or window_contains(w, shape) for w in windows]


def _generic_chunk(args) -> list[Counts]:
    p, N_wild, N_tame, windows, type_filter, firsts = args
    N = max(N_wild, N_tame)
    sf = squarefree_table(max(N, 1))
    p2 = p * p
    out = [Counts() for _ in windows]
    for first in firsts:
        for a in _tuples_with_first(p, N, first, sf):
            P = prod(a)
            m_mod = 1
            for i, x in enumerate(a, 1):
                m_mod = m_mod * pow(x, i, p2) % p2
            ram = ramification_of(p, m_mod)
            if not type_filter.admits(ram):
                continue
            tame = ram is Ramification.TAME
            if P > (N_tame if tame else N_wild):
                continue
            is_canon = canonical_tuple(p, a) == a
            for c, hit in zip(out, _window_flags(p, a, windows)):
                if hit:
                    c.add(tame, 1, int(is_canon))
    return out


def _bound_parts(R) -> tuple[int, int]:
    return R.numerator, R.denominator


def _p3_fast(N_wild: int, N_tame: int, windows, type_filter: TypeFilter) -> list[Counts]:
    """p = 3: fields are coprime squarefree pairs lo < hi with shape lambda^3 = hi/lo."""
    N = max(N_wild, N_tame)
    out = [Counts() for _ in windows]
    if N < 2:
        return out
    sf = squarefree_table(N)
    for lo in range(1, math.isqrt(N) + 1):
        if not sf[lo]:
            continue
        hi = np.arange(lo + 1, N // lo + 1, dtype=np.int64)
        if hi.size == 0:
            continue
        keep = sf[hi] & (np.gcd(hi, lo) == 1)
        hi = hi[keep]
        m9 = (lo % 9) * (hi % 9) % 9 * (hi % 9) % 9
        tame = (m9 == 1) | (m9 == 8)
        P = lo * hi
        tame_ok = tame & (P <= N_tame)
        wild_ok = ~tame & (P <= N_wild)
        for c, w in zip(out, windows):
            sel = np.ones(hi.size, dtype=bool)
            if w is not None:
                n1, d1 = _bound_parts(w.R[0])
                sel &= hi * d1 >= n1 * lo
                if w.bounded:
                    n2, d2 = _bound_parts(w.R[1])
                    sel &= hi * d2 <= n2 * lo
            if type_filter.admits(Ramification.WILD):
                k = int(np.count_nonzero(sel & wild_ok))
                c.add(False, 2 * k, k)
            if type_filter.admits(Ramification.TAME):
                k = int(np.count_nonzero(sel & tame_ok))
                c.add(True, 2 * k, k)
    return out


def _fast_path_ok(p: int, windows) -> bool:
    if p != 3:
        return False
    for w in windows:
        if w is None:
            continue
        for R in w.R:
            if isinstance(R, Fraction) and max(abs(R.numerator), R.denominator) >= 2**20:
                return False
    return True


def resolve_workers(workers: Optional[int]) -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        workers = int(env)
    return max(1, workers or 1)


def _count_counts(p, N_wild, N_tame, windows, type_filter, workers, fast=True) -> list[Counts]:
    if fast and _fast_path_ok(p, windows):
        return _p3_fast(N_wild, N_tame, windows, type_filter)
    N = max(N_wild, N_tame)
    totals = [Counts() for _ in windows]
    if N < 2:
        return totals
    firsts = list(range(1, N + 1))
    n = resolve_workers(workers)
    chunks = [(p, N_wild, N_tame, windows, type_filter, firsts[k::n]) for k in range(n)]
    if n == 1:
        results = [_generic_chunk(chunks[0])]
    else:
        with ProcessPoolExecutor(max_workers=n) as ex:
            results = list(ex.map(_generic_chunk, chunks))
    for res in results:
        for t, c in zip(totals, res):
            t += c
    return totals


def count_region(spec: RegionSpec, workers: Optional[int] = None) -> Counts:
    """Counts for prod(a) <= N directly, no discriminant condition."""
    return _count_counts(spec.p, spec.N, spec.N, [spec.window], spec.type_filter, workers)[0]


def _limit(p: int) -> int:
    return DEFAULT_LIMITS.get(p, FALLBACK_LIMIT)


@lru_cache(maxsize=None)
def _constants(p: int, Y: int, norm: Normalization):
    return predicted_constants(p, Y, norm)


def _attach_predictions(rep: CensusReport, X_float: float, Y: int):
    mu = rep.mu
    if mu is None or math.isinf(mu) or X_float <= 1:
        return
    counts = {"wild": rep.field_count_wild, "tame": rep.field_count_tame}
    tuples = {"wild": rep.tuple_count_wild, "tame": rep.tuple_count_tame}
    for norm in Normalization:
        const = _constants(rep.p, Y, norm)
        pred = {
            "wild": const.predict(X_float, mu, tame=False),
            "tame": const.predict(X_float, mu, tame=True),
        }
        rep.predicted[norm.value] = {
            "c_wild": _round(const.c_wild),
            "c_tame": _round(const.c_tame),
            "wild": _round(pred["wild"]),
            "tame": _round(pred["tame"]),
        }
        rep.ratios[norm.value] = {
            f"{kind}_{t}": _round(src[t] / pred[t]) if pred[t] else None
            for kind, src in (("fields", counts), ("tuples", tuples))
            for t in ("wild", "tame")
        }


def _reports(p, X, windows, type_filter, workers, limit, Y, fast=True) -> list[CensusReport]:
    check_odd_prime(p)
    N_wild = integer_radicand_bound(p, X, Ramification.WILD)
    N_tame = integer_radicand_bound(p, X, Ramification.TAME)
    cap = limit if limit is not None else _limit(p)
    if max(N_wild, N_tame) > cap:
        raise InfeasibleBound(f"radicand bound {max(N_wild, N_tame)} exceeds the limit {cap} for p = {p}")
    counts = _count_counts(p, N_wild, N_tame, list(windows), type_filter, workers, fast)
    X_text = str(X) if not isinstance(X, float) else repr(X)
    X_float = float(X)
    out = []
    for w, c in zip(windows, counts):
        rep = CensusReport(
            p, X_text, w, type_filter, N_wild, N_tame,
            c.tuple_wild, c.tuple_tame, c.field_wild, c.field_tame,
            None if w is None else measure_window(w), euler_Y=Y,
        )
        _attach_predictions(rep, X_float, Y)
        out.append(rep)
    return out


def count(
    p: int,
    X,
    window: Optional[ShapeWindow] = None,
    type_filter: TypeFilter = TypeFilter.BOTH,
    workers: Optional[int] = None,
    limit: Optional[int] = None,
    Y: int = DEFAULT_Y,
) -> CensusReport:
    """Tuples and fields with |disc| <= X and canonical shape in ``window``."""
    return _reports(p, X, [window], type_filter, workers, limit, Y)[0]


@dataclass
class ScanTable:
    reports: list[CensusReport]
    pairs: list[dict]

    def to_dict(self) -> dict:
        return {"schema": SCHEMA, "reports": [r.to_dict() for r in self.reports], "pairs": self.pairs}


def _safe_ratio(a: int, b: int) -> Optional[float]:
    return a / b if b else None


def equidistribution_scan(
    p: int,
    X,
    windows: Sequence[ShapeWindow],
    type_filter: TypeFilter = TypeFilter.BOTH,
    workers: Optional[int] = None,
    limit: Optional[int] = None,
    Y: int = DEFAULT_Y,
) -> ScanTable:
    """One report per window plus empirical(W1)/empirical(W2) against mu(W1)/mu(W2)."""
    reports = _reports(p, X, list(windows), type_filter, workers, limit, Y)
    pairs = []
    for (i, r1), (j, r2) in itertools.combinations(enumerate(reports), 2):
        if r1.mu is None or r2.mu is None or math.isinf(r1.mu) or math.isinf(r2.mu):
            continue
        expected = r1.mu / r2.mu
        entry = {"first": i, "second": j, "mu_ratio": _round(expected)}
        for t in ("wild", "tame"):
            emp = _safe_ratio(getattr(r1, f"field_count_{t}"), getattr(r2, f"field_count_{t}"))
            entry[f"empirical_{t}"] = _round(emp)
            entry[f"relative_error_{t}"] = None if emp is None else _round(emp / expected - 1)
        pairs.append(entry)
    return ScanTable(reports, pairs)


# ---------------------------------------------------------------------------
# region volume versus lattice count (no carefree condition)


def region_volume_prediction(p: int, N: float, w: ShapeWindow) -> float:
    """(N - 1) log^(ell-1)(N) mu(w) / |jacobian_det(p)|.

    The labeled region's volume carries mu itself; the homogeneous form
    H = ell! * mu overshoots by ell! (visible from p = 5 onwards).
    """
    check_odd_prime(p)
    if N <= 1:
        return 0.0
    ell = (p - 1) // 2
    return (N - 1) * math.log(N) ** (ell - 1) * measure_window(w) / abs(jacobian_det(p))


def _labeled_inside(w: ShapeWindow, lam: Sequence[Fraction]) -> bool:
    """R_1 <= l_1 < ... < l_ell <= R_{ell+1}, R_i < l_i for i >= 2, on labeled values."""
    R = w.R
    ell = len(lam)
    if not (R[0] <= lam[0] and lam[-1] <= R[ell]):
        return False
    if any(x >= y for x, y in zip(lam, lam[1:])):
        return False
    return all(R[i] < lam[i] for i in range(1, ell))


def region_lattice_count(p: int, N: int, w: ShapeWindow) -> int:
    """Integer points a_i >= 1 with prod(a) < N and labeled lambda^p in the window."""
    check_odd_prime(p)
    if N <= 1:
        return 0
    if p == 3:
        # lambda_1^3 = a_2 / a_1
        a1 = np.arange(1, N, dtype=np.int64)
        top = (N - 1) // a1
        n1, d1 = w.R[0].numerator, w.R[0].denominator
        lo = np.maximum(-((-n1 * a1) // d1), 1)
        if w.bounded:
            n2, d2 = w.R[1].numerator, w.R[1].denominator
            top = np.minimum(top, (n2 * a1) // d2)
        return int(np.clip(top - lo + 1, 0, None).sum())
    total = 0

    def rec(prefix, room):
        nonlocal total
        if len(prefix) == p - 1:
            if _labeled_inside(w, lambda_pth_powers(p, prefix)):
                total += 1
            return
        for x in range(1, room + 1):
            rec(prefix + [x], room // x)

    rec([], N - 1)
    return total
