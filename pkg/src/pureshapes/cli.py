"""Command-line interface: shape, census, verify, constants."""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import census, densities, fields, shapes
from .census import SCHEMA, TypeFilter
from .densities import Normalization
from .verification import SUITES, run_suite

FORMATS = ("json", "csv", "text")


@dataclass(frozen=True)
class RunConfig:
    command: str
    p: Optional[int] = None
    m: Optional[int] = None
    X: Optional[str] = None
    windows: tuple[str, ...] = ()
    type_filter: str = "both"
    suite: str = "all"
    fmt: str = "text"
    output: Optional[str] = None
    precision: int = 53
    Y: int = densities.DEFAULT_Y
    workers: Optional[int] = None
    limit: Optional[int] = None


def parse_number(text: str):
    """Integer when exact ("1e12" included), otherwise a Fraction."""
    try:
        return int(text)
    except ValueError:
        pass
    value = Fraction(float(text)) if any(c in text.lower() for c in "e") else Fraction(text)
    return int(value) if value.denominator == 1 else value


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _write(text: str, path: Optional[str]):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# shape


def cmd_shape(cfg: RunConfig) -> str:
    f = fields.pure_field(cfg.p, cfg.m)
    sv = shapes.shape_params(f)
    G = shapes.shape_gram(f).evaluate(cfg.precision)
    report = {
        "schema": SCHEMA,
        "p": f.p,
        "m": cfg.m,
        "tuple": list(f.a),
        "type": f.ramification.value,
        "discriminant": f.disc,
        "lambda_p": [str(x) for x in sv.lambdas_p],
        "shape_gram": [[float(G[i, j]) for j in range(G.cols)] for i in range(G.rows)],
        "metadata": {"precision_bits": cfg.precision},
    }
    if cfg.fmt == "json":
        return _dump(report)
    if cfg.fmt == "csv":
        lines = ["key,value"]
        for k in ("p", "m", "type", "discriminant"):
            lines.append(f"{k},{report[k]}")
        lines.append('tuple,"' + " ".join(map(str, f.a)) + '"')
        lines.append('lambda_p,"' + " ".join(report["lambda_p"]) + '"')
        return "\r\n".join(lines) + "\r\n"
    rows = "\n".join("  " + "  ".join(f"{x:14.8f}" for x in row) for row in report["shape_gram"])
    return (
        f"tuple         {tuple(f.a)}\n"
        f"type          {f.ramification.value}\n"
        f"discriminant  {f.disc}\n"
        f"lambda^p      [{', '.join(report['lambda_p'])}]\n"
        f"shape Gram\n{rows}\n"
    )


# ---------------------------------------------------------------------------
# census


def cmd_census(cfg: RunConfig) -> str:
    X = parse_number(cfg.X)
    windows = [shapes.ShapeWindow.parse(cfg.p, w) for w in cfg.windows] or [None]
    table = census.equidistribution_scan(
        cfg.p, X, windows, TypeFilter(cfg.type_filter), cfg.workers, cfg.limit, cfg.Y
    )
    if cfg.fmt == "json":
        return _dump(table.to_dict())
    if cfg.fmt == "csv":
        return census.reports_to_csv(table.reports)
    out = []
    for r in table.reports:
        out.append(
            f"window {r.window or 'all'}: wild {r.field_count_wild} fields / {r.tuple_count_wild} tuples, "
            f"tame {r.field_count_tame} fields / {r.tuple_count_tame} tuples"
        )
    for pr in table.pairs:
        out.append(
            f"windows {pr['first']}/{pr['second']}: mu ratio {pr['mu_ratio']}, "
            f"wild {pr['empirical_wild']}, tame {pr['empirical_tame']}"
        )
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# verify


def cmd_verify(cfg: RunConfig) -> tuple[str, bool]:
    checks = run_suite(cfg.suite)
    ok = all(c.ok for c in checks)
    if cfg.fmt == "json":
        body = {"schema": SCHEMA, "suite": cfg.suite, "passed": ok,
                "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks]}
        return _dump(body), ok
    text = "\n".join(c.line() for c in checks)
    return text + f"\n{sum(c.ok for c in checks)}/{len(checks)} checks passed\n", ok


# ---------------------------------------------------------------------------
# constants


def _radical_display(coef: Fraction, p: int, num: int, den: int) -> str:
    """coef * p^(-num/den), folding the integer part of the exponent into coef."""
    whole, rest = divmod(num, den)
    coef = coef / p**whole
    frac = Fraction(rest, den)
    if frac == 0:
        return str(coef)
    root = f"√{p}" if frac == Fraction(1, 2) else f"{p}^({frac})"
    sep = "" if root.startswith("√") else "·"
    return f"{coef.numerator}/({coef.denominator}{sep}{root})"


def constant_lines(p: int, Y: int) -> dict:
    ell = (p - 1) // 2
    consts = {n.value: densities.predicted_constants(p, Y, n) for n in Normalization}
    c6 = consts["section6"]
    h = c6.h_minus
    base = (2 * p - 1) * 2 ** (p - 2) * h
    # section6 display: type I carries p^-(ell + 1/(p-1)), type II p^-(ell - 1 + (p-2)/(p-1))
    type1 = _radical_display(Fraction(2 * p - 2, base), p, ell * (p - 1) + 1, p - 1)
    type2 = _radical_display(Fraction(1, base), p, (ell - 1) * (p - 1) + p - 2, p - 1)
    return {
        "schema": SCHEMA,
        "p": p,
        "h_minus": h,
        "euler_product": float(f"{c6.euler_product:.15g}"),
        "euler_truncation_Y": Y,
        "euler_tail_bound": c6.tail_bound,
        "section6": {
            "wild_display": f"{type1}·∏δ_q",
            "tame_display": f"{type2}·∏δ_q",
            "c_wild": float(f"{c6.c_wild:.15g}"),
            "c_tame": float(f"{c6.c_tame:.15g}"),
            "multiplies": "X^(1/(p-1)) log^(ell-1) X · ell!·mu",
        },
        "theorem_c": {
            "c_wild": float(f"{consts['theorem_c'].c_wild:.15g}"),
            "c_tame": float(f"{consts['theorem_c'].c_tame:.15g}"),
            "multiplies": "X^(1/(p-1)) log^(ell-1) X · mu",
        },
    }


def cmd_constants(cfg: RunConfig) -> str:
    d = constant_lines(cfg.p, cfg.Y)
    if cfg.fmt == "json":
        return _dump(d)
    if cfg.fmt == "csv":
        rows = ["normalization,type,display,value"]
        rows.append(f"section6,wild,{d['section6']['wild_display']},{d['section6']['c_wild']}")
        rows.append(f"section6,tame,{d['section6']['tame_display']},{d['section6']['c_tame']}")
        rows.append(f"theorem_c,wild,,{d['theorem_c']['c_wild']}")
        rows.append(f"theorem_c,tame,,{d['theorem_c']['c_tame']}")
        return "\r\n".join(rows) + "\r\n"
    return (
        f"p = {d['p']}, h^- = {d['h_minus']}\n"
        f"prod_(q <= {d['euler_truncation_Y']}) delta_q = {d['euler_product']:.10f} "
        f"(tail below {d['euler_tail_bound']:.1e})\n"
        f"section6   wild: {d['section6']['wild_display']} = {d['section6']['c_wild']:.10g}\n"
        f"section6   tame: {d['section6']['tame_display']} = {d['section6']['c_tame']:.10g}\n"
        f"theorem_c  wild: {d['theorem_c']['c_wild']:.10g}\n"
        f"theorem_c  tame: {d['theorem_c']['c_tame']:.10g}\n"
    )


# ---------------------------------------------------------------------------
# argument parsing


def _prime(text: str) -> int:
    p = int(text)
    if p < 3 or not fields.is_prime(p):
        raise argparse.ArgumentTypeError(f"{text} is not an odd prime")
    return p


def _whole(text: str) -> int:
    v = parse_number(text)
    if isinstance(v, Fraction):
        raise argparse.ArgumentTypeError(f"{text} is not an integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pureshapes", description="Shapes of pure prime-degree number fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=FORMATS, default="text", dest="fmt")
        sp.add_argument("--output", "-o")

    sp = sub.add_parser("shape", help="tuple, type, discriminant and shape of Q(m^(1/p))")
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--m", type=_whole, required=True)
    sp.add_argument("--precision", type=int, default=53)
    common(sp)

    sp = sub.add_parser("census", help="count fields by discriminant bound and shape window")
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--x", required=True, dest="X")
    sp.add_argument("--window", action="append", default=[], help="comma-separated lambda^p bounds")
    sp.add_argument("--type", choices=[t.value for t in TypeFilter], default="both", dest="type_filter")
    sp.add_argument("--workers", type=int)
    sp.add_argument("--limit", type=int)
    sp.add_argument("--y", type=_whole, default=densities.DEFAULT_Y, dest="Y")
    common(sp)

    sp = sub.add_parser("verify", help="run identity checks")
    sp.add_argument("suite", choices=[*SUITES, "all"], nargs="?", default="all")
    common(sp)

    sp = sub.add_parser("constants", help="predicted leading constants")
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--y", type=_whole, default=densities.DEFAULT_Y, dest="Y")
    common(sp)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    kw = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    if "window" in vars(ns):
        kw["windows"] = tuple(ns.window)
    return RunConfig(**kw)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = config_from_args(ns)
    try:
        if cfg.command == "verify":
            text, ok = cmd_verify(cfg)
            _write(text, cfg.output)
            return 0 if ok else 1
        handler = {"shape": cmd_shape, "census": cmd_census, "constants": cmd_constants}[cfg.command]
        _write(handler(cfg), cfg.output)
    except (fields.FieldError, shapes.InvalidWindow, census.InfeasibleBound, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
