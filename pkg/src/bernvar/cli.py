"""Command-line driver for the experiment suites.

Example::

    bernvar --suite detracting --functions step_half --n 1:64
    bernvar --suite rate --functions sin2pi,exp --n 4:256:2 --format json
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import analysis
from .basis import central_moment, central_moment_direct, sum_moment, sum_moment_direct
from .corpus import corpus_default, lookup
from .errors import BernvarError
from .operators import bernstein_apply
from .quadrature import DEFAULT_ORDER, DEFAULT_PANELS, DEFAULT_TOL, gauss_legendre

SUITES = ("moments", "detracting", "rate", "remainder", "apply")
DEFAULT_FUNCTIONS = {
    "moments": [],
    "detracting": "all",
    "rate": ["sin2pi", "exp"],
    "remainder": ["sin2pi", "exp"],
    "apply": "all",
}
DEFAULT_N = {
    "moments": list(range(1, 21)),
    "detracting": list(range(1, 129)),
    "rate": [4, 8, 16, 32, 64, 128, 256],
    "remainder": [4, 16, 64],
    "apply": [4, 8],
}
MOMENT_POINTS = (Fraction(0), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1))
RATE_TOL = 1e-8
DECOMPOSITION_TOL = 1e-9
QUADRATIC_TOL = 1e-10
SLOPE_LIMIT = -0.5
SLOPE_MIN_N = 16


@dataclass
class ExperimentConfig:
    suite: str
    n_list: list
    functions: object = "all"
    quad_order: int = DEFAULT_ORDER
    panels: int = DEFAULT_PANELS
    tol: float = DEFAULT_TOL
    output_format: str = "csv"

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        if not self.n_list or any(int(n) != n or n < 1 for n in self.n_list):
            raise ValueError("n_list must be a non-empty list of integers >= 1")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.output_format!r}")


@dataclass
class Report:
    suite: str
    columns: list
    rows: list
    failures: int
    meta: dict = field(default_factory=dict)


def parse_n(text):
    """``"1,2,5"``, ``"1:20"`` (inclusive range) or ``"4:256:2"`` (geometric)."""
    if ":" not in text:
        return sorted({int(v) for v in text.split(",") if v})
    parts = [int(v) for v in text.split(":")]
    if len(parts) == 2:
        lo, hi = parts
        return list(range(lo, hi + 1))
    lo, hi, ratio = parts
    if ratio < 2 or lo < 1:
        raise ValueError("geometric n ranges need min >= 1 and ratio >= 2")
    out = []
    while lo <= hi:
        out.append(lo)
        lo *= ratio
    return out


def _error_row(fid, n, exc):
    return {"function": fid, "n": n, "error": f"{type(exc).__name__}: {exc}", "pass": False}


def _moments_rows(cfg):
    rows, failures = [], 0
    for n in sorted(cfg.n_list):
        for kind, orders, closed, direct in (
            ("raw", range(0, 5), sum_moment, sum_moment_direct),
            ("central", range(1, 5), central_moment, central_moment_direct),
        ):
            for r in orders:
                gap = max(abs(closed(r, n, x) - direct(r, n, x)) for x in MOMENT_POINTS)
                ok = gap == 0
                failures += not ok
                rows.append({"n": n, "kind": kind, "r": r, "points": len(MOMENT_POINTS),
                             "max_abs_gap": float(gap), "pass": ok})
    return rows, failures


def _detracting_rows(cfg, funcs):
    rows, failures = [], 0
    rule = gauss_legendre(cfg.quad_order)
    for f in funcs:
        for n in sorted(cfg.n_list):
            try:
                rec = analysis.verify_detracting(f, n, rule, cfg.panels, cfg.tol)
            except BernvarError as exc:
                failures += 1
                rows.append(_error_row(f.id, n, exc))
                continue
            failures += not rec.passed
            rows.append({"function": f.id, "n": n, "v_input": rec.v_input, "v_output": rec.v_output,
                         "margin": rec.margin, "bv_input": rec.bv_input, "bv_output": rec.bv_output,
                         "bv_margin": rec.bv_margin, "eps": rec.eps, "pass": rec.passed})
    return rows, failures


def _rate_rows(cfg, funcs):
    rows, failures, slopes = [], 0, {}
    rule = gauss_legendre(cfg.quad_order)
    for g in funcs:
        if not g.is_c3:
            continue
        recs = []
        for n in sorted(cfg.n_list):
            try:
                recs.append(analysis.verify_rate(g, n, rule, cfg.panels, cfg.tol))
            except BernvarError as exc:
                failures += 1
                rows.append(_error_row(g.id, n, exc))
        tail = [r for r in recs if r.n >= SLOPE_MIN_N]
        slope = math.nan
        if len(tail) >= 2 and all(r.lhs > 1e-12 for r in tail):
            slope = analysis.decay_slope([r.n for r in tail], [r.lhs for r in tail])
        slopes[g.id] = slope
        slope_ok = math.isnan(slope) or slope <= SLOPE_LIMIT
        for r in recs:
            ok = r.passed(RATE_TOL) and slope_ok
            failures += not ok
            rows.append({"function": g.id, "n": r.n, "lhs": r.lhs, "term1": r.term1, "term2": r.term2,
                         "term3": r.term3, "rhs": r.rhs, "ratio": r.ratio, "stein_ratio": r.stein,
                         "theorem_rhs": r.theorem_rhs, "loglog_slope": slope, "pass": ok})
    return rows, failures, {"loglog_slope": slopes}


def _remainder_rows(cfg, funcs):
    rows, failures = [], 0
    for g in funcs:
        if not g.is_c3:
            continue
        quadratic = g.known_l1_norms is not None and g.known_l1_norms[2] == 0
        for n in sorted(cfg.n_list):
            try:
                rec = analysis.verify_remainder(g, n, with_literal=True)
            except BernvarError as exc:
                failures += 1
                rows.append(_error_row(g.id, n, exc))
                continue
            ok = rec.decomposition_gap <= DECOMPOSITION_TOL
            if quadratic:
                ok = ok and rec.max_abs_remainder <= QUADRATIC_TOL
            failures += not ok
            nm = rec.norms
            rows.append({"function": g.id, "n": n, "max_abs_remainder": rec.max_abs_remainder,
                         "decomposition_gap": rec.decomposition_gap, "literal_split_gap": rec.literal_gap,
                         "norm_R": nm["R"], "norm_B1": nm["B1"], "claimed_B1": 0.0,
                         "norm_B2": nm["B2"], "bound_B2": rec.bound_b2,
                         "norm_B3": nm["B3"], "bound_B3": rec.bound_b3,
                         "norm_B4": nm["B4"], "claimed_B4": 0.0,
                         "norm_quadrature_gap": rec.norm_gap, "pass": ok})
    return rows, failures


def _apply_rows(cfg, funcs):
    rows = []
    rule = gauss_legendre(cfg.quad_order)
    for f in funcs:
        for n in sorted(cfg.n_list):
            bern = bernstein_apply(f.f, n)
            durr = analysis.coefficients_for(f, n, rule, cfg.panels, cfg.tol)
            for k in range(n + 1):
                rows.append({"function": f.id, "n": n, "k": k, "bernstein_coeff": float(bern.coeffs[k]),
                             "durrmeyer_coeff": float(durr.F[k])})
    return rows, 0


def _row_key(row):
    return tuple(row.get(c, "") for c in ("function", "n", "kind", "r", "k"))


def run_suite(cfg):
    """Run one suite over the (function x n) grid and collect a :class:`Report`."""
    meta = {}
    if cfg.suite == "moments":
        rows, failures = _moments_rows(cfg)
    else:
        funcs = sorted(lookup(cfg.functions), key=lambda f: f.id)
        if cfg.suite == "detracting":
            rows, failures = _detracting_rows(cfg, funcs)
        elif cfg.suite == "rate":
            rows, failures, meta = _rate_rows(cfg, funcs)
        elif cfg.suite == "remainder":
            rows, failures = _remainder_rows(cfg, funcs)
        else:
            rows, failures = _apply_rows(cfg, funcs)
    rows.sort(key=_row_key)
    columns = []
    for row in rows:
        columns.extend(c for c in row if c not in columns)
    if "error" in columns:
        columns.remove("error")
        columns.insert(columns.index("pass"), "error")
    return Report(cfg.suite, columns, rows, failures, meta)


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _json_value(v):
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    return v


def render(report, cfg):
    """Serialise a report as CSV (default) or JSON; output is deterministic."""
    if cfg.output_format == "json":
        header = {"suite": report.suite, "config": asdict(cfg), "failures": report.failures,
                  "columns": report.columns,
                  "meta": {k: {kk: _json_value(vv) for kk, vv in v.items()} for k, v in report.meta.items()}}
        records = [{c: _json_value(row.get(c)) for c in report.columns} for row in report.rows]
        return json.dumps({**header, "records": records}, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(report.columns)
    for row in report.rows:
        writer.writerow([_fmt(row.get(c)) for c in report.columns])
    return buf.getvalue()


def build_parser():
    p = argparse.ArgumentParser(prog="bernvar", description=__doc__.splitlines()[0])
    p.add_argument("--suite", choices=SUITES)
    p.add_argument("--functions", default=None, help="comma list of corpus ids, or 'all'")
    p.add_argument("--n", default=None, help="comma list, 'min:max' or 'min:max:ratio'")
    p.add_argument("--quad-order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--panels", type=int, default=DEFAULT_PANELS)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--format", dest="output_format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.add_argument("--list-functions", action="store_true", help="print the corpus and exit")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list_functions:
        for f in corpus_default():
            print(f"{f.id:<10} {f.cls:<3} {f.description}")
        return 0
    if args.suite is None:
        parser.error("--suite is required")
    try:
        funcs = args.functions or DEFAULT_FUNCTIONS[args.suite]
        if isinstance(funcs, str) and funcs != "all":
            funcs = [s.strip() for s in funcs.split(",") if s.strip()]
        cfg = ExperimentConfig(
            suite=args.suite,
            n_list=parse_n(args.n) if args.n else DEFAULT_N[args.suite],
            functions=funcs,
            quad_order=args.quad_order,
            panels=args.panels,
            tol=args.tol,
            output_format=args.output_format,
        )
        report = run_suite(cfg)
    except (ValueError, KeyError) as exc:
        parser.error(str(exc))
    except BernvarError as exc:
        print(f"bernvar: {exc}", file=sys.stderr)
        return 2
    text = render(report, cfg)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 1 if report.failures else 0


if __name__ == "__main__":
    sys.exit(main())
