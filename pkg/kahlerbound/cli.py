"""
kahlerbound command-line front end.

Usage:
    kahlerbound constants --m 2 --rho 1 --p 3
    kahlerbound diameter --m 2 --rho 3 --method all
    kahlerbound verify --suite all --seed 7
    kahlerbound table --m-range 2:50 --rho-mode ric2m1 --out table.csv

Reports go to stdout, logs to stderr. Exit codes: 0 success, 1 asserted
verification failure, 2 domain error, 3 solver error, 4 I/O error.
"""

import argparse
import csv
import io
import json
import math
import sys
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from . import __version__
from . import constants, diameter, rayleigh
from .errors import CatalogError, DomainError, SolverError
from .log import logger, set_level
from .suites import SUITES, SuiteContext, overall_status
from .types import (FAIL, INFO, BoundMethod, ConstantFamily, DiameterBound, GeometryParams,
                    ManifoldSpec, Report)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_DOMAIN = 2
EXIT_SOLVER = 3
EXIT_IO = 4

SIGNIFICANT_DIGITS = 12
METHODS = [mth.value for mth in BoundMethod]
TABLE_COLUMNS = ("m", "bonnet_myers", "family_at_k", "family_opt", "closed_24m",
                 "rayleigh_solve", "closed_200", "best")
FAMILY_OPT_TOL = 1e-9


# ---- rendering ----

def _round(x: float) -> float:
    y = float(f"{x:.{SIGNIFICANT_DIGITS}g}")
    return 0.0 if y == 0 else y


def _clean(obj: Any) -> Any:
    """Make a report JSON-ready: 12 significant digits, no -0, exact rationals as p/q."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return str(x)
        return _round(x)
    return obj


def _cell(value: Any) -> str:
    value = _clean(value)
    if isinstance(value, float):
        return f"{value:.{SIGNIFICANT_DIGITS}g}"
    if isinstance(value, (dict, list)):
        return json.dumps(value, separators=(",", ":"))
    if value is None:
        return ""
    return str(value)


def _csv_text(rows: List[Dict[str, Any]], columns: Optional[List[str]] = None) -> str:
    if columns is None:
        columns = []
        for row in rows:
            for key in row:
                if key not in columns:
                    columns.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: _cell(row.get(c)) for c in columns})
    return buf.getvalue()


def render(report: Report, fmt: str) -> str:
    if fmt == "csv":
        return _csv_text(report.results)
    return json.dumps(_clean(report.to_dict()), indent=2) + "\n"


# ---- commands ----

def _inputs(args) -> Dict[str, Any]:
    return {k: v for k, v in vars(args).items() if k not in ("func", "command")}


def cmd_constants(args, report: Report) -> int:
    g = GeometryParams(args.m, args.rho)
    p = args.p
    if p == 1:
        rec = constants.inequality_constant(ConstantFamily.LogSobolev, g, p)
        report.add("log_sobolev", rec.to_dict())
        return EXIT_OK
    if p == 2:
        kahler = constants.inequality_constant(ConstantFamily.Poincare, g, p)
        baseline = constants.inequality_constant(ConstantFamily.RiemannianBeckner, g, p)
        kahler_label, baseline_label = "poincare", "lichnerowicz"
    elif 1 < p < 2:
        kahler = constants.inequality_constant(ConstantFamily.KahlerBeckner, g, p)
        baseline = constants.inequality_constant(ConstantFamily.RiemannianBeckner, g, p)
        kahler_label, baseline_label = "kahler_beckner", "riemannian_beckner"
    elif 2 < p:
        kahler = constants.inequality_constant(ConstantFamily.KahlerSobolev, g, p)
        baseline = constants.inequality_constant(ConstantFamily.RiemannianSobolev, g, p)
        kahler_label, baseline_label = "kahler_sobolev", "riemannian_sobolev"
    else:
        raise DomainError(f"p={p} outside [1, {g.critical_exponent}]")
    report.add(kahler_label, kahler.to_dict())
    report.add(baseline_label, baseline.to_dict())
    report.add("ratio", {"value": kahler.value / baseline.value})
    if args.k is not None and p > 2:
        prop = constants.inequality_constant(ConstantFamily.PropositionC, g, p, args.k)
        report.add("proposition_c", prop.to_dict())
    return EXIT_OK


def _rescaled(bound: DiameterBound, g: GeometryParams) -> DiameterBound:
    """Move a bound computed at Ric >= 2m-1 to the requested rho."""
    value = diameter.rescale(bound.value, bound.geometry.rho, g.rho)
    return DiameterBound(bound.method, value, g, bound.params, dict(bound.extra))


def _bound(method: BoundMethod, g: GeometryParams, k: float, tol: float) -> DiameterBound:
    if method is BoundMethod.BonnetMyers:
        return DiameterBound(method, diameter.bonnet_myers_bound(g), g)
    if method is BoundMethod.FamilyAtK:
        return diameter.family_bound(g, k)
    if method is BoundMethod.FamilyOptimized:
        return diameter.optimize_family(g, FAMILY_OPT_TOL)
    if method is BoundMethod.ClosedForm24m:
        return diameter.closed_form_24m(g)
    if method is BoundMethod.ClosedForm200:
        return _rescaled(rayleigh.closed_form_200(g.m), g)
    return _rescaled(rayleigh.solve_max_diameter(g.m, tol), g)


def cmd_diameter(args, report: Report) -> int:
    g = GeometryParams(args.m, args.rho)
    k = args.k if args.k is not None else diameter.default_k(g.m)
    methods = list(BoundMethod) if args.method == "all" else [BoundMethod(args.method)]
    bounds = [_bound(mth, g, k, args.tol) for mth in methods]
    best = min(range(len(bounds)), key=lambda i: bounds[i].value)
    for i, b in enumerate(bounds):
        rec = b.to_dict()
        if args.method == "all":
            rec["best"] = i == best
        report.add(b.method.value, rec)
    return EXIT_OK


def cmd_verify(args, report: Report) -> int:
    if args.m_max < 2:
        raise DomainError(f"m_max={args.m_max} must be >= 2")
    if args.workers < 1:
        raise DomainError(f"workers={args.workers} must be >= 1")
    ManifoldSpec(1.0, args.quad_order)
    ctx = SuiteContext(seed=args.seed, m_max=args.m_max, tol=args.tol,
                       quad_order=args.quad_order, workers=args.workers)
    records = SUITES.dispatch(args.suite, ctx)
    for r in records:
        report.add(r.label, r.to_dict())
    report.status = overall_status(records)
    logger.info("verify %s: %d records, status %s", args.suite, len(records), report.status)
    return EXIT_VERIFY_FAILED if report.status == FAIL else EXIT_OK


def parse_m_range(text: str) -> range:
    try:
        lo, hi = (int(s) for s in text.split(":"))
    except ValueError:
        raise DomainError(f"m range {text!r} must look like 2:50")
    if lo < 2 or hi < lo:
        raise DomainError(f"m range {text!r} must satisfy 2 <= lo <= hi")
    return range(lo, hi + 1)


def table_row(m: int, rho_mode: str, tol: float) -> Dict[str, float]:
    g = GeometryParams(m, 1.0 if rho_mode == "unit" else 2 * m - 1)
    row = {
        "m": m,
        "bonnet_myers": diameter.bonnet_myers_bound(g),
        "family_at_k": diameter.family_bound(g, diameter.default_k(m)).value,
        "family_opt": diameter.optimize_family(g, FAMILY_OPT_TOL).value,
        "closed_24m": diameter.closed_form_24m(g).value,
        "rayleigh_solve": _rescaled(rayleigh.solve_max_diameter(m, tol), g).value,
        "closed_200": _rescaled(rayleigh.closed_form_200(m), g).value,
    }
    row["best"] = min(v for key, v in row.items() if key != "m")
    return row


def cmd_table(args, report: Report) -> int:
    rows = [table_row(m, args.rho_mode, args.tol) for m in parse_m_range(args.m_range)]
    if args.out is None:
        report.results.extend(rows)
        return EXIT_OK
    with open(args.out, "w", newline="") as fh:
        fh.write(_csv_text(rows, list(TABLE_COLUMNS)))
    logger.info("table: wrote %d rows to %s", len(rows), args.out)
    report.add("table", {"path": args.out, "rows": len(rows), "columns": list(TABLE_COLUMNS)})
    return EXIT_OK


# ---- parser ----

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    common.add_argument("--tol", type=float, default=1e-10, help="Root-solve tolerance (default: 1e-10)")
    common.add_argument("--quad-order", type=int, default=64, help="Gauss-Legendre order (default: 64)")
    common.add_argument("--format", choices=["json", "csv"], default="json", help="Report format")
    common.add_argument("--workers", type=int, default=1, help="Worker threads for random suites")
    common.add_argument("--log-level", default="WARNING",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Log level (stderr)")

    parser = argparse.ArgumentParser(
        prog="kahlerbound",
        description="Sharp functional-inequality constants and diameter bounds for Kahler manifolds",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  kahlerbound constants --m 2 --rho 1 --p 3
  kahlerbound diameter --m 2 --rho 3 --method all
  kahlerbound verify --suite model --seed 42
  kahlerbound table --m-range 2:5 --rho-mode ric2m1 --out table.csv
""",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    p = subparsers.add_parser("constants", parents=[common], help="Inequality constants at one p")
    p.add_argument("--m", type=int, required=True, help="Complex dimension")
    p.add_argument("--rho", type=float, required=True, help="Ricci lower bound")
    p.add_argument("--p", type=float, required=True, help="Exponent: 1 (log-Sobolev), (1, 2], or (2, 2m/(m-1)]")
    p.add_argument("--k", type=float, default=None, help="Also report the k-family constant at this k")
    p.set_defaults(func=cmd_constants)

    p = subparsers.add_parser("diameter", parents=[common], help="Diameter bounds")
    p.add_argument("--m", type=int, required=True, help="Complex dimension")
    p.add_argument("--rho", type=float, required=True, help="Ricci lower bound")
    p.add_argument("--method", choices=METHODS + ["all"], default="all", help="Bound to compute")
    p.add_argument("--k", type=float, default=None, help="Family parameter (default: 1 - 1/(2m))")
    p.set_defaults(func=cmd_diameter)

    p = subparsers.add_parser("verify", parents=[common], help="Run verification suites")
    p.add_argument("--suite", choices=SUITES.names() + ["all"], default="all", help="Suite to run")
    p.add_argument("--m-max", type=int, default=50, help="Largest complex dimension swept (default: 50)")
    p.set_defaults(func=cmd_verify)

    p = subparsers.add_parser("table", parents=[common], help="Diameter comparison table (CSV)")
    p.add_argument("--m-range", default="2:50", help="Inclusive range lo:hi (default: 2:50)")
    p.add_argument("--rho-mode", choices=["unit", "ric2m1"], default="ric2m1",
                   help="rho = 1 or rho = 2m - 1")
    p.add_argument("--out", default=None, help="CSV path; without it the table goes to stdout")
    p.set_defaults(func=cmd_table)
    return parser


def _fail(report: Report, exc: Exception) -> None:
    report.status = FAIL
    report.add("error", {"error": f"{type(exc).__name__}: {exc}"})


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_DOMAIN
    set_level(args.log_level)

    report = Report(args.command, _inputs(args), __version__, status=INFO)
    handler: Callable = args.func
    try:
        code = handler(args, report)
    except (DomainError, CatalogError) as e:
        logger.debug("%s rejected: %s", args.command, e)
        _fail(report, e)
        code = EXIT_DOMAIN
    except SolverError as e:
        _fail(report, e)
        code = EXIT_SOLVER
    except OSError as e:
        logger.error("%s: %s", args.command, e)
        _fail(report, e)
        code = EXIT_IO

    if args.command == "table" and code == EXIT_OK and args.out is None:
        sys.stdout.write(_csv_text(report.results, list(TABLE_COLUMNS)))
    else:
        sys.stdout.write(render(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
