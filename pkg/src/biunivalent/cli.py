"""Command-line entry point: ``biunivalent <subcommand> [flags]``.

Exit status: 0 success, 1 usage or input error, 2 a bound, identity or
inequality was violated. Reports are JSON (``--json``), CSV (``--csv``) or a
plain key: value listing. Floats are printed with 9 significant digits.

Flags may also come from ``--config PATH`` (``key = value`` lines, same names
as the long flags); command-line flags win. The default seed is read from
``BIUNIVALENT_SEED`` when ``--seed`` is not given.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .bounds import ClassSpec, class_bounds, compare_with_prior, fekete_szego_bound, bi_starlike_fekete_szego_bound
from .errors import BiunivalentError, InternalInconsistency, TheoremViolation
from .infimum import PiecewiseProblem, closed_form, oracle_infimum
from .membership import (
    DEFAULT_ANGLES,
    DEFAULT_RADII,
    FnuSpec,
    bound_consistency_check,
    check_membership,
    membership_threshold,
)
from .phi import parse_profile
from .series import TruncatedSeries, invert
from .stochastic import fekete_szego_stress, stress_test

SCHEMA_VERSION = 1
SEED_ENV = "BIUNIVALENT_SEED"
SIG_DIGITS = 9

SWEEP_COLUMNS = (
    "class", "lambda", "phi", "b1", "b2", "tau", "branch", "a2_bound", "a3_bound",
    "n", "seed", "admissible_count", "max_a2", "max_a3", "violation_count",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _round(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return float(f"{x:.{SIG_DIGITS}g}") if math.isfinite(x) else str(x)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, complex):
        return [_round(obj.real), _round(obj.imag)]
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def _emit(report: dict, fmt: str, out) -> None:
    report = _round({"schema_version": SCHEMA_VERSION, **report})
    if fmt == "json":
        out.write(json.dumps(report, indent=2) + "\n")
    elif fmt == "csv":
        flat = {k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in report.items()}
        w = csv.DictWriter(out, fieldnames=list(flat), lineterminator="\n")
        w.writeheader()
        w.writerow(flat)
    else:
        for k, v in report.items():
            out.write(f"{k}: {json.dumps(v) if isinstance(v, (list, dict)) else v}\n")


def _class_spec(args) -> ClassSpec:
    phi = parse_profile(args.phi)
    family = args.cls.replace("-", "_")
    if family == "r_sigma":
        if args.lam is None:
            raise UsageError("--lambda is required for --class r-sigma")
        return ClassSpec("r_sigma", phi, float(args.lam))
    return ClassSpec(family, phi)


def _parse_function(text: str) -> FnuSpec:
    fam, _, body = text.partition(":")
    key, _, val = body.partition("=")
    if fam != "fnu" or key.strip() != "nu":
        raise UsageError(f"function must look like fnu:nu=<value>, got {text!r}")
    try:
        return FnuSpec(float(val))
    except ValueError:
        raise UsageError(f"non-numeric nu in {text!r}") from None


def _grid(text: str) -> np.ndarray:
    """``start:stop:count`` or a comma list."""
    if ":" in text:
        a, b, k = text.split(":")
        return np.linspace(float(a), float(b), int(k))
    return np.array([float(v) for v in text.split(",")])


def cmd_bounds(args):
    spec = _class_spec(args)
    report = class_bounds(spec).as_dict()
    return report, 0


def cmd_lemma(args):
    problem = PiecewiseProblem(args.id, args.xi, args.eta)
    cf = closed_form(problem)
    report = {
        "lemma": problem.lemma, "xi": problem.xi, "eta": problem.eta,
        "gamma": cf.gamma, "rho": cf.rho, "closed_form": cf.value, "branch": cf.branch,
        "oracle": None, "abs_error": None, "rel_error": None, "argmin": None,
    }
    status = 0
    if args.oracle:
        o = oracle_infimum(problem, box=args.box, levels=args.levels, base_step=args.base_step)
        abs_err = abs(o.value - cf.value)
        report.update(
            oracle=o.value, abs_error=abs_err, rel_error=abs_err / cf.value,
            argmin=o.argmin if isinstance(o.argmin, str) else list(o.argmin),
        )
        if abs_err / cf.value > args.rel_tol:
            status = 2
    return report, status


def cmd_fekete_szego(args):
    spec = _class_spec(args)
    if spec.family == "r_sigma":
        bound = fekete_szego_bound(spec.lam, spec.phi, args.x)
        functional = "a3 - x a2^2"
    else:
        bound = bi_starlike_fekete_szego_bound(spec.phi, args.x)
        functional = "2 a3 - (x+1) a2^2"
    report = {"class": spec.family, "lambda": spec.lam if spec.family == "r_sigma" else None,
              "phi": spec.phi.label(), "x": args.x, "functional": functional, "bound": bound}
    status = 0
    if args.n:
        r = fekete_szego_stress(spec, args.x, args.n, args.seed)
        report["stress"] = r.as_dict()
        status = 2 if r.violation_count else 0
    return report, status


def cmd_membership(args):
    spec = _class_spec(args)
    f = _parse_function(args.f)
    verdict = check_membership(f, spec, radii=args.radii, angles=args.angles)
    report = verdict.as_dict()
    if verdict.verdict:
        consistency = bound_consistency_check(spec, f)
        report["bound_consistency"] = consistency.as_dict()
        if not consistency.ok:
            return report, 2
    return report, 0


def cmd_threshold(args):
    spec = _class_spec(args)
    th = membership_threshold(spec, args.lo, args.hi, tol=args.tol, radii=args.radii, angles=args.angles)
    return {"class": spec.label(), "lo": args.lo, "hi": args.hi, "tol": args.tol, "threshold": th}, 0


def cmd_sample(args):
    spec = _class_spec(args)
    r = stress_test(spec, args.n, args.seed)
    return r.as_dict(), 2 if r.violation_count else 0


def cmd_invert(args):
    coeffs = [complex(c.replace(" ", "")) for c in args.coeffs.split(",")]
    order = args.order or len(coeffs)
    if len(coeffs) > order:
        raise UsageError(f"{len(coeffs)} coefficients exceed order {order}")
    padded = coeffs + [0j] * (order - len(coeffs))
    g = invert(TruncatedSeries(padded))
    out = [c.real if c.imag == 0 else c for c in (complex(v) for v in g.coeffs)]
    return {"order": order, "input": [c.real if c.imag == 0 else c for c in padded], "inverse": out}, 0


def sweep_rows(spec_family: str, phi_family: str, params, lambdas, n: int, seed: int):
    """One row per (lambda, phi parameter) grid point."""
    rows = []
    status = 0
    for lam in lambdas if spec_family == "r_sigma" else [None]:
        for p in params:
            text = {"beta": f"beta:beta={p}", "power": f"power:alpha={p}",
                    "sqrt": "sqrt", "janowski": f"janowski:A=1,B={p}"}[phi_family]
            phi = parse_profile(text)
            spec = ClassSpec(spec_family, phi, float(lam)) if lam is not None else ClassSpec(spec_family, phi)
            b = class_bounds(spec)
            row = {"class": spec_family, "lambda": lam, "phi": phi.label(), "b1": b.b1, "b2": b.b2,
                   "tau": b.tau, "branch": b.branch, "a2_bound": b.a2_bound, "a3_bound": b.a3_bound,
                   "n": n, "seed": seed}
            if n:
                r = stress_test(spec, n, seed)
                row.update(admissible_count=r.admissible_count, max_a2=r.max_a2, max_a3=r.max_a3,
                           violation_count=r.violation_count)
                status = 2 if r.violation_count else status
            if spec_family == "r_sigma":
                compare_with_prior(float(lam), phi)
            rows.append(row)
            if phi_family == "sqrt":
                break
    return rows, status


def cmd_sweep(args, out):
    family = args.cls.replace("-", "_")
    params = _grid(args.param_grid) if args.param_grid else [None]
    lambdas = _grid(args.lambda_grid) if args.lambda_grid else [0.0]
    rows, status = sweep_rows(family, args.family, params, lambdas, args.n, args.seed)
    if args.format == "json":
        _emit({"rows": rows}, "json", out)
    else:
        w = csv.DictWriter(out, fieldnames=SWEEP_COLUMNS, lineterminator="\n", restval="")
        w.writeheader()
        for row in rows:
            w.writerow(_round(row))
    return status


def _add_class_flags(p):
    p.add_argument("--class", dest="cls", choices=("r-sigma", "bi-starlike"), required=True)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--phi", required=True, help="janowski:A=..,B=.. | power:alpha=.. | beta:beta=.. | sqrt | custom:b1=..,b2=..")


def _add_output_flags(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="format", action="store_const", const="json")
    g.add_argument("--csv", dest="format", action="store_const", const="csv")
    g.add_argument("--plain", dest="format", action="store_const", const="plain")
    g.add_argument("--format", dest="format", choices=("json", "csv", "plain"))


def _add_membership_flags(p):
    p.add_argument("--radii", type=lambda s: tuple(float(v) for v in s.split(",")), default=DEFAULT_RADII)
    p.add_argument("--angles", type=int, default=DEFAULT_ANGLES)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="biunivalent", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="key = value file providing flag defaults")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bounds", help="coefficient bounds for a class")
    _add_class_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("lemma", help="piecewise infimum, optionally checked by the oracle")
    p.add_argument("--id", choices=("L21", "L22", "L23"), required=True)
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--box", type=float, default=100.0)
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--base-step", type=float, default=0.25)
    p.add_argument("--rel-tol", type=float, default=1e-3)
    _add_output_flags(p)

    p = sub.add_parser("fekete-szego", help="Fekete-Szegő bound at parameter x")
    _add_class_flags(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--n", type=int, default=0, help="also stress-test with n samples")
    p.add_argument("--seed", type=int, default=None)
    _add_output_flags(p)

    p = sub.add_parser("membership", help="numeric membership of f_nu in a class")
    p.add_argument("--f", required=True, help="fnu:nu=<value>")
    _add_class_flags(p)
    _add_membership_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("threshold", help="bisection for the f_nu membership threshold")
    _add_class_flags(p)
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    _add_membership_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("sample", help="Monte Carlo stress test of the bounds")
    _add_class_flags(p)
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=None)
    _add_output_flags(p)

    p = sub.add_parser("invert", help="compositional inverse of a truncated series")
    p.add_argument("--coeffs", required=True, help="a1,a2,...,aN (a1 must be 1)")
    p.add_argument("--order", type=int, default=None)
    _add_output_flags(p)

    p = sub.add_parser("sweep", help="bounds (and optional stress test) over a parameter grid, as CSV")
    p.add_argument("--class", dest="cls", choices=("r-sigma", "bi-starlike"), required=True)
    p.add_argument("--family", choices=("beta", "power", "sqrt", "janowski"), required=True)
    p.add_argument("--param-grid", default=None, help="start:stop:count or comma list")
    p.add_argument("--lambda-grid", default=None, help="start:stop:count or comma list")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--seed", type=int, default=None)
    _add_output_flags(p)
    return parser


def read_config(path: str) -> dict:
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, eq, val = line.partition("=")
            if not eq:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            values[key.strip().lstrip("-")] = val.strip()
    return values


def _config_argv(config: dict, parser: argparse.ArgumentParser, command: str) -> list[str]:
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction)).choices[command]
    known = {}
    for action in sub._actions:
        for opt in action.option_strings:
            if opt.startswith("--"):
                known[opt[2:]] = action
                known[opt[2:].replace("-", "_")] = action
    argv = []
    for key, val in config.items():
        if key not in known:
            raise UsageError(f"unknown config key {key!r} for {command}")
        action = known[key]
        flag = action.option_strings[-1] if action.option_strings[-1].startswith("--") else action.option_strings[0]
        if action.nargs == 0:
            if val.lower() in ("1", "true", "yes", "on"):
                argv.append(flag)
        else:
            argv += [flag, val]
    return argv


def _with_config(argv: list[str], parser: argparse.ArgumentParser) -> list[str]:
    """Splice config-file flags in right after the subcommand so explicit flags win."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return argv
    commands = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction)).choices
    idx = next((i for i, tok in enumerate(argv) if tok in commands), None)
    if idx is None:
        raise UsageError("a subcommand is required")
    extra = _config_argv(read_config(known.config), parser, argv[idx])
    return argv[: idx + 1] + extra + argv[idx + 1 :]


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _with_config(argv, parser)
        args = parser.parse_args(argv)
        if hasattr(args, "seed") and args.seed is None:
            args.seed = int(os.environ.get(SEED_ENV, "42"))
        fmt = args.format or "plain"
        args.format = fmt
        if args.command == "sweep":
            return cmd_sweep(args, out)
        handler = {
            "bounds": cmd_bounds, "lemma": cmd_lemma, "fekete-szego": cmd_fekete_szego,
            "membership": cmd_membership, "threshold": cmd_threshold, "sample": cmd_sample,
            "invert": cmd_invert,
        }[args.command]
        report, status = handler(args)
        _emit(report, fmt, out)
        return status
    except (UsageError, BiunivalentError, ValueError, OSError) as exc:
        print(f"biunivalent: error: {exc}", file=sys.stderr)
        return 1
    except (TheoremViolation, InternalInconsistency) as exc:
        print(f"biunivalent: violation: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
