"""Command-line front end: reproducible CSV/JSON tables and optional figures.

Exit codes: 0 success, 1 failed acceptance check, 2 usage or configuration
error, 3 numerical non-convergence in at least one row (the rows are still
written, with ``converged=false``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from . import __version__
from .checks import CHECKS, DEFAULT_TOLERANCES, run_checks
from .errors import CasimirError, NoConvergence
from .lifshitz import (
    energy_per_area,
    eta,
    eta_long_asymptote,
    eta_short_limit,
    eta_small_alpha,
)
from .numerics import QuadratureConfig
from .polariton import Branch, k_lightcone, pair_creation_threshold, sample_curve
from .polenergy import (
    compute_C,
    e_norm_per_area,
    epol,
    epol_long_asymptote,
    epol_short_limit,
    find_crossover,
)
from .specfun import FIGURE_PARAMS, ModelParams

EXIT_OK, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_NONCONVERGENCE = 0, 1, 2, 3

BRANCHES = ("single", "plus", "minus", "lightcone", "threshold")
SLOPE_FLAG_TOL = 0.05

COLUMNS = {
    "eta-curve": ["lambda", "eta", "eta_error", "e_over_eperf_slope_flag", "model_reliable", "converged"],
    "epol-curve": ["lambda", "epol_over_EN", "error", "sign", "converged"],
    "dispersion": ["branch", "k", "omega", "mu", "p"],
    "asymptotics": ["quantity", "value"],
    "crossover": ["lambda_max", "epol_max"],
}
DIMENSIONAL_COLUMNS = {
    "eta-curve": ["L_um", "energy_J_per_m2"],
    "epol-curve": ["L_um", "energy_J_per_m2"],
    "crossover": ["L_max_um"],
}
PLOTTABLE = ("eta-curve", "epol-curve", "dispersion")


class ConfigError(Exception):
    pass


def _tolerance_pair(text: str):
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    if name not in DEFAULT_TOLERANCES:
        raise argparse.ArgumentTypeError(
            f"unknown tolerance {name!r}; choose from {', '.join(DEFAULT_TOLERANCES)}"
        )
    try:
        return name, float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance value {value!r} is not a number") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("model")
    g.add_argument("--alpha", type=float, default=None, help="fine-structure constant (default 1/137)")
    g.add_argument("--v", type=float, default=None, help="Fermi velocity over c (default 1/300)")
    g.add_argument("--figure-params", action="store_true",
                   help="use alpha = v = 1/2 (the dispersion-figure parameters)")
    g.add_argument("--lambda-delta-um", type=float, default=None,
                   help="gap wavelength in micrometers; lambda options are then separations in micrometers")
    o = common.add_argument_group("output")
    o.add_argument("--format", choices=("csv", "json"), default="csv")
    o.add_argument("--output", "-o", default=None, help="output file (default stdout)")
    o.add_argument("--plot", default=None, metavar="PATH",
                   help="also render a figure to PATH (format from the extension)")
    o.add_argument("--jobs", type=int, default=1, help="worker processes for lambda sweeps")

    sweep = argparse.ArgumentParser(add_help=False)
    s = sweep.add_argument_group("separation grid")
    s.add_argument("--lambda", dest="lam", type=float, default=None, help="single separation")
    s.add_argument("--lambda-min", type=float, default=1e-3)
    s.add_argument("--lambda-max", type=float, default=1e3)
    s.add_argument("--points", type=int, default=60)
    s.add_argument("--grid", choices=("linear", "log"), default="log")

    parser = argparse.ArgumentParser(
        prog="casimir-polariton",
        description="Casimir energy and TE polaritons of two gapped graphene layers.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("eta-curve", parents=[common, sweep], help="correction factor eta(lambda)")
    sub.add_parser("epol-curve", parents=[common, sweep], help="polaritonic energy E_pol/E_N(lambda)")

    d = sub.add_parser("dispersion", parents=[common], help="polariton dispersion branches")
    d.add_argument("--lambda", dest="lam", type=float, default=1.0, help="separation for coupled branches")
    d.add_argument("--branches", default=",".join(BRANCHES),
                   help=f"comma-separated subset of {','.join(BRANCHES)}")
    d.add_argument("--k-max", type=float, default=5.0)
    d.add_argument("--points", type=int, default=200)
    d.add_argument("--grid", choices=("linear", "log"), default="linear")

    sub.add_parser("asymptotics", parents=[common], help="short- and long-distance constants")
    sub.add_parser("crossover", parents=[common], help="location of the polaritonic energy maximum")

    c = sub.add_parser("check", parents=[common], help="run the acceptance criteria")
    c.add_argument("--json", action="store_true", help="machine-readable report")
    c.add_argument("--tol", action="append", type=_tolerance_pair, default=[], metavar="NAME=VALUE",
                   help="override a tolerance (repeatable)")
    c.add_argument("--only", action="append", choices=list(CHECKS), default=None,
                   help="run only the named criterion (repeatable)")
    return parser


def _params(args) -> ModelParams:
    base = FIGURE_PARAMS if args.figure_params else ModelParams()
    alpha = base.alpha if args.alpha is None else args.alpha
    v = base.v if args.v is None else args.v
    ld = None if args.lambda_delta_um is None else args.lambda_delta_um / 1e6
    try:
        return ModelParams(alpha=alpha, v=v, lambda_delta_m=ld, lambda_min_ratio=base.lambda_min_ratio)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _grid(args) -> np.ndarray:
    if args.lam is not None:
        if not args.lam > 0:
            raise ConfigError("--lambda must be positive")
        values = np.array([args.lam])
    else:
        if not 0 < args.lambda_min < args.lambda_max:
            raise ConfigError("need 0 < --lambda-min < --lambda-max")
        if args.points < 2:
            raise ConfigError("--points must be at least 2")
        space = np.geomspace if args.grid == "log" else np.linspace
        values = space(args.lambda_min, args.lambda_max, args.points)
    if args.lambda_delta_um is not None:
        values = values / args.lambda_delta_um
    return values


def _sweep(func, lams, params, cfg, jobs):
    task = partial(func, params=params, cfg=cfg)
    if jobs > 1 and len(lams) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(task, [float(l) for l in lams]))
    return [task(float(l)) for l in lams]


def _slope_flags(lams, etas) -> list[str]:
    # local log-log slope of E = eta E_perf, which scales as eta / lam^3
    if len(lams) < 2 or not all(e > 0 for e in etas):
        return ["n/a"] * len(lams)
    slopes = np.gradient(np.log(etas), np.log(lams)) - 3.0
    flags = []
    for s in slopes:
        if abs(s + 3.0) <= SLOPE_FLAG_TOL:
            flags.append("L^-3")
        elif abs(s + 5.0) <= SLOPE_FLAG_TOL:
            flags.append("L^-5")
        else:
            flags.append("transition")
    return flags


def run_eta_curve(args, params, cfg):
    lams = _grid(args)
    results = _sweep(eta, lams, params, cfg, args.jobs)
    flags = _slope_flags(lams, [r.value for r in results])
    rows = []
    for r, flag in zip(results, flags):
        row = {
            "lambda": r.lam,
            "eta": r.value,
            "eta_error": r.error_estimate,
            "e_over_eperf_slope_flag": flag,
            "model_reliable": r.reliable,
            "converged": r.converged,
        }
        if params.lambda_delta_m is not None:
            row["L_um"] = r.lam * args.lambda_delta_um
            row["energy_J_per_m2"] = energy_per_area(r.value, r.lam, params.lambda_delta_m)
        rows.append(row)
    return rows


def run_epol_curve(args, params, cfg):
    lams = _grid(args)
    results = _sweep(epol, lams, params, cfg, args.jobs)
    rows = []
    for r in results:
        row = {
            "lambda": r.lam,
            "epol_over_EN": r.value,
            "error": r.error_estimate,
            "sign": int(np.sign(r.value)),
            "converged": r.converged,
        }
        if params.lambda_delta_m is not None:
            row["L_um"] = r.lam * args.lambda_delta_um
            row["energy_J_per_m2"] = r.value * e_norm_per_area(params.lambda_delta_m)
        rows.append(row)
    return rows


def _branch_list(text: str) -> list[str]:
    names = [b.strip() for b in text.split(",") if b.strip()]
    bad = [b for b in names if b not in BRANCHES]
    if bad or not names:
        raise ConfigError(f"unknown branches {bad}; choose from {','.join(BRANCHES)}")
    return names


def run_dispersion(args, params, cfg):
    names = _branch_list(args.branches)
    if args.points < 2:
        raise ConfigError("--points must be at least 2")
    if not args.k_max > 0:
        raise ConfigError("--k-max must be positive")
    lam = args.lam
    if args.lambda_delta_um is not None:
        lam = lam / args.lambda_delta_um
    if not lam > 0:
        raise ConfigError("--lambda must be positive")
    rows = []

    def emit(name, samples):
        for s in samples:
            rows.append({"branch": name, "k": s.k, "omega": s.omega, "mu": s.mu, "p": s.p})

    plus = None
    if "plus" in names or "lightcone" in names:
        plus = sample_curve(Branch.PLUS, lam, args.k_max, args.points, params, args.grid)
    for name in names:
        if name == "threshold":
            for k in np.linspace(0.0, args.k_max, args.points):
                w = pair_creation_threshold(float(k), params)
                mu = math.sqrt(k * k - w * w) if k > w else math.nan
                rows.append({"branch": name, "k": float(k), "omega": w, "mu": mu, "p": 1.0})
        elif name == "single":
            emit(name, sample_curve(Branch.SINGLE, None, args.k_max, args.points, params, args.grid).samples)
        elif name == "minus":
            emit(name, sample_curve(Branch.MINUS, lam, args.k_max, args.points, params, args.grid).samples)
        elif name == "plus":
            emit(name, plus.physical().samples)
        else:
            emit(name, [s for s in plus.samples if s.branch is Branch.LIGHTCONE])
    return rows


def run_asymptotics(args, params, cfg):
    short = eta_short_limit(params, cfg)
    quantities = [
        ("eta_short_limit", short.eta),
        ("g_te", short.g_te),
        ("g_tm", short.g_tm),
        ("tm_share", short.tm_share),
    ]
    if params.v > 0:
        quantities.append(("eta_small_alpha", eta_small_alpha(params)))
    quantities += [
        # lam^2 eta and lam^(5/2) E_pol/E_N in the long-distance limit
        ("eta_long_coefficient", eta_long_asymptote(1.0, params)),
        ("epol_short_limit", epol_short_limit(params, cfg)),
        ("C", compute_C()),
    ]
    if params.alpha > 0:
        quantities.append(("epol_long_coefficient", epol_long_asymptote(1.0, params)))
    quantities.append(("k_lightcone_lambda1", k_lightcone(1.0, params)))
    return [{"quantity": q, "value": v} for q, v in quantities]


def run_crossover(args, params, cfg):
    lam_max, e_max = find_crossover(params, cfg)
    row = {"lambda_max": lam_max, "epol_max": e_max}
    if params.lambda_delta_m is not None:
        row["L_max_um"] = lam_max * args.lambda_delta_um
    return [row]


RUNNERS = {
    "eta-curve": run_eta_curve,
    "epol-curve": run_epol_curve,
    "dispersion": run_dispersion,
    "asymptotics": run_asymptotics,
    "crossover": run_crossover,
}


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.12e" % value
    return str(value)


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _meta(command: str, params: ModelParams) -> dict:
    return {"params": params.as_dict(), "version": __version__, "command": command}


def render(command: str, params: ModelParams, columns: list[str], rows: list[dict], fmt: str) -> str:
    """Format a result table as CSV (with ``#`` header comments) or JSON."""
    if fmt == "json":
        doc = {
            "meta": _meta(command, params),
            "rows": [{c: _json_value(r[c]) for c in columns} for r in rows],
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    buf.write(f"# casimir-polariton {__version__}\n")
    buf.write(f"# command: {command}\n")
    for key, value in params.as_dict().items():
        buf.write(f"# {key}: {value!r}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_cell(r[c]) for c in columns])
    return buf.getvalue()


def _write(text: str, path) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)


def _run_check(args, params) -> int:
    results = run_checks(params, dict(args.tol), args.only)
    if args.json:
        doc = {"meta": _meta("check", params), "rows": [r.as_dict() for r in results]}
        text = json.dumps(doc, indent=2, default=_json_value) + "\n"
    else:
        lines = [r.line() for r in results]
        n_pass = sum(r.passed for r in results)
        lines.append(f"{n_pass}/{len(results)} criteria passed")
        text = "\n".join(lines) + "\n"
    _write(text, args.output)
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        params = _params(args)
        if args.jobs < 1:
            raise ConfigError("--jobs must be at least 1")
        if args.plot is not None and args.command not in PLOTTABLE:
            raise ConfigError(f"--plot is available for {', '.join(PLOTTABLE)}")
        try:
            cfg = QuadratureConfig.from_env()
        except ValueError as exc:
            raise ConfigError(f"invalid quadrature tolerance in environment: {exc}") from None
        if args.command == "check":
            return _run_check(args, params)
        rows = RUNNERS[args.command](args, params, cfg)
    except ConfigError as exc:
        parser.error(str(exc))
    except NoConvergence as exc:
        print(f"casimir-polariton: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except CasimirError as exc:
        print(f"casimir-polariton: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    columns = COLUMNS[args.command] + (
        DIMENSIONAL_COLUMNS.get(args.command, []) if params.lambda_delta_m is not None else []
    )
    _write(render(args.command, params, columns, rows, args.format), args.output)
    if args.plot is not None:
        from .plotting import plot_table

        plot_table(args.command, rows, params, args.plot)
    if any(r.get("converged") is False for r in rows):
        print("casimir-polariton: quadrature did not converge in some rows", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
