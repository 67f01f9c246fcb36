"""Acceptance criteria as executable checks.

Every check returns a :class:`CheckResult` with the measured quantities and
the tolerance that was applied.  Tolerances live in :data:`DEFAULT_TOLERANCES`
and can be overridden by name, which is how the CLI ``check --tol`` option
and the test suite drive them.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import oracles
from .errors import PoleProximityWarning
from .lifshitz import e_perf, eta, eta_long_asymptote, eta_short_limit
from .polariton import omega_coupled
from .polenergy import (
    compute_C,
    e_norm_per_area,
    epol,
    epol_long_asymptote,
    epol_short_limit,
    find_crossover,
)
from .reflection import EvanescentPoint, r_general, r_t0
from .specfun import FIGURE_PARAMS, ModelParams, psi, psi_inv

__all__ = [
    "DEFAULT_TOLERANCES",
    "CheckResult",
    "CHECKS",
    "loglog_slope",
    "run_checks",
]

DEFAULT_TOLERANCES = {
    "eta_short_rel": 0.05,
    "eta_plateau_rel": 0.02,
    "tm_share_abs": 1e-3,
    "eta_long_rel": 0.05,
    "slope_abs": 0.05,
    "epol_short_rel": 0.03,
    "epol_plateau_rel": 0.01,
    "C_abs": 1e-4,
    "crossover_abs": 1.0,
    "epol_tail_rel": 0.05,
    "resonance_abs": 1e-8,
    "roundtrip_abs": 1e-10,
    "psi_inv_asym_rel": 1e-4,
    "tangency_abs": 1e-3,
    "reduction_rel": 1e-12,
    "oracle_rel": 1e-4,
    "subleading_max": 1e-3,
}

# values quoted to two or four significant figures for the default parameters
ETA_SHORT_TARGET = 4.8e-3
TM_SHARE_TARGET = 0.996
EPOL_SHORT_TARGET = -7.6e-5
C_TARGET = 0.2132
CROSSOVER_TARGET = 74.0

SLOPE_POINTS = 7
ORACLE_LAMBDAS = (0.01, 1.0, 100.0)
SEED = 20240611


@dataclass
class CheckResult:
    key: str
    title: str
    passed: bool
    measured: dict
    tolerance: dict
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        parts = ", ".join(f"{k}={_fmt(v)}" for k, v in self.measured.items())
        return f"{status} [{self.key}] {self.title}: {parts}" + (f" ({self.detail})" if self.detail else "")

    def as_dict(self) -> dict:
        return asdict(self)


def _fmt(v):
    return f"{v:.6g}" if isinstance(v, float) else str(v)


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of ``log|y|`` against ``log x``."""
    return float(np.polyfit(np.log(xs), np.log(np.abs(ys)), 1)[0])


def _energy_slope(lo: float, hi: float, params: ModelParams) -> float:
    # E / A is proportional to eta / lam^3 at fixed lambda_D
    lams = np.geomspace(lo, hi, SLOPE_POINTS)
    return loglog_slope(lams, [eta(float(l), params).value / l ** 3 for l in lams])


def _rel(a: float, b: float) -> float:
    return abs(a / b - 1.0)


def check_eta_short(params, tol):
    lim = eta_short_limit(params).eta
    full = eta(1e-3, params).value
    d_lim, d_full = _rel(lim, ETA_SHORT_TARGET), _rel(full, lim)
    ok = d_lim <= tol["eta_short_rel"] and d_full <= tol["eta_plateau_rel"]
    return ("short-distance correction factor", ok,
            {"eta_short_limit": lim, "eta(1e-3)": full, "dev_target": d_lim, "dev_plateau": d_full},
            {k: tol[k] for k in ("eta_short_rel", "eta_plateau_rel")})


def check_tm_share(params, tol):
    share = eta_short_limit(params).tm_share
    ok = abs(share - TM_SHARE_TARGET) <= tol["tm_share_abs"]
    return "TM dominance", ok, {"tm_share": share}, {"tm_share_abs": tol["tm_share_abs"]}


def check_eta_long(params, tol):
    full = eta(100.0, params).value
    asym = eta_long_asymptote(100.0, params)
    slope = _energy_slope(1e2, 1e3, params)
    d = _rel(full, asym)
    ok = d <= tol["eta_long_rel"] and abs(slope + 5.0) <= tol["slope_abs"]
    return ("long-distance total energy", ok,
            {"eta(100)": full, "asymptote": asym, "dev": d, "slope": slope},
            {k: tol[k] for k in ("eta_long_rel", "slope_abs")})


def check_eta_short_slope(params, tol):
    slope = _energy_slope(1e-3, 1e-2, params)
    ok = abs(slope + 3.0) <= tol["slope_abs"]
    return "short-distance energy slope", ok, {"slope": slope}, {"slope_abs": tol["slope_abs"]}


def check_epol_short(params, tol):
    lim = epol_short_limit(params)
    full = epol(1e-3, params).value
    d_lim, d_full = _rel(lim, EPOL_SHORT_TARGET), _rel(full, lim)
    ok = d_lim <= tol["epol_short_rel"] and d_full <= tol["epol_plateau_rel"]
    return ("polaritonic short-distance constant", ok,
            {"epol_short_limit": lim, "epol(1e-3)": full, "dev_target": d_lim, "dev_plateau": d_full},
            {k: tol[k] for k in ("epol_short_rel", "epol_plateau_rel")})


def check_C(params, tol):
    C = compute_C()
    ok = abs(C - C_TARGET) <= tol["C_abs"]
    return "constant C", ok, {"C": C}, {"C_abs": tol["C_abs"]}


def check_crossover(params, tol):
    lam_max, e_max = find_crossover(params)
    ok = abs(lam_max - CROSSOVER_TARGET) <= tol["crossover_abs"] and e_max > 0
    return ("crossover maximum", ok, {"lambda_max": lam_max, "epol_max": e_max},
            {"crossover_abs": tol["crossover_abs"]})


def check_epol_tail(params, tol):
    ratio = epol(1e3, params).value / epol_long_asymptote(1e3, params)
    lams = np.geomspace(200.0, 2000.0, SLOPE_POINTS)
    slope = loglog_slope(lams, [epol(float(l), params).value for l in lams])
    ok = abs(ratio - 1.0) <= tol["epol_tail_rel"] and abs(slope + 2.5) <= tol["slope_abs"]
    return ("polaritonic tail", ok, {"ratio(1e3)": ratio, "slope": slope},
            {k: tol[k] for k in ("epol_tail_rel", "slope_abs")})


def check_resonance(params, tol):
    rng = np.random.default_rng(SEED)
    worst = 0.0
    with warnings.catch_warnings():
        # the points lie on the pole by construction
        warnings.simplefilter("ignore", PoleProximityWarning)
        for _ in range(100):
            mu = float(rng.uniform(0.01, 10.0))
            lam = float(np.exp(rng.uniform(math.log(0.1), math.log(100.0))))
            sign = int(rng.choice([1, -1]))
            pt = omega_coupled(mu, lam, sign, params)
            inv = -1.0 / r_t0(pt.evanescent(), params, "TE")
            worst = max(worst, abs(inv - sign * math.exp(-mu * lam)))
    ok = worst < tol["resonance_abs"]
    return "resonance condition", ok, {"max_residual": worst}, {"resonance_abs": tol["resonance_abs"]}


def check_psi_inv(params, tol):
    ps = np.geomspace(1e-6, 1.0 - 1e-6, 200)
    roundtrip = max(abs(psi_inv(psi(float(p))) - p) for p in ps)
    ys = 10.0 ** np.arange(-12.0, -3.0)
    asym = max(abs(psi_inv(float(y)) / (math.sqrt(3.0 * y) / 2.0) - 1.0) for y in ys)
    ok = roundtrip < tol["roundtrip_abs"] and asym < tol["psi_inv_asym_rel"]
    return ("inverse of psi", ok, {"max_roundtrip": roundtrip, "max_asym_dev": asym},
            {k: tol[k] for k in ("roundtrip_abs", "psi_inv_asym_rel")})


def plus_branch_slope_at_lightcone(lam: float, params: ModelParams, h: float = 1e-4) -> float:
    """One-sided ``dOmega_+/dK`` at ``K_lc`` with one Richardson step."""
    base = omega_coupled(0.0, lam, 1, params)

    def secant(step):
        pt = omega_coupled(step, lam, 1, params)
        return (pt.omega - base.omega) / (pt.k - base.k)

    return 2.0 * secant(h / 2.0) - secant(h)


def check_tangency(params, tol):
    # Run on the dispersion-figure parameters.  For alpha = 1/137 the endpoint
    # sits at p = 1 - O(exp(-2 / (alpha lam))) and the unit slope is confined
    # to mu below that scale, which no double-precision difference resolves.
    slopes = {
        f"slope(lam={lam:g})": plus_branch_slope_at_lightcone(lam, FIGURE_PARAMS)
        for lam in (0.5, 1.0, 5.0)
    }
    ok = all(abs(s - 1.0) <= tol["tangency_abs"] for s in slopes.values())
    return "tangency at the light cone (alpha=v=1/2)", ok, slopes, {"tangency_abs": tol["tangency_abs"]}


def check_reduction(params, tol):
    worst = 0.0
    for mu in np.linspace(0.0, 10.0, 52)[1:-1]:
        for p in np.linspace(0.0, 0.99, 52)[1:-1]:
            pt = EvanescentPoint.from_mu_p(float(mu), float(p), params.v)
            for pol in ("TM", "TE"):
                ref = r_t0(pt, params, pol)
                worst = max(worst, abs(r_general(pt, params, pol) - ref) / abs(ref))
    ok = worst <= tol["reduction_rel"]
    return "reduction identity", ok, {"max_rel_dev": worst}, {"reduction_rel": tol["reduction_rel"]}


def check_oracles(params, tol):
    measured = {}
    for lam in ORACLE_LAMBDAS:
        measured[f"eta(lam={lam:g})"] = _rel(eta(lam, params).value,
                                             oracles.eta_trapezoid(lam, params.alpha, params.v))
        measured[f"epol(lam={lam:g})"] = _rel(epol(lam, params).value,
                                              oracles.epol_trapezoid(lam, params.alpha, params.v))
    ok = all(d < tol["oracle_rel"] for d in measured.values())
    return "oracle equivalence", ok, measured, {"oracle_rel": tol["oracle_rel"]}


def check_subleading(params, tol):
    lam = 1e-3
    # the ratio does not depend on lambda_D; any positive scale works
    ld = params.lambda_delta_m or 1e-5
    pol = abs(epol(lam, params).value * e_norm_per_area(ld))
    total = abs(eta(lam, params).value * e_perf(lam * ld, 1.0))
    ratio = pol / total
    ok = ratio < tol["subleading_max"]
    return "polaritonic part is sub-leading", ok, {"ratio": ratio}, {"subleading_max": tol["subleading_max"]}


CHECKS: dict[str, Callable] = {
    "eta_short": check_eta_short,
    "tm_share": check_tm_share,
    "eta_long": check_eta_long,
    "eta_short_slope": check_eta_short_slope,
    "epol_short": check_epol_short,
    "C": check_C,
    "crossover": check_crossover,
    "epol_tail": check_epol_tail,
    "resonance": check_resonance,
    "psi_inv": check_psi_inv,
    "tangency": check_tangency,
    "reduction": check_reduction,
    "oracles": check_oracles,
    "subleading": check_subleading,
}


def run_one(key: str, params: ModelParams | None = None, overrides: dict | None = None) -> CheckResult:
    params = params or ModelParams()
    tol = dict(DEFAULT_TOLERANCES)
    for name, value in (overrides or {}).items():
        if name not in tol:
            raise KeyError(f"unknown tolerance {name!r}")
        tol[name] = float(value)
    title, ok, measured, used = CHECKS[key](params, tol)
    return CheckResult(key, title, bool(ok), measured, used)


def run_checks(
    params: ModelParams | None = None,
    overrides: dict | None = None,
    keys=None,
) -> list[CheckResult]:
    """Run the selected (default: all) criteria in their fixed order."""
    return [run_one(k, params, overrides) for k in (keys or CHECKS)]
