"""Figures rendered from the CLI result tables.

Uses the non-interactive Agg backend; the output format follows the file
extension of the target path.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .lifshitz import eta_long_asymptote, eta_short_limit  # noqa: E402
from .polenergy import epol_long_asymptote, epol_short_limit  # noqa: E402
from .specfun import ModelParams  # noqa: E402

__all__ = ["plot_eta_curve", "plot_epol_curve", "plot_dispersion", "plot_table"]

_BRANCH_STYLE = {
    "single": dict(color="k", lw=1.5, label=r"$\Omega_0$"),
    "plus": dict(color="C3", lw=1.5, label=r"$\Omega_+$"),
    "minus": dict(color="C0", lw=1.5, label=r"$\Omega_-$"),
    "lightcone": dict(color="C3", lw=1.5, ls=":", label=r"$\Omega_+$ continuation"),
    "threshold": dict(color="0.5", lw=1.0, ls="--", label="pair creation"),
}


def _save(fig, path):
    # fixed metadata keeps repeated renders byte-stable where the backend allows it
    meta = {"CreationDate": None} if str(path).lower().endswith(".pdf") else None
    fig.savefig(path, bbox_inches="tight", metadata=meta)
    plt.close(fig)


def _column(rows, name):
    return np.array([r[name] for r in rows], dtype=float)


def plot_eta_curve(rows, params: ModelParams, path) -> None:
    """Log-log correction factor with both asymptotes and the validity region."""
    lam = _column(rows, "lambda")
    eta = _column(rows, "eta")
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    ax.loglog(lam, eta, "k-", label=r"$\eta$")
    if params.alpha > 0:
        ax.axhline(eta_short_limit(params).eta, color="C0", ls="--", lw=1, label="short-distance limit")
        ax.loglog(lam, [eta_long_asymptote(l, params) for l in lam], color="C3", ls="--", lw=1,
                  label="long-distance asymptote")
        ax.set_ylim(eta[eta > 0].min() / 3, eta.max() * 3)
    if lam.min() < params.lambda_min_ratio:
        ax.axvspan(lam.min(), params.lambda_min_ratio, color="0.85", hatch="//", lw=0,
                   label="model unreliable")
    ax.set_xlabel(r"$L/\lambda_\Delta$")
    ax.set_ylabel(r"$\eta = E/E_{\rm perf}$")
    ax.legend(fontsize=8)
    _save(fig, path)


def plot_epol_curve(rows, params: ModelParams, path) -> None:
    """Absolute polaritonic energy on log-log axes, colored by sign."""
    lam = _column(rows, "lambda")
    val = _column(rows, "epol_over_EN")
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    ax.loglog(lam, np.abs(val), "k-", lw=1)
    neg, pos = val < 0, val > 0
    ax.loglog(lam[neg], -val[neg], "o", ms=3, color="C0", label=r"$E_{\rm pol} < 0$")
    ax.loglog(lam[pos], val[pos], "o", ms=3, color="C3", label=r"$E_{\rm pol} > 0$")
    if params.alpha > 0:
        ax.axhline(abs(epol_short_limit(params)), color="C0", ls="--", lw=1, label="short-distance limit")
        big = lam[lam > 10] if np.any(lam > 10) else lam
        ax.loglog(big, [epol_long_asymptote(l, params) for l in big], color="C3", ls="--", lw=1,
                  label=r"$\propto \lambda^{-5/2}$")
    ax.set_xlabel(r"$L/\lambda_\Delta$")
    ax.set_ylabel(r"$|E_{\rm pol}/E_N|$")
    ax.legend(fontsize=8)
    _save(fig, path)


def plot_dispersion(rows, params: ModelParams, path) -> None:
    """Frequency against wavevector for every branch in the table."""
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    k_max = max(r["k"] for r in rows)
    ax.plot([0, k_max], [0, k_max], color="0.6", lw=0.8, label="light cone")
    for name, style in _BRANCH_STYLE.items():
        sel = [r for r in rows if r["branch"] == name]
        if sel:
            ax.plot(_column(sel, "k"), _column(sel, "omega"), **style)
    top = max(r["omega"] for r in rows if r["branch"] != "threshold")
    ax.set_xlim(0, k_max)
    ax.set_ylim(0, 1.15 * max(top, 1.0))
    ax.set_xlabel(r"$k\lambda_\Delta$")
    ax.set_ylabel(r"$\omega\lambda_\Delta/c$")
    ax.legend(fontsize=8, loc="lower right")
    _save(fig, path)


_PLOTTERS = {
    "eta-curve": plot_eta_curve,
    "epol-curve": plot_epol_curve,
    "dispersion": plot_dispersion,
}


def plot_table(command: str, rows, params: ModelParams, path) -> None:
    _PLOTTERS[command](rows, params, path)
