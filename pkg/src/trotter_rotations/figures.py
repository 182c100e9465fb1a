"""Log-log convergence figures rendered next to the delimited output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")  # file rendering only; no display in scan pipelines

import matplotlib.pyplot as plt
import numpy as np

from .analysis import ErrorCurve, FitResult, _law_columns


def _law_label(curve: ErrorCurve) -> str:
    family, gamma, C, L_max = _law_columns(curve.law)
    if family:
        return f"{family} family, gamma={gamma:g}, C={C:g}, L_max={L_max:g}"
    return "finite-support state"


def plot_error_curve(
    curve: ErrorCurve,
    path: str,
    fit: FitResult | None = None,
    title: str | None = None,
    dpi: int = 150,
) -> None:
    """Render xi_n vs n (log-log) with certificate and fit overlays."""
    n = np.array([r.point.n for r in curve.rows], dtype=float)
    xi = np.array([r.point.xi for r in curve.rows])
    tail = np.array([r.point.tail_bound for r in curve.rows])

    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    if len(n) > 0:
        ax.loglog(n, xi, "o-", ms=4, lw=1.0, color="tab:blue", label=r"$\xi_n$")
        certs = [r.cert.value if r.cert is not None else np.nan for r in curve.rows]
        if np.isfinite(certs).any():
            ax.loglog(n, certs, "s--", ms=3, lw=1.0, color="tab:green",
                      label="lower-bound certificate")
        if tail.max() > 0:
            ax.loglog(n, tail, ":", lw=1.0, color="tab:red", label="truncation tail bound")
        # 1/n guide anchored at the first point, for rate comparison by eye.
        if xi[0] > 0:
            ax.loglog(n, xi[0] * (n / n[0]) ** -1.0, "--", lw=0.8, color="gray",
                      label=r"$n^{-1}$ guide")
    if fit is not None:
        span = np.array([fit.window[0], fit.window[1]], dtype=float)
        ax.loglog(span, np.exp(fit.intercept) * span ** fit.slope, "-",
                  lw=1.6, color="black", alpha=0.7,
                  label=f"fit slope {fit.slope:+.3f} (r$^2$={fit.r_squared:.4f})")

    ax.set_xlabel("Trotter steps $n$")
    ax.set_ylabel(r"Trotter error $\xi_n$")
    ax.set_title(title or f"t={curve.t:g}, {_law_label(curve)}", fontsize=10)
    ax.grid(True, which="both", alpha=0.25)
    if ax.get_legend_handles_labels()[0]:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)


def sibling_figure_path(output_path: str | None, default_stem: str) -> str:
    """PNG path next to the delimited output (or a cwd default)."""
    if output_path is None:
        return f"{default_stem}.png"
    root = output_path.rsplit(".", 1)[0] if "." in output_path else output_path
    return f"{root}.png"
