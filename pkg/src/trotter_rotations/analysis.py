"""n-scans, log-log exponent fits, and delimited output.

CSV rows follow one fixed schema (n, t, chi_n, beta_n, xi, tail_bound,
cert_value, family, gamma, C, L_max) with 17 significant digits, so identical
runs are byte-identical and values round-trip exactly through text.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateTimeError, InsufficientPointsError, QualityGateError
from .kinematics import Ordering, TrotterParams, effective_rotation, is_degenerate_time
from .states import FiniteSupport, PowerLawM0, PowerLawTop, SphericalState, StateLaw
from .trotter_error import (
    ErrorPoint,
    LowerBoundCert,
    cert_m0_from_beta,
    cert_top_from_beta,
    trotter_error_exact,
)

CSV_FIELDS = (
    "n", "t", "chi_n", "beta_n", "xi", "tail_bound",
    "cert_value", "family", "gamma", "C", "L_max",
)

FIT_FIELDS = ("slope", "intercept", "r_squared", "n_lo", "n_hi", "points_used")

#: Minimum points for a log-log fit.
MIN_FIT_POINTS = 3

#: Quality gate: a point enters a fit only if xi > GATE_FACTOR * tail_bound.
GATE_FACTOR = 10.0


@dataclass(frozen=True)
class CurveRow:
    point: ErrorPoint
    chi_n: float
    beta_n: float
    cert: LowerBoundCert | None


@dataclass(frozen=True)
class ErrorCurve:
    t: float
    law: StateLaw
    rows: tuple[CurveRow, ...]

    def __post_init__(self):
        ns = [r.point.n for r in self.rows]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError("curve points must have strictly increasing n")

    @property
    def points(self) -> list[ErrorPoint]:
        return [r.point for r in self.rows]


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float
    window: tuple[float, float]
    points_used: int


def geometric_grid(n_lo: int, n_hi: int, points: int | None = None) -> list[int]:
    """Strictly increasing integer grid, geometric; default 12 points/decade."""
    if not 1 <= n_lo <= n_hi:
        raise ValueError("need 1 <= n_lo <= n_hi")
    if n_lo == n_hi:
        return [n_lo]
    decades = math.log10(n_hi / n_lo)
    if points is None:
        points = max(2, int(round(12 * decades)) + 1)
    if points < 2:
        raise ValueError("points must be >= 2")
    raw = np.geomspace(n_lo, n_hi, points)
    grid = sorted({int(round(v)) for v in raw})
    return grid


def scan_n(
    state: SphericalState,
    t: float,
    n_grid,
    ordering: Ordering = Ordering.Y_THEN_X,
    allow_degenerate: bool = False,
) -> ErrorCurve:
    """One ErrorPoint per n, with certificates attached for power-law laws."""
    if is_degenerate_time(t) and not allow_degenerate:
        raise DegenerateTimeError(
            f"t={t} is within 1e-9 of a zero of sin(t/sqrt(2)); "
            "pass allow_degenerate to scan anyway"
        )
    law = state.law
    rows = []
    for n in n_grid:
        n = int(n)
        point = trotter_error_exact(state, t, n, ordering)
        eff = effective_rotation(TrotterParams(t, n, ordering))
        cert = None
        if not point.degenerate_t:
            if isinstance(law, PowerLawM0):
                cert = cert_m0_from_beta(law.gamma, law.C, eff.euler.beta, n, law.L_max)
            elif isinstance(law, PowerLawTop):
                cert = cert_top_from_beta(law.gamma, law.C, eff.euler.beta, n, law.L_max)
        rows.append(CurveRow(point, eff.chi_n, eff.euler.beta, cert))
    return ErrorCurve(t, law, tuple(rows))


def gated_rows(curve: ErrorCurve, window: tuple[float, float]) -> tuple[list[CurveRow], list[CurveRow]]:
    """Split window rows into (usable, gate-violating) by the quality gate."""
    n_lo, n_hi = window
    in_window = [r for r in curve.rows if n_lo <= r.point.n <= n_hi]
    usable = [r for r in in_window if r.point.xi > GATE_FACTOR * r.point.tail_bound and r.point.xi > 0.0]
    return usable, [r for r in in_window if r not in usable]


def fit_exponent(curve: ErrorCurve, window: tuple[float, float]) -> FitResult:
    """Least squares of log xi on log n over the gated window."""
    usable, rejected = gated_rows(curve, window)
    if len(usable) < MIN_FIT_POINTS:
        offenders = ", ".join(
            f"n={r.point.n} (xi={r.point.xi:.3g}, tail={r.point.tail_bound:.3g})"
            for r in rejected
        )
        if rejected:
            raise QualityGateError(
                f"only {len(usable)} window points pass the quality gate "
                f"xi > {GATE_FACTOR:g} * tail_bound; rejected: {offenders}"
            )
        raise InsufficientPointsError(
            f"window {window} holds {len(usable)} usable points; need {MIN_FIT_POINTS}"
        )
    logn = np.log([r.point.n for r in usable])
    logxi = np.log([r.point.xi for r in usable])
    slope, intercept = np.polyfit(logn, logxi, 1)
    resid = logxi - (slope * logn + intercept)
    ss_res = float(resid @ resid)
    ss_tot = float(((logxi - logxi.mean()) ** 2).sum())
    r_sq = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return FitResult(float(slope), float(intercept), r_sq, (window[0], window[1]), len(usable))


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------

def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _law_columns(law: StateLaw) -> tuple:
    if isinstance(law, PowerLawM0):
        return ("M0", law.gamma, law.C, law.L_max)
    if isinstance(law, PowerLawTop):
        return ("Top", law.gamma, law.C, law.L_max)
    return ("", None, None, None)


def curve_records(curve: ErrorCurve) -> list[dict]:
    family, gamma, C, L_max = _law_columns(curve.law)
    records = []
    for r in curve.rows:
        records.append({
            "n": r.point.n,
            "t": curve.t,
            "chi_n": r.chi_n,
            "beta_n": r.beta_n,
            "xi": r.point.xi,
            "tail_bound": r.point.tail_bound,
            "cert_value": r.cert.value if r.cert is not None else None,
            "family": family,
            "gamma": gamma,
            "C": C,
            "L_max": L_max,
        })
    return records


def curve_to_csv(curve: ErrorCurve) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for rec in curve_records(curve):
        writer.writerow([_fmt(rec[f]) for f in CSV_FIELDS])
    return buf.getvalue()


def curve_to_json(curve: ErrorCurve) -> str:
    return json.dumps({"rows": curve_records(curve)}, indent=2)


def fit_to_csv(fit: FitResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FIT_FIELDS)
    writer.writerow([
        _fmt(fit.slope), _fmt(fit.intercept), _fmt(fit.r_squared),
        _fmt(fit.window[0]), _fmt(fit.window[1]), _fmt(fit.points_used),
    ])
    return buf.getvalue()


def fit_to_json(fit: FitResult) -> str:
    return json.dumps({
        "slope": fit.slope,
        "intercept": fit.intercept,
        "r_squared": fit.r_squared,
        "n_lo": fit.window[0],
        "n_hi": fit.window[1],
        "points_used": fit.points_used,
    }, indent=2)


def emit(text: str, path: str | None) -> None:
    """Write rendered output to a file, or stdout when path is None."""
    if path is None:
        print(text, end="")
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def read_curve_csv(path: str) -> ErrorCurve:
    """Rebuild a curve from the CSV schema (inverse of curve_to_csv)."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        raw = list(reader)
    if not raw:
        raise ValueError(f"{path} is empty")
    first = raw[0]
    family = first["family"]
    if family == "M0":
        law: StateLaw = PowerLawM0(float(first["C"]), float(first["gamma"]), int(first["L_max"]))
    elif family == "Top":
        law = PowerLawTop(float(first["C"]), float(first["gamma"]), int(first["L_max"]))
    else:
        law = FiniteSupport()
    rows = []
    for rec in raw:
        n = int(rec["n"])
        point = ErrorPoint(n, float(rec["xi"]), float(rec["tail_bound"]),
                           is_degenerate_time(float(rec["t"])))
        cert = None
        if rec["cert_value"]:
            cert = LowerBoundCert(n, float(rec["cert_value"]), family, 0, False)
        rows.append(CurveRow(point, float(rec["chi_n"]), float(rec["beta_n"]), cert))
    return ErrorCurve(float(first["t"]), law, tuple(rows))
