"""Empirical checks of the O(R_n^(1/r - alpha)) error bound.

``rate_experiment`` measures ``|| f~ - t~_n ||_r`` over a range of ``n`` and
fits the log-log slope against a normalizer (``R_n``, ``P_n`` or ``Q_n``).
The bound is one-sided, so a report passes when the fitted slope is at most
``theoretical_slope + slope_tolerance``.

``condition_integrals`` evaluates the two integral conditions on
``psi_x(t) = f(x+t) - f(x-t)`` split at ``t = pi/R_n``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientDataError, ParameterError
from .fourier import (
    PrincipalValueSpec,
    Signal,
    _composite_nodes,
    conjugate_function_pv,
    fourier_coefficients,
)
from .lipnorms import INF, LipClassSpec, norm
from .means import MethodSpec, conjugate_transform
from .weights import WeightSequence, build_convolution

DEGENERATE_ERROR = 1e-10
ROUNDOFF_FLOOR = 1e-12
CSV_COLUMNS = ("n", "R_n", "P_n", "Q_n", "error", "log_error")
NORMALIZERS = ("R", "P", "Q")


# condition integrals ----------------------------------------------------------------


@dataclass(frozen=True)
class CondIntegralSpec:
    """Parameters of the two conditions; ``s`` is derived from ``r``."""

    alpha: float
    r: float
    delta: float = 0.25
    x: float = 1.0
    s: float = field(init=False)

    def __post_init__(self):
        if not 0 < self.alpha <= 1:
            raise ParameterError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not self.r >= 1:
            raise ParameterError(f"r must be at least 1, got {self.r}")
        if not math.isfinite(self.delta):
            raise ParameterError("delta must be finite")
        s = INF if self.r == 1 else (1.0 if self.r == INF else self.r / (self.r - 1.0))
        object.__setattr__(self, "s", s)


def _graded_nodes(a, b, panels, order, depth=60):
    """Nodes on [a, b]; dyadic panels toward a = 0 resolve the endpoint singularity."""
    if a == 0.0:
        width = b / panels
        dyadic = width * 2.0 ** -np.arange(depth + 1)
        breaks = np.concatenate([dyadic[::-1], np.linspace(width, b, panels)[1:]])
    else:
        breaks = np.linspace(a, b, panels + 1)
    return _composite_nodes(breaks, order)


def condition_integrals(f: Signal, spec: CondIntegralSpec, R_n: float, panels: int = 2048,
                        order: int = 8) -> tuple[float, float]:
    """Return ``(I_inner, I_outer)``.

    ``I_inner = (int_0^{pi/R_n} |psi(t)|^r t^-alpha dt)^(1/r)`` and
    ``I_outer = (int_{pi/R_n}^{pi} t^-delta |psi(t)|^r t^-alpha dt)^(1/r)``.
    For ``r = inf`` the limits ``ess sup |psi|`` over each range are returned.
    """
    if not R_n > 0:
        raise ParameterError(f"R_n must be positive, got {R_n}")
    split = math.pi / R_n
    if split >= math.pi:
        raise ParameterError(f"R_n must exceed 1 so that pi/R_n < pi, got {R_n}")
    out = []
    for a, b, extra in ((0.0, split, 0.0), (split, math.pi, spec.delta)):
        t, w = _graded_nodes(a, b, panels, order)
        psi = np.abs(f(spec.x + t) - f(spec.x - t))
        if spec.r == INF:
            out.append(float(np.max(psi)))
            continue
        scale = float(np.max(psi))
        if scale == 0.0:
            out.append(0.0)
            continue
        val = np.sum(w * (psi / scale) ** spec.r * t ** (-spec.alpha - extra))
        out.append(float(scale * val ** (1.0 / spec.r)))
    return out[0], out[1]


# rate experiments -------------------------------------------------------------------


@dataclass(frozen=True)
class RateReport:
    """Errors ``|| f~ - t~_n ||_r`` and the fitted decay slope.

    ``theoretical_slope`` is ``1/r - alpha`` (``-alpha`` in the sup norm). For
    a degenerate report (largest error below 1e-10) no slope is fitted and the
    report passes.
    """

    n_values: tuple
    R_values: tuple
    P_values: tuple
    Q_values: tuple
    errors: tuple
    fitted_slope: float | None
    theoretical_slope: float
    passed: bool
    degenerate: bool
    normalizer: str = "R"
    slope_tolerance: float = 0.15
    label: str = ""
    method: str = ""
    signal: str = ""
    norm_r: float = 2.0

    @property
    def normalizer_values(self) -> tuple:
        return {"R": self.R_values, "P": self.P_values, "Q": self.Q_values}[self.normalizer]

    def rows(self):
        for n, R, P, Q, err in zip(self.n_values, self.R_values, self.P_values, self.Q_values,
                                   self.errors):
            yield (n, R, P, Q, err, math.log(err) if err > 0 else -math.inf)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows():
            writer.writerow([row[0]] + [repr(float(v)) for v in row[1:]])
        return buf.getvalue()

    def summary(self) -> dict:
        return {
            "label": self.label,
            "signal": self.signal,
            "method": self.method,
            "norm_r": "inf" if self.norm_r == INF else self.norm_r,
            "normalizer": self.normalizer,
            "fitted_slope": self.fitted_slope,
            "theoretical_slope": self.theoretical_slope,
            "slope_tolerance": self.slope_tolerance,
            "degenerate": self.degenerate,
            "pass": self.passed,
        }

    def summary_line(self) -> str:
        slope = "none" if self.fitted_slope is None else repr(self.fitted_slope)
        return f"{slope},{self.theoretical_slope!r},{str(self.passed).lower()}"


def fit_slope(normalizer, errors, floor: float = ROUNDOFF_FLOOR) -> float:
    """Least-squares slope of ``log error`` against ``log normalizer``.

    Errors below ``floor`` are dropped. Needs at least three distinct
    normalizer values among the kept points.
    """
    x = np.asarray(normalizer, dtype=float)
    y = np.asarray(errors, dtype=float)
    keep = y >= floor
    if len(np.unique(x[keep])) < 3:
        raise InsufficientDataError(
            f"need three distinct normalizer values above the round-off floor, got "
            f"{len(np.unique(x[keep]))}")
    if np.any(x[keep] <= 0):
        raise InsufficientDataError("normalizer values must be positive to take logs")
    slope, _ = np.polyfit(np.log(x[keep]), np.log(y[keep]), 1)
    return float(slope)


def reference_conjugate(f: Signal, pv: PrincipalValueSpec | None = None):
    """Callable giving ``f~``: exact when known, otherwise principal-value quadrature."""
    if f.exact_conjugate is not None:
        return f.exact_conjugate
    pv = pv or PrincipalValueSpec()

    def conj(x):
        x = np.asarray(x, dtype=float)
        return conjugate_function_pv(f, x.ravel(), pv).value.reshape(x.shape)

    return conj


def rate_experiment(f: Signal, spec: MethodSpec, lip: LipClassSpec, n_values,
                    x_grid: int = 16384, slope_tolerance: float = 0.15,
                    normalizer: str = "R", coefficient_grid: int | None = None,
                    pv: PrincipalValueSpec | None = None, label: str = "") -> RateReport:
    """Measure and fit the decay of ``|| f~ - t~_n ||_{lip.r}`` over ``n_values``.

    Coefficients and the reference conjugate come from the signal's exact data
    when available; otherwise from quadrature (``coefficient_grid``) and the
    principal-value integral (``pv``).
    """
    if normalizer not in NORMALIZERS:
        raise ParameterError(f"normalizer must be one of {NORMALIZERS}, got {normalizer!r}")
    n_values = [int(n) for n in n_values]
    if any(b <= a for a, b in zip(n_values, n_values[1:])) or not n_values or n_values[0] < 0:
        raise ParameterError("n_values must be nonnegative and strictly increasing")
    table = build_convolution(spec.p, spec.q, n_values[-1])
    picked = {"R": table.R, "P": table.P, "Q": table.Q}[normalizer][n_values]
    if len(np.unique(picked)) < 3:
        raise InsufficientDataError(
            f"fewer than three distinct {normalizer}_n values over n={n_values}")
    shift = spec.r_shift if spec.mode == "almost" else 0
    order = n_values[-1] + shift
    if f.exact_expansion is not None:
        e = f.exact_expansion(order)
    else:
        e = fourier_coefficients(f, order, coefficient_grid)
    conj = reference_conjugate(f, pv)
    errors = []
    for n in n_values:
        err = norm(lambda x, n=n: conj(x) - conjugate_transform(e, spec, n, x), lip.r, x_grid)
        errors.append(err)
    theo = lip.rate_exponent
    degenerate = max(errors) < DEGENERATE_ERROR
    if degenerate:
        slope, passed = None, True
    else:
        slope = fit_slope(picked, errors)
        passed = slope <= theo + slope_tolerance
    return RateReport(
        n_values=tuple(n_values),
        R_values=tuple(float(v) for v in table.R[n_values]),
        P_values=tuple(float(v) for v in table.P[n_values]),
        Q_values=tuple(float(v) for v in table.Q[n_values]),
        errors=tuple(float(v) for v in errors),
        fitted_slope=slope,
        theoretical_slope=float(theo),
        passed=bool(passed),
        degenerate=bool(degenerate),
        normalizer=normalizer,
        slope_tolerance=slope_tolerance,
        label=label,
        method=spec.name,
        signal=f.description,
        norm_r=lip.r,
    )


PRESETS = ("sup_norm", "riesz_q1", "norlund_p1")


def corollary_suite(f: Signal, lip: LipClassSpec, n_values, p: WeightSequence | None = None,
                    q: WeightSequence | None = None, mode: str = "almost", r_shift: int = 0,
                    **kwargs) -> list[RateReport]:
    """Run the three special-case presets.

    ``sup_norm``: method ``(p, q)`` in the sup norm, target slope ``-alpha``.
    ``riesz_q1``: method ``(p, 1)`` in ``L_r``, fitted against ``P_n``.
    ``norlund_p1``: method ``(1, q)`` in ``L_r``, fitted against ``Q_n``.
    Extra keyword arguments go to :func:`rate_experiment`.
    """
    one = WeightSequence.ones()
    p = p or one
    q = q or one
    sup = LipClassSpec(lip.alpha, INF)
    return [
        rate_experiment(f, MethodSpec(p, q, mode, r_shift), sup, n_values, normalizer="R",
                        label="sup_norm", **kwargs),
        rate_experiment(f, MethodSpec(p, one, mode, r_shift), lip, n_values, normalizer="P",
                        label="riesz_q1", **kwargs),
        rate_experiment(f, MethodSpec(one, q, mode, r_shift), lip, n_values, normalizer="Q",
                        label="norlund_p1", **kwargs),
    ]


def summary_json(summaries) -> str:
    return json.dumps(summaries, indent=2, sort_keys=True) + "\n"
