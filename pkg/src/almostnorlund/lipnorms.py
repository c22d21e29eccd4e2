"""L_r norms on [0, 2pi), translation moduli and Lipschitz-class estimates."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ParameterError
from .fourier import Signal, fourier_coefficients, partial_sum

TWO_PI = 2.0 * math.pi
INF = math.inf


@dataclass(frozen=True)
class LipClassSpec:
    """Class Lip(alpha, r); ``r = inf`` is the sup-norm class Lip alpha."""

    alpha: float
    r: float = INF

    def __post_init__(self):
        if not 0 < self.alpha <= 1:
            raise ParameterError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not self.r >= 1:
            raise ParameterError(f"r must be at least 1, got {self.r}")

    @property
    def conjugate_exponent(self) -> float:
        """``s`` with ``1/r + 1/s = 1``."""
        if self.r == 1:
            return INF
        if self.r == INF:
            return 1.0
        return self.r / (self.r - 1.0)

    @property
    def rate_exponent(self) -> float:
        """Exponent ``1/r - alpha`` of the normalizer in the error bound."""
        return (0.0 if self.r == INF else 1.0 / self.r) - self.alpha


def grid(grid_points: int) -> np.ndarray:
    """Half-cell shifted equispaced nodes on [0, 2pi)."""
    return TWO_PI * (np.arange(grid_points) + 0.5) / grid_points


def norm(g: Callable, r: float, grid_points: int = 4096) -> float:
    """``(int_0^{2pi} |g|^r dx)^(1/r)``, or ``max |g|`` for ``r = inf``.

    Finite ``r`` uses the periodic trapezoid rule on :func:`grid`. The sup
    norm takes the grid maximum and then resamples 64 points across the two
    cells around it.
    """
    if not r >= 1:
        raise ParameterError(f"r must be at least 1, got {r}")
    if grid_points < 64:
        raise ParameterError(f"grid_points must be at least 64, got {grid_points}")
    x = grid(grid_points)
    vals = np.abs(np.asarray(g(x), dtype=float))
    if r == INF:
        i = int(np.argmax(vals))
        dx = TWO_PI / grid_points
        local = x[i] + np.linspace(-dx, dx, 65)
        return float(max(vals[i], np.max(np.abs(g(local)))))
    scale = float(np.max(vals))
    if scale == 0.0:
        return 0.0
    return float(scale * (np.sum((vals / scale) ** r) * TWO_PI / grid_points) ** (1.0 / r))


@dataclass(frozen=True)
class LipReport:
    """Log-log fit of the translation modulus ``omega(t)`` against ``t``.

    ``alpha_hat`` and ``C_hat`` are None for a degenerate (constant) signal.
    """

    t: np.ndarray
    omega: np.ndarray
    alpha_hat: float | None
    C_hat: float | None
    passed: bool
    degenerate: bool = False

    def summary(self) -> dict:
        return {"alpha_hat": self.alpha_hat, "C_hat": self.C_hat, "pass": self.passed}

    def rows(self):
        return [(float(t), float(w)) for t, w in zip(self.t, self.omega)]


def default_t_samples() -> np.ndarray:
    return math.pi * 2.0 ** -np.arange(2, 13)


def modulus(f: Callable, t: float, r: float, grid_points: int = 4096) -> float:
    """``omega(t) = || f(. + t) - f(.) ||_r``."""
    return norm(lambda x: f(x + t) - f(x), r, grid_points)


def lip_membership_estimate(f: Signal, spec: LipClassSpec, t_samples=None,
                            grid_points: int = 16384, threshold: float = 0.1,
                            floor: float = 1e-14) -> LipReport:
    """Estimate the Lipschitz order of ``f`` in the ``L_r`` sense of ``spec``.

    ``alpha_hat`` is the least-squares slope of ``log omega`` against
    ``log t``; the class is accepted when ``alpha_hat >= spec.alpha - threshold``.
    Moduli below ``floor`` are treated as zero; if all vanish the report is
    degenerate and passes.
    """
    t = default_t_samples() if t_samples is None else np.asarray(t_samples, dtype=float)
    if np.any(t <= 0):
        raise ParameterError("t_samples must be positive")
    if len(t) < 2 or np.log10(t.max() / t.min()) < 2 - 1e-9:
        raise ParameterError("t_samples must span at least two decades")
    omega = np.array([modulus(f, ti, spec.r, grid_points) for ti in t])
    keep = omega > floor
    if not np.any(keep):
        return LipReport(t, omega, None, None, True, True)
    if keep.sum() < 2:
        raise ParameterError("fewer than two nonzero moduli; cannot fit")
    slope, intercept = np.polyfit(np.log(t[keep]), np.log(omega[keep]), 1)
    return LipReport(t, omega, float(slope), float(math.exp(intercept)),
                     bool(slope >= spec.alpha - threshold))


def partial_sum_error(f: Signal, n: int, r: float, grid_points: int = 4096,
                      coefficient_grid: int | None = None) -> float:
    """``|| s_n(f) - f ||_r``, an upper bound for the best approximation E_n(f).

    This does not minimize over trigonometric polynomials; it only evaluates
    the Fourier partial sum.
    """
    if f.exact_expansion is not None:
        e = f.exact_expansion(n)
    else:
        e = fourier_coefficients(f, n, coefficient_grid)
    return norm(lambda x: partial_sum(e, n, x) - f(x), r, grid_points)
