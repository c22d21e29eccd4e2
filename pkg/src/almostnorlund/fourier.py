"""Periodic signals, Fourier and conjugate partial sums, and the conjugate function.

Conventions
-----------
The Fourier series of a 2pi-periodic ``f`` is
``a0/2 + sum_k (a_k cos kx + b_k sin kx)``. Conjugate partial sums are taken as

    s~_n(x) = sum_{k=1}^{n} (a_k sin kx - b_k cos kx),

the sign for which ``s~_n`` converges to the principal-value conjugate

    f~(x) = -(1/2pi) p.v. int_0^pi psi_x(t) cot(t/2) dt,
    psi_x(t) = f(x+t) - f(x-t).

With this sign ``cos x`` maps to ``sin x`` and ``sin x`` to ``-cos x``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from . import _kernels
from .errors import AliasingError, ParameterError, PVDivergenceError, TruncationOrderError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class FourierExpansion:
    """Coefficients ``a0``, ``a_1..a_K``, ``b_1..b_K`` of a periodic signal."""

    a0: float
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float).ravel()
        b = np.asarray(self.b, dtype=float).ravel()
        if a.shape != b.shape:
            raise ParameterError(f"len(a)={len(a)} differs from len(b)={len(b)}")
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def K(self) -> int:
        return len(self.a)

    @classmethod
    def zeros(cls, K: int, a0: float = 0.0) -> "FourierExpansion":
        return cls(a0, np.zeros(K), np.zeros(K))

    def truncate(self, K: int) -> "FourierExpansion":
        """Return the expansion cut (or zero-padded) to order ``K``."""
        a = np.zeros(K)
        b = np.zeros(K)
        m = min(K, self.K)
        a[:m] = self.a[:m]
        b[:m] = self.b[:m]
        return FourierExpansion(self.a0, a, b)

    def evaluate(self, x):
        """Value of the full finite series at ``x``."""
        return partial_sum(self, self.K, x)

    def conjugate(self, x):
        """Conjugate series of full order at ``x``."""
        return conjugate_partial_sum(self, self.K, x)

    def __eq__(self, other):
        if not isinstance(other, FourierExpansion):
            return NotImplemented
        return (self.a0 == other.a0 and np.array_equal(self.a, other.a)
                and np.array_equal(self.b, other.b))

    __hash__ = None


@dataclass(frozen=True)
class Signal:
    """A 2pi-periodic real function given by a vectorized evaluator.

    ``exact_expansion(K)`` and ``exact_conjugate(x)``, when present, give the
    analytic Fourier coefficients and conjugate function; ``degree`` is set
    for trigonometric polynomials. ``jumps`` lists discontinuity locations in
    ``[0, 2pi)``.
    """

    evaluator: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    description: str = ""
    known_alpha: float | None = None
    exact_expansion: Callable[[int], FourierExpansion] | None = field(default=None, repr=False)
    exact_conjugate: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)
    degree: int | None = None
    jumps: tuple = ()

    def __post_init__(self):
        if self.known_alpha is not None and not 0 < self.known_alpha <= 1:
            raise ParameterError(f"known_alpha must lie in (0, 1], got {self.known_alpha}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.asarray(self.evaluator(x), dtype=float) * np.ones(x.shape)

    def __add__(self, other: "Signal") -> "Signal":
        return combine([(1.0, self), (1.0, other)])

    def scaled(self, c: float) -> "Signal":
        return combine([(c, self)])


def combine(terms) -> "Signal":
    """Linear combination ``sum c_i f_i`` of signals, keeping exact data if all have it."""
    terms = [(float(c), f) for c, f in terms]
    exp_ok = all(f.exact_expansion is not None for _, f in terms)
    conj_ok = all(f.exact_conjugate is not None for _, f in terms)
    degs = [f.degree for _, f in terms]

    def ev(x):
        return sum(c * f(x) for c, f in terms)

    def ex(K):
        parts = [f.exact_expansion(K) for _, f in terms]
        return FourierExpansion(sum(c * e.a0 for (c, _), e in zip(terms, parts)),
                                sum(c * e.a for (c, _), e in zip(terms, parts)),
                                sum(c * e.b for (c, _), e in zip(terms, parts)))

    def cj(x):
        return sum(c * f.exact_conjugate(x) for c, f in terms)

    return Signal(
        ev,
        " + ".join(f"{c:g}*{f.description}" for c, f in terms),
        None,
        ex if exp_ok else None,
        cj if conj_ok else None,
        max(degs) if all(d is not None for d in degs) else None,
        tuple(sorted({j for _, f in terms for j in f.jumps})),
    )


def trig_polynomial(expansion: FourierExpansion, description: str = "") -> Signal:
    """Signal defined exactly by a finite expansion."""
    e = expansion
    return Signal(
        e.evaluate,
        description or f"trigpoly(K={e.K})",
        1.0,
        e.truncate,
        e.conjugate,
        e.K,
    )


# coefficients and partial sums ------------------------------------------------


@lru_cache(maxsize=8)
def _gauss_legendre(order: int):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _composite_nodes(breaks, order):
    """Gauss-Legendre nodes/weights over consecutive intervals of ``breaks``."""
    g, w = _gauss_legendre(order)
    lo, hi = np.asarray(breaks[:-1]), np.asarray(breaks[1:])
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = (mid[:, None] + half[:, None] * g[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def fourier_coefficients(f: Signal, K: int, grid_points: int | None = None,
                         order: int = 8) -> FourierExpansion:
    """Fourier coefficients of ``f`` up to order ``K`` by periodic quadrature.

    Uses the trapezoid rule on ``grid_points`` equispaced nodes, which is exact
    for trigonometric polynomials of degree below ``grid_points/2``. Signals
    declaring ``jumps`` are instead integrated piecewise with composite
    Gauss-Legendre rules (``order`` nodes per panel, about ``grid_points``
    nodes in total) split at the discontinuities.

    Raises
    ------
    AliasingError
        If ``grid_points < 4 K``.
    """
    if K < 0:
        raise ParameterError(f"K must be nonnegative, got {K}")
    if grid_points is None:
        grid_points = max(4096, 4 * K)
    if grid_points < 4 * K:
        raise AliasingError(f"grid_points={grid_points} < 4*K={4 * K}")
    if f.jumps:
        jumps = sorted({float(j) % TWO_PI for j in f.jumps} - {0.0})
        pieces = np.array([0.0, *jumps, TWO_PI])
        total = max(grid_points // order, len(pieces) - 1)
        counts = np.maximum(1, np.round(total * np.diff(pieces) / TWO_PI).astype(int))
        breaks = np.concatenate(
            [np.linspace(a, b, c + 1)[:-1] for a, b, c in zip(pieces[:-1], pieces[1:], counts)]
            + [[TWO_PI]])
        x, wts = _composite_nodes(breaks, order)
        wts = wts / math.pi
    else:
        x = TWO_PI * np.arange(grid_points) / grid_points
        wts = np.full(grid_points, 2.0 / grid_points)
    fx = f(x) * wts
    a = np.empty(K)
    b = np.empty(K)
    chunk = max(1, 4_000_000 // len(x))
    for start in range(0, K, chunk):
        k = np.arange(start + 1, min(K, start + chunk) + 1)
        kx = np.outer(k, x)
        a[start:start + len(k)] = np.cos(kx) @ fx
        b[start:start + len(k)] = np.sin(kx) @ fx
    return FourierExpansion(float(fx.sum()), a, b)


def _check_order(e: FourierExpansion, n: int):
    if n < 0:
        raise ParameterError(f"n must be nonnegative, got {n}")
    if n > e.K:
        raise TruncationOrderError(f"n={n} exceeds expansion order K={e.K}")


def partial_sum(e: FourierExpansion, n: int, x):
    """``s_n(x) = a0/2 + sum_{k<=n} (a_k cos kx + b_k sin kx)``."""
    _check_order(e, n)
    c = np.concatenate([[0.5 * e.a0], e.a[:n]])
    s = np.concatenate([[0.0], e.b[:n]])
    out = _kernels.trig_eval(c, s, np.asarray(x, dtype=float))
    return out if np.ndim(x) else float(out)


def conjugate_partial_sum(e: FourierExpansion, n: int, x):
    """``s~_n(x) = sum_{k<=n} (a_k sin kx - b_k cos kx)``; zero for ``n = 0``."""
    _check_order(e, n)
    c = np.concatenate([[0.0], -e.b[:n]])
    s = np.concatenate([[0.0], e.a[:n]])
    out = _kernels.trig_eval(c, s, np.asarray(x, dtype=float))
    return out if np.ndim(x) else float(out)


def psi_difference(f: Signal, x, t):
    """Symmetric difference ``f(x + t) - f(x - t)``."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    out = f(x + t) - f(x - t)
    return out if out.ndim else float(out)


# principal value ----------------------------------------------------------------


@dataclass(frozen=True)
class PrincipalValueSpec:
    """Cutoff and quadrature settings for the conjugate-function integral.

    ``h`` is the largest cutoff; with ``refinement="geometric"`` the integral
    is also taken at ``h / 2**j`` for ``j < levels`` and extrapolated to zero.
    ``panels`` uniform Gauss-Legendre panels of ``order`` nodes cover
    ``[pi/panels, pi]``; dyadically graded panels cover ``[h, pi/panels]``.
    """

    h: float = 1e-6
    panels: int = 2048
    refinement: str = "geometric"
    levels: int = 5
    order: int = 8

    def __post_init__(self):
        if not self.h > 0:
            raise ParameterError(f"h must be positive, got {self.h}")
        if self.panels < 16:
            raise ParameterError(f"panels must be at least 16, got {self.panels}")
        if self.refinement not in ("fixed", "geometric"):
            raise ParameterError(f"unknown refinement {self.refinement!r}")
        if self.levels < 1 or self.order < 1:
            raise ParameterError("levels and order must be positive")


@dataclass(frozen=True)
class PVResult:
    """Principal-value conjugate at each ``x`` with its extrapolation error estimate.

    ``raw[:, j]`` is the truncated integral at cutoff ``cutoffs[j]``.
    """

    value: np.ndarray
    error: np.ndarray
    cutoffs: np.ndarray
    raw: np.ndarray


def _pv_nodes(spec: PrincipalValueSpec):
    levels = spec.levels if spec.refinement == "geometric" else 1
    hs = spec.h * 2.0 ** -np.arange(levels)
    t_g = math.pi / spec.panels
    if spec.h < t_g:
        graded = [t_g]
        while graded[-1] / 2 > spec.h:
            graded.append(graded[-1] / 2)
        graded.append(spec.h)
        breaks = np.concatenate([graded[::-1], np.linspace(t_g, math.pi, spec.panels)[1:]])
    else:
        breaks = np.linspace(spec.h, math.pi, spec.panels + 1)
    main = _composite_nodes(breaks, spec.order)
    pieces = [_composite_nodes([hs[j + 1], hs[j]], spec.order) for j in range(levels - 1)]
    return hs, main, pieces


def _pv_integrals(f, x, nodes, weights, chunk_size=2_000_000):
    weight = weights / np.tan(0.5 * nodes)
    out = np.empty(len(x))
    step = max(1, chunk_size // max(len(nodes), 1))
    for i in range(0, len(x), step):
        xs = x[i:i + step, None]
        out[i:i + step] = (f(xs + nodes) - f(xs - nodes)) @ weight
    return out


def conjugate_function_pv(f: Signal, x, spec: PrincipalValueSpec | None = None) -> PVResult:
    """Conjugate function by principal-value quadrature.

    Computes ``-(1/2pi) int_h^pi psi_x(t) cot(t/2) dt`` for the cutoffs
    ``h_j = h 2**-j`` and extrapolates ``h -> 0`` assuming the truncation
    error behaves like ``C h**gamma``; ``gamma`` is estimated from the last
    three cutoffs (``gamma = 1`` for smooth signals). ``error`` is the change
    between the last two extrapolations.

    Raises
    ------
    PVDivergenceError
        If the increments between successive cutoffs do not shrink, as happens
        at a jump of ``f``.
    """
    spec = spec or PrincipalValueSpec()
    if f.jumps:
        warnings.warn(f"{f.description}: principal value of a signal with jumps; "
                      "the conjugate diverges at the jump points", RuntimeWarning,
                      stacklevel=2)
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    hs, main, pieces = _pv_nodes(spec)
    coef = -1.0 / TWO_PI
    raw = np.empty((len(x), len(hs)))
    raw[:, 0] = coef * _pv_integrals(f, x, *main)
    for j, piece in enumerate(pieces):
        raw[:, j + 1] = raw[:, j] + coef * _pv_integrals(f, x, *piece)
    value, error = _extrapolate(raw)
    if scalar:
        return PVResult(value[:1], error[:1], hs, raw)
    return PVResult(value, error, hs, raw)


def _extrapolate(raw):
    levels = raw.shape[1]
    last = raw[:, -1]
    if levels == 1:
        return last.copy(), np.full(len(last), np.nan)
    d = np.diff(raw, axis=1)
    noise = 1e-13 * (1.0 + np.max(np.abs(raw), axis=1))
    if levels == 2:
        corr = d[:, -1]
        return last + corr, np.abs(corr)
    prev, cur = d[:, -2], d[:, -1]
    diverging = (np.abs(cur) >= 0.99 * np.abs(d[:, 0])) & (np.abs(cur) > noise)
    if np.any(diverging):
        bad = int(np.flatnonzero(diverging)[0])
        raise PVDivergenceError(
            f"cutoff increments do not shrink at point index {bad}: {d[bad].tolist()}")
    settled = np.abs(prev) > noise
    rho = np.where(settled, np.clip(cur / np.where(settled, prev, 1.0), 0.0, 0.9), 0.0)
    value = last + cur * rho / (1.0 - rho)
    if levels >= 4:
        pp = d[:, -3]
        ok = np.abs(pp) > noise
        rho_p = np.where(ok, np.clip(prev / np.where(ok, pp, 1.0), 0.0, 0.9), 0.0)
        previous = raw[:, -2] + prev * rho_p / (1.0 - rho_p)
        error = np.abs(value - previous)
    else:
        error = np.abs(cur * rho / (1.0 - rho))
    return value, error
