"""Summability transforms of (conjugate) Fourier partial sums.

Two transforms are provided, with the weight orders exactly as they are
usually printed:

* generalized Norlund ``t_n = (1/R_n) sum_m p_{n-m} q_m s_m``;
* almost generalized Norlund
  ``t~_{n,r} = (1/R_n) sum_m p_m q_{n-m} s~_{m,r}`` with the shifted means
  ``s~_{m,r} = (1/(m+1)) sum_{j=r}^{m+r} s~_j``.

Note the reversed weight order of the second. With ``q == 1`` the almost
transform weights ``s~_{m,r}`` by ``p_m / P_n`` (the almost-Riesz form); the
ordinary one weights ``s_m`` by ``p_{n-m} / P_n`` (Norlund).

On expansions both transforms are evaluated in coefficient space: each is a
diagonal multiplier on the conjugate series, computed by the kernels.
"""
from __future__ import annotations

import math

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ParameterError, SingularityError, TruncationOrderError, ZeroNormalizerError
from .fourier import FourierExpansion
from .weights import WeightSequence

MODES = ("ordinary", "almost")


@dataclass(frozen=True)
class MethodSpec:
    """A summability method: weights ``p``, ``q``, mode and shift ``r_shift``."""

    p: WeightSequence
    q: WeightSequence
    mode: str = "almost"
    r_shift: int = 0
    name: str = field(default="")

    def __post_init__(self):
        if self.mode not in MODES:
            raise ParameterError(f"mode must be one of {MODES}, got {self.mode!r}")
        if int(self.r_shift) != self.r_shift or self.r_shift < 0:
            raise ParameterError(f"r_shift must be a nonnegative integer, got {self.r_shift}")
        object.__setattr__(self, "r_shift", int(self.r_shift))
        if not self.name:
            object.__setattr__(self, "name", derive_name(self.p, self.q))

    def weights(self, n: int) -> tuple[np.ndarray, float]:
        """Per-index weights for order ``n`` and the normalizer ``R_n``.

        ``w[m]`` multiplies ``s_m`` (ordinary) or ``s~_{m,r}`` (almost).
        """
        pv, qv = self.p.values(n), self.q.values(n)
        if self.mode == "almost":
            w = pv * qv[::-1]
        else:
            w = pv[::-1] * qv
        # same products as the convolution entry, and fsum is order independent
        R = math.fsum(w)
        if R == 0.0:
            raise ZeroNormalizerError(f"R_{n} = 0 for {self.name}")
        return w, R

    def with_mode(self, mode: str, r_shift: int | None = None) -> "MethodSpec":
        return MethodSpec(self.p, self.q, mode, self.r_shift if r_shift is None else r_shift,
                          self.name)


def derive_name(p: WeightSequence, q: WeightSequence) -> str:
    if p.kind == "cesaro" and q.is_unit:
        return f"(C,{p.spec[len('cesaro('):-1]})"
    if p.kind == "harmonic" and q.is_unit:
        return "harmonic (N,1/(n+1))"
    if q.is_unit:
        return f"Norlund (N,p) p={p.spec}"
    if p.is_unit:
        return f"Riesz (N-bar,q) q={q.spec}"
    return f"(N,p,q) p={p.spec} q={q.spec}"


def classic_method(name: str, param=None, mode: str = "almost", r_shift: int = 0) -> MethodSpec:
    """Classical specializations.

    ``norlund`` with ``p`` gives ``(p, 1)``, ``riesz`` with ``q`` gives
    ``(1, q)``, ``cesaro`` with order ``alpha > 0`` gives
    ``(cesaro(alpha), 1)`` and ``harmonic`` gives ``(1/(n+1), 1)``.
    """
    one = WeightSequence.ones()
    if name == "norlund":
        return MethodSpec(_as_weights(param), one, mode, r_shift)
    if name == "riesz":
        return MethodSpec(one, _as_weights(param), mode, r_shift)
    if name == "cesaro":
        if param is None or not float(param) > 0:
            raise ParameterError(f"cesaro order must be positive, got {param}")
        return MethodSpec(WeightSequence.cesaro(param), one, mode, r_shift)
    if name == "harmonic":
        return MethodSpec(WeightSequence.harmonic(), one, mode, r_shift)
    raise ParameterError(f"unknown classic method {name!r}")


def _as_weights(w):
    if isinstance(w, WeightSequence):
        return w
    if w is None:
        raise ParameterError("weight sequence required")
    return WeightSequence.parse(w)


# sequence transforms ------------------------------------------------------------


def generalized_norlund(p: WeightSequence, q: WeightSequence, s, n: int) -> float:
    """``(1/R_n) sum_{m<=n} p_{n-m} q_m s_m``; constants are reproduced exactly."""
    s = np.asarray(s, dtype=float)
    if len(s) < n + 1:
        raise ParameterError(f"need {n + 1} terms, got {len(s)}")
    w, R = MethodSpec(p, q, "ordinary").weights(n)
    return _anchored_mean(w, R, s[: n + 1])


def almost_mean(sigma, m: int, r_shift: int) -> float:
    """``(1/(m+1)) sum_{j=r}^{m+r} sigma_j``."""
    sigma = np.asarray(sigma, dtype=float)
    if m < 0 or r_shift < 0:
        raise ParameterError("m and r_shift must be nonnegative")
    if len(sigma) < m + r_shift + 1:
        raise IndexError(f"need {m + r_shift + 1} terms, got {len(sigma)}")
    block = sigma[r_shift: m + r_shift + 1]
    return _anchored_mean(np.ones(m + 1), float(m + 1), block)


def _anchored_mean(w, R, s):
    # measured from s[0] so that constant input returns exactly s[0]
    base = s[0]
    return float(base + np.dot(w, s - base) / R)


# expansion transforms -----------------------------------------------------------


def multipliers(spec: MethodSpec, n: int) -> np.ndarray:
    """Multipliers ``lam[k]`` with ``transform = sum_k lam[k] B~_k(x)``.

    ``B~_k(x) = a_k sin kx - b_k cos kx``. Length is ``n + r_shift + 1`` for the
    almost mode and ``n + 1`` for the ordinary mode.
    """
    if n < 0:
        raise ParameterError(f"n must be nonnegative, got {n}")
    w, R = spec.weights(n)
    if spec.mode == "almost":
        return _kernels.almost_multipliers(w / R, spec.r_shift)
    return _kernels.fsum_suffix(w) / R


def _apply(e: FourierExpansion, lam: np.ndarray, x):
    K = len(lam) - 1
    if K > e.K:
        raise TruncationOrderError(f"transform needs expansion order {K}, have {e.K}")
    c = np.concatenate([[0.0], -lam[1:] * e.b[:K]])
    s = np.concatenate([[0.0], lam[1:] * e.a[:K]])
    out = _kernels.trig_eval(c, s, np.asarray(x, dtype=float))
    return out if np.ndim(x) else float(out)


def almost_generalized_norlund(e: FourierExpansion, spec: MethodSpec, n: int, x):
    """Almost generalized Norlund mean of the conjugate series at ``x``.

    Requires ``spec.mode == "almost"`` and ``e.K >= n + spec.r_shift``.
    """
    if spec.mode != "almost":
        raise ParameterError("almost_generalized_norlund needs an almost-mode MethodSpec")
    return _apply(e, multipliers(spec, n), x)


def conjugate_norlund(e: FourierExpansion, spec: MethodSpec, n: int, x):
    """Ordinary generalized Norlund mean of the conjugate partial sums at ``x``."""
    return _apply(e, multipliers(spec.with_mode("ordinary"), n), x)


def conjugate_transform(e: FourierExpansion, spec: MethodSpec, n: int, x):
    """Dispatch on ``spec.mode``."""
    if spec.mode == "almost":
        return almost_generalized_norlund(e, spec, n, x)
    return conjugate_norlund(e, spec, n, x)


# kernel ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KernelSpec:
    m: int
    r_shift: int = 0

    def __post_init__(self):
        if self.m < 0 or self.r_shift < 0:
            raise ParameterError("m and r_shift must be nonnegative")


def conjugate_kernel(spec: KernelSpec, t):
    """``sum_{p=r}^{r+m} cos((p + 1/2) t) cos(p t / 2) / sin(t / 2)`` on ``(0, pi]``."""
    t = np.asarray(t, dtype=float)
    if np.any(t == 0):
        raise SingularityError("conjugate kernel is singular at t = 0")
    p = np.arange(spec.r_shift, spec.r_shift + spec.m + 1, dtype=float)
    tt = t[..., None]
    num = np.sum(np.cos((p + 0.5) * tt) * np.cos(0.5 * p * tt), axis=-1)
    out = num / np.sin(0.5 * t)
    return out if out.ndim else float(out)
