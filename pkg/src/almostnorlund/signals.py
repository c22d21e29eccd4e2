"""Built-in test signals, addressable by name.

====================  ==========================================================
spec                  signal
====================  ==========================================================
``constant(c)``       ``c``
``cosk(k)``           ``cos(k x)``
``sink(k)``           ``sin(k x)``
``sawtooth``          ``x`` on ``(-pi, pi)``, zero at the jump
``square``            ``sign(sin x)``
``weierstrass(a, L)`` ``sum_{j=0}^{L} 2**(-j a) cos(2**j x)``, Lipschitz of order ``a``
====================  ==========================================================
"""
from __future__ import annotations

import math
import re

import numpy as np

from .errors import ParameterError
from .fourier import FourierExpansion, Signal, trig_polynomial


def _fmt(x: float) -> str:
    x = float(x)
    return str(int(x)) if x.is_integer() else repr(x)


def constant(c: float) -> Signal:
    c = float(c)
    return Signal(
        lambda x: np.full(np.shape(x), c),
        f"constant({_fmt(c)})",
        1.0,
        lambda K: FourierExpansion.zeros(K, 2.0 * c),
        lambda x: np.zeros(np.shape(x)),
        0,
    )


def cosk(k: int) -> Signal:
    k = _positive_int(k, "cosk")

    def expansion(K):
        e = FourierExpansion.zeros(K)
        if k <= K:
            e.a[k - 1] = 1.0
        return e

    return Signal(lambda x: np.cos(k * x), f"cosk({k})", 1.0, expansion,
                  lambda x: np.sin(k * x), k)


def sink(k: int) -> Signal:
    k = _positive_int(k, "sink")

    def expansion(K):
        e = FourierExpansion.zeros(K)
        if k <= K:
            e.b[k - 1] = 1.0
        return e

    return Signal(lambda x: np.sin(k * x), f"sink({k})", 1.0, expansion,
                  lambda x: -np.cos(k * x), k)


def sawtooth() -> Signal:
    def ev(x):
        y = np.mod(x + math.pi, 2 * math.pi) - math.pi
        return np.where(y == -math.pi, 0.0, y)

    def expansion(K):
        k = np.arange(1, K + 1)
        return FourierExpansion(0.0, np.zeros(K), 2.0 * (-1.0) ** (k + 1) / k)

    def conj(x):
        with np.errstate(divide="ignore"):
            return -2.0 * np.log(np.abs(2.0 * np.cos(0.5 * x)))

    return Signal(ev, "sawtooth", None, expansion, conj, None, (math.pi,))


def square() -> Signal:
    def expansion(K):
        k = np.arange(1, K + 1)
        b = np.where(k % 2 == 1, 4.0 / (math.pi * k), 0.0)
        return FourierExpansion(0.0, np.zeros(K), b)

    def conj(x):
        with np.errstate(divide="ignore"):
            return -(2.0 / math.pi) * np.log(np.abs(1.0 / np.tan(0.5 * x)))

    return Signal(lambda x: np.sign(np.sin(x)), "square", None, expansion, conj, None,
                  (0.0, math.pi))


def weierstrass(alpha: float, levels: int) -> Signal:
    """Lacunary series ``sum_{j<=levels} 2**(-j alpha) cos(2**j x)``."""
    alpha = float(alpha)
    if not 0 < alpha <= 1:
        raise ParameterError(f"weierstrass alpha must lie in (0, 1], got {alpha}")
    if int(levels) != levels or levels < 0:
        raise ParameterError(f"weierstrass levels must be a nonnegative integer, got {levels}")
    levels = int(levels)
    freqs = 2 ** np.arange(levels + 1)
    amps = 2.0 ** (-alpha * np.arange(levels + 1))

    def ev(x):
        x = np.asarray(x, dtype=float)
        return sum(a * np.cos(k * x) for k, a in zip(freqs, amps))

    def conj(x):
        x = np.asarray(x, dtype=float)
        return sum(a * np.sin(k * x) for k, a in zip(freqs, amps))

    def expansion(K):
        e = FourierExpansion.zeros(K)
        keep = freqs <= K
        e.a[freqs[keep] - 1] = amps[keep]
        return e

    return Signal(ev, f"weierstrass({_fmt(alpha)}, {levels})", alpha, expansion, conj,
                  int(freqs[-1]))


def random_trig_polynomial(rng: np.random.Generator, degree: int) -> Signal:
    """Trigonometric polynomial with standard normal coefficients."""
    e = FourierExpansion(rng.standard_normal(), rng.standard_normal(degree),
                         rng.standard_normal(degree))
    return trig_polynomial(e, f"randtrig(degree={degree})")


def _positive_int(k, name):
    if int(k) != k or k < 1:
        raise ParameterError(f"{name} needs a positive integer, got {k}")
    return int(k)


REGISTRY = {
    "constant": (constant, 1),
    "cosk": (cosk, 1),
    "sink": (sink, 1),
    "sawtooth": (sawtooth, 0),
    "square": (square, 0),
    "weierstrass": (weierstrass, 2),
}

_CALL = re.compile(r"^\s*([a-z_]+)\s*(?:\((.*)\))?\s*$")


def from_spec(text: str) -> Signal:
    """Build a registry signal from text such as ``"weierstrass(0.9, 12)"``."""
    m = _CALL.match(str(text))
    if m is None or m.group(1) not in REGISTRY:
        raise ParameterError(f"unknown signal {text!r}")
    ctor, arity = REGISTRY[m.group(1)]
    arg = m.group(2)
    args = [] if arg is None or not arg.strip() else [a.strip() for a in arg.split(",")]
    if len(args) != arity:
        raise ParameterError(f"{m.group(1)} takes {arity} argument(s), got {len(args)}")
    try:
        values = [float(a) for a in args]
    except ValueError:
        raise ParameterError(f"malformed number in {text!r}") from None
    return ctor(*values)
