"""Weight sequences for (N, p, q) summability and their bounded-variation classes.

A :class:`WeightSequence` is a rule ``n -> c_n`` producing finite, nonnegative
values. The module builds the normalizers

.. math:: P_n = \\sum_{m\\le n} p_m,\\quad Q_n = \\sum_{m\\le n} q_m,\\quad
          R_n = (p*q)_n = \\sum_{m\\le n} p_m q_{n-m},

classifies sequences as head bounded variation (HBVS) or rest bounded
variation (RBVS), and checks regularity of the resulting method.

All sums are correctly rounded (``math.fsum`` semantics), so identities such
as ``R_n == P_n`` for ``q == 1`` hold bit-for-bit and the convolution is
commutative term-by-term.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy import special

from . import _kernels
from .errors import (
    DegenerateSequenceError,
    InvalidWeightError,
    ParameterError,
    ZeroNormalizerError,
)

KINDS = ("ones", "harmonic", "cesaro", "explicit", "custom")


def _fmt(x: float) -> str:
    x = float(x)
    return str(int(x)) if x.is_integer() and abs(x) < 1e15 else repr(x)


@dataclass(frozen=True)
class WeightSequence:
    """Nonnegative weight generator ``n -> c_n``.

    Use the constructors (:meth:`ones`, :meth:`harmonic`, :meth:`cesaro`,
    :meth:`explicit`, :meth:`custom` and the named rules :meth:`linear`,
    :meth:`geometric`, :meth:`power`) rather than the raw initializer.
    ``spec`` is the textual form accepted by :meth:`parse`.
    """

    kind: str
    params: tuple = ()
    description: str = ""
    rule: Callable[[np.ndarray], np.ndarray] | None = field(
        default=None, compare=False, repr=False
    )

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParameterError(f"unknown weight kind {self.kind!r}")

    # constructors ---------------------------------------------------------

    @classmethod
    def ones(cls) -> "WeightSequence":
        return cls("ones", (), "ones")

    @classmethod
    def harmonic(cls) -> "WeightSequence":
        return cls("harmonic", (), "harmonic")

    @classmethod
    def cesaro(cls, alpha: float) -> "WeightSequence":
        alpha = float(alpha)
        if not alpha > 0 or not math.isfinite(alpha):
            raise ParameterError(f"cesaro order must be positive, got {alpha}")
        return cls("cesaro", (alpha,), f"cesaro({_fmt(alpha)})")

    @classmethod
    def explicit(cls, values) -> "WeightSequence":
        """Finite sequence; terms past the end are zero."""
        vals = tuple(float(v) for v in values)
        if not vals:
            raise ParameterError("explicit sequence needs at least one value")
        return cls("explicit", vals, ", ".join(_fmt(v) for v in vals))

    @classmethod
    def custom(cls, rule: Callable[[np.ndarray], np.ndarray], description: str,
               params: tuple = ()) -> "WeightSequence":
        """Arbitrary vectorized rule; ``description`` doubles as its spec."""
        return cls("custom", tuple(params), description, rule)

    @classmethod
    def linear(cls) -> "WeightSequence":
        """``c_n = n + 1`` (monotone increasing)."""
        return cls.custom(lambda n: n + 1.0, "linear")

    @classmethod
    def geometric(cls, ratio: float) -> "WeightSequence":
        """``c_n = ratio**n``."""
        ratio = float(ratio)
        if not ratio > 0:
            raise ParameterError(f"geometric ratio must be positive, got {ratio}")
        return cls.custom(lambda n: ratio ** n, f"geometric({_fmt(ratio)})", (ratio,))

    @classmethod
    def power(cls, exponent: float) -> "WeightSequence":
        """``c_n = (n + 1)**exponent``."""
        exponent = float(exponent)
        return cls.custom(lambda n: (n + 1.0) ** exponent, f"power({_fmt(exponent)})",
                          (exponent,))

    @classmethod
    def parse(cls, text: str) -> "WeightSequence":
        """Parse a spec such as ``"harmonic"``, ``"cesaro(0.5)"`` or ``"1, 0.5"``."""
        return parse_weights(text)

    # evaluation -----------------------------------------------------------

    @property
    def spec(self) -> str:
        return self.description

    @property
    def is_unit(self) -> bool:
        """True for sequences identically equal to one."""
        return self.kind == "ones" or (self.kind == "cesaro" and self.params[0] == 1.0)

    def values(self, N: int) -> np.ndarray:
        """Return ``c_0 .. c_N`` as a float array of length ``N + 1``."""
        if N < 0:
            raise ParameterError(f"N must be nonnegative, got {N}")
        cached = self.__dict__.get("_cache")
        if cached is not None and len(cached) > N:
            return cached[: N + 1].copy()
        # values never depend on N, so a validated prefix is reused; it grows by
        # doubling to keep sweeps over increasing N linear
        size = N if cached is None else max(N, 2 * len(cached))
        try:
            out = self._evaluate(size)
        except InvalidWeightError:
            if size == N:
                raise
            out = self._evaluate(N)
        object.__setattr__(self, "_cache", out)
        return out[: N + 1].copy()

    def _evaluate(self, N: int) -> np.ndarray:
        n = np.arange(N + 1, dtype=float)
        if self.kind == "ones":
            out = np.ones(N + 1)
        elif self.kind == "harmonic":
            out = 1.0 / (n + 1.0)
        elif self.kind == "cesaro":
            alpha = self.params[0]
            if alpha.is_integer():
                a = int(alpha)
                out = np.array([float(math.comb(k + a - 1, a - 1)) for k in range(N + 1)])
            else:
                out = special.binom(n + alpha - 1.0, alpha - 1.0)
        elif self.kind == "explicit":
            out = np.zeros(N + 1)
            vals = np.asarray(self.params[: N + 1], dtype=float)
            out[: len(vals)] = vals
        else:
            out = np.asarray(self.rule(n), dtype=float) * np.ones(N + 1)
        if not np.all(np.isfinite(out)):
            bad = int(np.flatnonzero(~np.isfinite(out))[0])
            raise InvalidWeightError(f"{self.spec}: non-finite value at n={bad}")
        if np.any(out < 0):
            bad = int(np.flatnonzero(out < 0)[0])
            raise InvalidWeightError(f"{self.spec}: negative value {out[bad]} at n={bad}")
        return out

    def last_nonzero(self) -> int | None:
        """Index of the last nonzero term for finite sequences, else None."""
        if self.kind != "explicit":
            return None
        nz = np.flatnonzero(np.asarray(self.params) != 0.0)
        return int(nz[-1]) if len(nz) else -1

    def __str__(self) -> str:
        return self.spec


_CALL = re.compile(r"^\s*([a-z_]+)\s*(?:\((.*)\))?\s*$")


def parse_weights(text: str) -> WeightSequence:
    text = str(text).strip()
    m = _CALL.match(text)
    if m is None:
        try:
            return WeightSequence.explicit(float(v) for v in text.split(","))
        except ValueError:
            raise ParameterError(f"cannot parse weight sequence {text!r}") from None
    name, arg = m.group(1), m.group(2)
    args = [] if arg is None or not arg.strip() else [a.strip() for a in arg.split(",")]
    try:
        fargs = [float(a) for a in args]
    except ValueError:
        raise ParameterError(f"malformed number in {text!r}") from None
    table = {
        "ones": (WeightSequence.ones, 0),
        "harmonic": (WeightSequence.harmonic, 0),
        "linear": (WeightSequence.linear, 0),
        "cesaro": (WeightSequence.cesaro, 1),
        "geometric": (WeightSequence.geometric, 1),
        "power": (WeightSequence.power, 1),
    }
    if name not in table:
        raise ParameterError(f"unknown weight sequence {name!r}")
    ctor, arity = table[name]
    if len(fargs) != arity:
        raise ParameterError(f"{name} takes {arity} argument(s), got {len(fargs)}")
    return ctor(*fargs)


# convolution ----------------------------------------------------------------


@dataclass(frozen=True)
class ConvolutionTable:
    """Normalizers ``R_n``, ``P_n``, ``Q_n`` for ``n = 0 .. N``."""

    R: np.ndarray
    P: np.ndarray
    Q: np.ndarray

    @property
    def N(self) -> int:
        return len(self.R) - 1


def build_convolution(p: WeightSequence, q: WeightSequence, N: int) -> ConvolutionTable:
    pv, qv = p.values(N), q.values(N)
    return ConvolutionTable(
        R=_kernels.fsum_convolve(pv, qv),
        P=_kernels.fsum_prefix(pv),
        Q=_kernels.fsum_prefix(qv),
    )


# bounded variation ------------------------------------------------------------


@dataclass(frozen=True)
class VariationReport:
    """Outcome of an HBVS/RBVS test over ``1 <= n <= horizon``.

    ``sums[i]`` is the variation sum and ``denominators[i]`` the value
    ``c_n`` for ``n = n_values[i]``; ``minimal_K`` is the largest ratio.
    For RBVS, ``tail_horizon`` is where the infinite tail sum was cut and
    ``tail_residual`` is ``c_{tail_horizon+1}``, the exact omitted variation
    when the tail is monotone.
    """

    class_tested: str
    holds: bool
    minimal_K: float | None
    first_violation_index: int | None
    horizon: int
    K_tested: float | None = None
    n_values: tuple = ()
    sums: tuple = ()
    denominators: tuple = ()
    tail_horizon: int | None = None
    tail_residual: float | None = None
    last_increment: float | None = None
    tends_to_zero: bool | None = None

    def summary(self) -> dict:
        return {
            "class": self.class_tested,
            "holds": self.holds,
            "minimal_K": self.minimal_K,
            "K_tested": self.K_tested,
            "first_violation_index": self.first_violation_index,
            "horizon": self.horizon,
            "tail_horizon": self.tail_horizon,
            "tail_residual": self.tail_residual,
            "last_increment": self.last_increment,
            "tends_to_zero": self.tends_to_zero,
        }


def classify_variation(c: WeightSequence, cls: str, N: int, tail_horizon: int | None = None,
                       K: float | None = None, growth_factor: float = 1.5,
                       vanish_tol: float = 0.1) -> VariationReport:
    """Test ``c`` for head (HBVS) or rest (RBVS) bounded variation.

    Parameters
    ----------
    c : WeightSequence
    cls : {"HBVS", "RBVS"}
    N : int
        Largest ``n`` tested. Finite explicit sequences are tested only up to
        their last nonzero term.
    tail_horizon : int, optional
        Truncation point of the RBVS tail sum; defaults to ``4 * N``.
    K : float, optional
        Constant to test against. Without it the class is accepted when the
        ratio supremum over the second half of the range stays within
        ``growth_factor`` times the supremum over the first half.
    vanish_tol : float
        RBVS requires ``c`` to tend to zero; accepted when
        ``max(c[H//2 : H+1]) <= vanish_tol * max(c[:N+1])``.

    Raises
    ------
    DegenerateSequenceError
        If some tested ``c_n`` is zero.
    """
    cls = cls.upper()
    if cls not in ("HBVS", "RBVS"):
        raise ParameterError(f"class must be HBVS or RBVS, got {cls!r}")
    if N < 1:
        raise ParameterError(f"N must be at least 1, got {N}")
    last = c.last_nonzero()
    horizon = N if last is None else max(min(N, last), 0)
    extra = {}
    if cls == "HBVS":
        vals = c.values(max(horizon, 1))
        diffs = np.abs(np.diff(vals))
        head = _kernels.fsum_prefix(diffs)
        n_vals = np.arange(1, horizon + 1)
        sums = head[n_vals - 1]
    else:
        H = 4 * N if tail_horizon is None else int(tail_horizon)
        if H < N:
            raise ParameterError("tail_horizon must be at least N")
        vals = c.values(H + 1)
        diffs = np.abs(np.diff(vals))
        tail = _kernels.fsum_suffix(diffs)
        n_vals = np.arange(1, horizon + 1)
        sums = tail[n_vals]
        scale = float(np.max(vals[: N + 1]))
        extra = dict(
            tail_horizon=H,
            tail_residual=float(vals[H + 1]),
            last_increment=float(diffs[H]),
            tends_to_zero=bool(np.max(vals[H // 2: H + 1]) <= vanish_tol * scale),
        )
    denom = vals[n_vals]
    if np.any(denom == 0):
        bad = int(n_vals[np.flatnonzero(denom == 0)[0]])
        raise DegenerateSequenceError(f"{c.spec}: c_{bad} = 0 in {cls} denominator")
    if len(n_vals) == 0:
        return VariationReport(cls, True, None, None, horizon, K, **extra)
    ratios = sums / denom
    minimal_K = float(np.max(ratios))
    if K is not None:
        bad = np.flatnonzero(ratios > K * (1 + 1e-12))
    else:
        half = max(len(ratios) // 2, 1)
        limit = growth_factor * float(np.max(ratios[:half])) + 1e-12
        bad = np.flatnonzero(ratios > limit)
    first = int(n_vals[bad[0]]) if len(bad) else None
    holds = first is None and extra.get("tends_to_zero", True)
    return VariationReport(
        class_tested=cls,
        holds=bool(holds),
        minimal_K=minimal_K,
        first_violation_index=first,
        horizon=horizon,
        K_tested=K,
        n_values=tuple(int(v) for v in n_vals),
        sums=tuple(float(v) for v in sums),
        denominators=tuple(float(v) for v in denom),
        **extra,
    )


# regularity ---------------------------------------------------------------------


class RegularityReport(NamedTuple):
    bounded_ratio: float
    vanishing_verified: bool
    vanishing_ratios: dict


def check_regularity(p: WeightSequence, q: WeightSequence, N: int, M: int = 4,
                     tol: float = 1e-2) -> RegularityReport:
    """Numerical Silverman-Toeplitz check for the (N, p, q) method.

    ``bounded_ratio`` is ``max_n sum_m |p_{n-m} q_m| / |R_n|``. For each fixed
    ``m <= M`` with ``q_m != 0`` the ratio ``p_{n-m} / |R_n|`` must fall
    below ``tol`` at ``n = N`` and must not exceed its value at ``n = N // 2``.
    """
    pv, qv = p.values(N), q.values(N)
    R = _kernels.fsum_convolve(pv, qv)
    if np.any(R == 0):
        bad = int(np.flatnonzero(R == 0)[0])
        raise ZeroNormalizerError(f"R_{bad} = 0 for p={p.spec}, q={q.spec}")
    absR = np.abs(R)
    bounded = float(np.max(_kernels.fsum_convolve(np.abs(pv), np.abs(qv)) / absR))
    ratios = {}
    ok = True
    mid = max(N // 2, min(M, N))
    for m in range(min(M, N) + 1):
        if qv[m] == 0:
            continue
        end = pv[N - m] / absR[N]
        start = pv[mid - m] / absR[mid] if mid >= m else end
        ratios[m] = float(end)
        ok = ok and end <= tol and end <= start
    return RegularityReport(bounded, bool(ok), ratios)


class ProofBounds(NamedTuple):
    """Each flag is True when its inequality held for every tested index."""

    head_bound: bool
    rest_bound: bool
    convolution_bound: bool


def check_proof_bounds(p: WeightSequence, q: WeightSequence, K_p: float, K_q: float,
                       N: int) -> ProofBounds:
    """Sweep the weight inequalities used in the rate proof, exactly.

    For all ``0 <= m <= n <= N``:

    * ``head_bound``: ``p_m <= (K_p + 1) p_n``
    * ``rest_bound``: ``q_{n-m} <= K_q q_n``
    * ``convolution_bound``: ``sum_m p_m q_{n-m} <= (K_p + 1) K_q (n + 1) p_n q_n``
    """
    pv, qv = p.values(N), q.values(N)
    head = all(bool(np.all(pv[: n + 1] <= (K_p + 1) * pv[n])) for n in range(N + 1))
    rest = all(bool(np.all(qv[: n + 1] <= K_q * qv[n])) for n in range(N + 1))
    lhs = _kernels.fsum_convolve(np.abs(pv), np.abs(qv))
    n = np.arange(N + 1)
    rhs = (K_p + 1) * K_q * (n + 1) * pv * qv
    return ProofBounds(head, rest, bool(np.all(lhs <= rhs)))
