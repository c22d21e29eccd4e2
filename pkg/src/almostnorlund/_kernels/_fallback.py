"""Pure-Python/NumPy implementations of the numerical kernels.

These define the reference semantics; the Cython module ``_compiled`` must
agree with them (bit-for-bit for the summation kernels, to round-off for
``trig_eval``).
"""
import math

import numpy as np

#: Number of recurrence steps between exact re-seeds of cos(kx), sin(kx).
RESEED = 16


def _running_fsum(vals):
    # Shewchuk partials hold the exact running sum; fsum rounds them correctly
    partials = []
    out = []
    for x in vals:
        i = 0
        for y in partials:
            if abs(x) < abs(y):
                x, y = y, x
            hi = x + y
            lo = y - (hi - x)
            if lo:
                partials[i] = lo
                i += 1
            x = hi
        partials[i:] = [x]
        out.append(math.fsum(partials))
    return out


def fsum_prefix(a):
    """Correctly rounded prefix sums ``out[n] = fsum(a[:n+1])``."""
    vals = np.asarray(a, dtype=float).tolist()
    return np.array(_running_fsum(vals), dtype=float)


def fsum_suffix(a):
    """Correctly rounded suffix sums ``out[n] = fsum(a[n:])``."""
    vals = np.asarray(a, dtype=float).tolist()
    return np.array(_running_fsum(vals[::-1])[::-1], dtype=float)


def fsum_convolve(p, q):
    """Correctly rounded convolution ``out[n] = fsum(p[m] * q[n-m], m <= n)``.

    Only the first ``min(len(p), len(q))`` entries are produced.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    size = min(len(p), len(q))
    out = np.empty(size)
    for n in range(size):
        out[n] = math.fsum((p[: n + 1] * q[n::-1]).tolist())
    return out


def almost_multipliers(w, r_shift):
    r"""Coefficient multipliers of the almost generalized Norlund transform.

    With weights ``w[m]`` (already divided by the normalizer) the transform of
    conjugate partial sums equals :math:`\sum_k \lambda_k \tilde B_k(x)` where

    .. math:: \lambda_k = \sum_m \frac{w_m}{m+1}\,\#\{j : \max(k, r) \le j \le m + r\}

    Returns ``lam`` of length ``len(w) + r_shift``; ``lam[0]`` multiplies the
    (absent) constant term of the conjugate series.

    For ``k > r`` with ``d = k - r`` this is
    ``sum_{m>=d} w_m - d * sum_{m>=d} w_m / (m+1)``; for ``k <= r`` it is ``sum w``.
    Both suffix sums are correctly rounded.
    """
    w = np.asarray(w, dtype=float)
    n = len(w) - 1
    sw = fsum_suffix(w)
    su = fsum_suffix(w / np.arange(1.0, n + 2.0))
    d = np.arange(n + 1, dtype=float)
    out = np.empty(n + r_shift + 1)
    out[: r_shift + 1] = sw[0]
    out[r_shift + 1:] = sw[1:] - d[1:] * su[1:]
    return out


def trig_eval(c, s, x):
    """Evaluate ``sum_k c[k] cos(k x) + s[k] sin(k x)`` for k = 0..K-1."""
    c = np.asarray(c, dtype=float)
    s = np.asarray(s, dtype=float)
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape)
    if len(c) == 0:
        return out
    cr, sr = np.cos(x), np.sin(x)
    ck = np.ones(x.shape)
    sk = np.zeros(x.shape)
    for k in range(len(c)):
        if k and k % RESEED == 0:
            ck, sk = np.cos(k * x), np.sin(k * x)
        if c[k] != 0.0:
            out += c[k] * ck
        if s[k] != 0.0:
            out += s[k] * sk
        ck, sk = ck * cr - sk * sr, sk * cr + ck * sr
    return out
