# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; same contracts as ``_fallback``.

The summation routines port CPython's ``math.fsum`` (Shewchuk partials plus
the half-even correction) so results are bit-identical to the fallback.
"""
import numpy as np

from libc.math cimport cos, sin, fabs

cdef enum:
    MAX_PARTIALS = 128
    RESEED = 16


cdef inline int _add(double *p, int n, double x) noexcept nogil:
    cdef int i = 0, j
    cdef double y, t, hi, lo
    for j in range(n):
        y = p[j]
        if fabs(x) < fabs(y):
            t = x
            x = y
            y = t
        hi = x + y
        lo = y - (hi - x)
        if lo != 0.0:
            p[i] = lo
            i += 1
        x = hi
    if x != 0.0:
        p[i] = x
        i += 1
    return i


cdef inline double _round(double *p, int n) noexcept nogil:
    cdef double hi = 0.0, lo = 0.0, x, y, yr
    if n > 0:
        n -= 1
        hi = p[n]
        while n > 0:
            x = hi
            n -= 1
            y = p[n]
            hi = x + y
            yr = hi - x
            lo = y - yr
            if lo != 0.0:
                break
        if n > 0 and ((lo < 0.0 and p[n - 1] < 0.0) or (lo > 0.0 and p[n - 1] > 0.0)):
            y = lo * 2.0
            x = hi + y
            yr = x - hi
            if y == yr:
                hi = x
    return hi


def fsum_prefix(a):
    cdef double[::1] av = np.ascontiguousarray(a, dtype=float)
    cdef Py_ssize_t size = av.shape[0], k
    out = np.empty(size)
    cdef double[::1] ov = out
    cdef double partials[MAX_PARTIALS]
    cdef int n = 0
    with nogil:
        for k in range(size):
            n = _add(partials, n, av[k])
            ov[k] = _round(partials, n)
    return out


def fsum_suffix(a):
    cdef double[::1] av = np.ascontiguousarray(a, dtype=float)
    cdef Py_ssize_t size = av.shape[0], k
    out = np.empty(size)
    cdef double[::1] ov = out
    cdef double partials[MAX_PARTIALS]
    cdef int n = 0
    with nogil:
        for k in range(size - 1, -1, -1):
            n = _add(partials, n, av[k])
            ov[k] = _round(partials, n)
    return out


def fsum_convolve(p, q):
    cdef double[::1] pv = np.ascontiguousarray(p, dtype=float)
    cdef double[::1] qv = np.ascontiguousarray(q, dtype=float)
    cdef Py_ssize_t size = min(pv.shape[0], qv.shape[0]), i, m
    out = np.empty(size)
    cdef double[::1] ov = out
    cdef double partials[MAX_PARTIALS]
    cdef int n
    with nogil:
        for i in range(size):
            n = 0
            for m in range(i + 1):
                n = _add(partials, n, pv[m] * qv[i - m])
            ov[i] = _round(partials, n)
    return out


def almost_multipliers(w, Py_ssize_t r_shift):
    cdef double[::1] wv = np.ascontiguousarray(w, dtype=float)
    cdef Py_ssize_t n = wv.shape[0] - 1, k, m
    out = np.empty(n + r_shift + 1)
    cdef double[::1] ov = out
    cdef double pw[MAX_PARTIALS]
    cdef double pu[MAX_PARTIALS]
    cdef int nw = 0, nu = 0
    cdef double sw, su
    with nogil:
        # suffix sums over m >= d, filled from the top; lam[r + d] = sw - d * su
        for m in range(n, -1, -1):
            nw = _add(pw, nw, wv[m])
            nu = _add(pu, nu, wv[m] / (m + 1.0))
            sw = _round(pw, nw)
            su = _round(pu, nu)
            if m > 0:
                ov[r_shift + m] = sw - m * su
        for k in range(r_shift + 1):
            ov[k] = sw
    return out


def trig_eval(c, s, x):
    cdef double[::1] cv = np.ascontiguousarray(c, dtype=float)
    cdef double[::1] sv = np.ascontiguousarray(s, dtype=float)
    xa = np.asarray(x, dtype=float)
    cdef double[::1] xv = np.ascontiguousarray(xa.ravel())
    cdef Py_ssize_t nk = cv.shape[0], npts = xv.shape[0], j, k
    out = np.zeros(npts)
    cdef double[::1] ov = out
    cdef double xj, cr, sr, ck, sk, tmp, acc
    with nogil:
        for j in range(npts):
            xj = xv[j]
            cr = cos(xj)
            sr = sin(xj)
            ck = 1.0
            sk = 0.0
            acc = 0.0
            for k in range(nk):
                if k and k % RESEED == 0:
                    ck = cos(k * xj)
                    sk = sin(k * xj)
                acc = acc + cv[k] * ck + sv[k] * sk
                tmp = ck * cr - sk * sr
                sk = sk * cr + ck * sr
                ck = tmp
            ov[j] = acc
    return out.reshape(xa.shape)
