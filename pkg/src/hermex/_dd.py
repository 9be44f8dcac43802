"""Compensated (double-double) arithmetic on numpy arrays.

A value is an unevaluated sum ``hi + lo`` of two float64 arrays with
``|lo| <= ulp(hi)/2``, giving about 31 significant digits.  Only the
operations needed by the Bessel-kernel power series are implemented.
Products use Dekker splitting rather than FMA so results are identical
on every platform.
"""

from __future__ import annotations

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def fast_two_sum(a, b):
    # valid only when |a| >= |b| componentwise, which holds at every call site
    s = a + b
    err = b - (s - a)
    return s, err


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def dd(hi, lo=0.0):
    return np.asarray(hi, dtype=float), np.asarray(lo, dtype=float)


def dd_add(x, y):
    s, e = two_sum(x[0], y[0])
    e = e + x[1] + y[1]
    return fast_two_sum(s, e)


def dd_neg(x):
    return -x[0], -x[1]


def dd_sub(x, y):
    return dd_add(x, dd_neg(y))


def dd_mul(x, y):
    p, e = two_prod(x[0], y[0])
    e = e + (x[0] * y[1] + x[1] * y[0])
    return fast_two_sum(p, e)


def dd_mul_s(x, s):
    """DD times a plain float64 scalar or array."""
    p, e = two_prod(x[0], s)
    e = e + x[1] * s
    return fast_two_sum(p, e)


def dd_scale_pow2(x, s):
    # s must be an exact power of two; the scaling is then error free
    return x[0] * s, x[1] * s


def dd_div(x, y):
    """Full double-double division x / y."""
    q1 = x[0] / y[0]
    r = dd_sub(x, dd_mul_s(y, q1))
    q2 = r[0] / y[0]
    r = dd_sub(r, dd_mul_s(y, q2))
    q3 = r[0] / y[0]
    q, e = fast_two_sum(q1, q2)
    return fast_two_sum(q, e + q3)


def dd_value(x):
    return x[0] + x[1]


# complex values as (real_dd, imag_dd) pairs


def cdd(re, im):
    return re, im


def cdd_add(x, y):
    return dd_add(x[0], y[0]), dd_add(x[1], y[1])


def cdd_mul(x, y):
    (xr, xi), (yr, yi) = x, y
    re = dd_sub(dd_mul(xr, yr), dd_mul(xi, yi))
    im = dd_add(dd_mul(xr, yi), dd_mul(xi, yr))
    return re, im


def cdd_div_dd(x, d):
    return dd_div(x[0], d), dd_div(x[1], d)


def cdd_value(x):
    return dd_value(x[0]) + 1j * dd_value(x[1])
