"""Stable evaluation of the special-function kernels used everywhere else.

Weighted Hermite and Laguerre families are generated by their three-term
recurrences in a scaled form: the polynomial part is carried with a
per-point binary exponent offset so arguments far outside the classically
allowed region neither overflow nor get flushed to zero prematurely.  The
Bessel ratio J_delta(w)/w^delta is summed in compensated double-double
arithmetic where the alternating series is well conditioned and by a
normalized backward recurrence where it is not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.special import gammaln

from . import _dd

HERMITE_DEGREE_CAP = 10_000
LAGUERRE_DEGREE_CAP = 10_000
BESSEL_ARG_CAP = 160.0

_LN2 = math.log(2.0)
_RENORM = 2.0 ** 600
_RENORM_INV = 2.0 ** -600


@dataclass(frozen=True)
class HermiteIndex:
    """Multi-index for tensor Hermite functions, at most two entries."""

    entries: tuple

    def __post_init__(self):
        ent = tuple(int(k) for k in self.entries)
        if not 1 <= len(ent) <= 2:
            raise ValueError("only one- and two-dimensional indices are supported")
        if any(k < 0 or k > HERMITE_DEGREE_CAP for k in ent):
            raise ValueError("index entries must lie in [0, %d]" % HERMITE_DEGREE_CAP)
        object.__setattr__(self, "entries", ent)

    @property
    def degree(self) -> int:
        return sum(self.entries)


@dataclass(frozen=True)
class LaguerreOrder:
    k: int
    delta: float

    def __post_init__(self):
        if self.k < 0 or self.k > LAGUERRE_DEGREE_CAP:
            raise ValueError("degree out of range")
        if not self.delta > -0.5:
            raise ValueError("type parameter must exceed -1/2")


@dataclass(frozen=True)
class SpecialValue:
    value: float
    abs_err_estimate: float


def log_gamma(x):
    """Natural log of Gamma on the positive axis, vectorized."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0):
        raise ValueError("log_gamma requires positive arguments")
    out = gammaln(arr)
    return float(out) if np.isscalar(x) or arr.ndim == 0 else out


class _ScaledEmitter:
    """Caches exp(offset) between renormalizations of a scaled recurrence."""

    def __init__(self, base_log):
        self.extra = np.zeros_like(base_log)
        self.base_log = base_log
        self._scale = None

    def bump(self, mask, log_step):
        self.extra = self.extra + np.where(mask, log_step, 0.0)
        self._scale = None

    def scale(self):
        if self._scale is None:
            # graceful underflow to 0 far outside the classically allowed region
            with np.errstate(under="ignore"):
                self._scale = np.exp(self.base_log + self.extra)
        return self._scale


def _renorm(p_prev, p_cur, emitter):
    mag = np.maximum(np.abs(p_prev), np.abs(p_cur))
    big = mag > _RENORM
    small = (mag > 0.0) & (mag < _RENORM_INV)
    if np.any(big):
        f = np.where(big, _RENORM_INV, 1.0)
        p_prev *= f
        p_cur *= f
        emitter.bump(big, 600.0 * _LN2)
    if np.any(small):
        f = np.where(small, _RENORM, 1.0)
        p_prev *= f
        p_cur *= f
        emitter.bump(small, -600.0 * _LN2)
    return p_prev, p_cur


def _hermite_iter(kmax: int, x: np.ndarray):
    """Yield (k, scaled poly values, emitter) for k = 0..kmax."""
    dead = np.abs(x) > 40.0
    base_log = np.where(dead, 0.0, -0.5 * x * x) - 0.25 * math.log(math.pi)
    emitter = _ScaledEmitter(base_log)
    p_prev = np.zeros_like(x)
    p_cur = np.where(dead, 0.0, 1.0)
    yield 0, p_cur, emitter
    for k in range(kmax):
        nxt = x * math.sqrt(2.0 / (k + 1)) * p_cur - math.sqrt(k / (k + 1.0)) * p_prev
        p_prev, p_cur = p_cur, nxt
        if k % 16 == 15:
            p_prev, p_cur = _renorm(p_prev, p_cur, emitter)
        yield k + 1, p_cur, emitter


def hermite_phi_all(kmax: int, x):
    """All weighted Hermite functions Phi_0..Phi_kmax at the given points.

    Parameters
    ----------
    kmax : int
        Highest degree, at most 10**4.
    x : array_like
        Real evaluation points.

    Returns
    -------
    ndarray with shape (kmax+1,) + shape(x).

    Notes
    -----
    Values at |x| > 40 are returned as exact zeros; the discarded tail is
    below exp(-x**2/2) in absolute value there.
    """
    if not 0 <= kmax <= HERMITE_DEGREE_CAP:
        raise ValueError("degree out of range")
    arr = np.asarray(x, dtype=float)
    flat = np.atleast_1d(arr).astype(float).ravel()
    out = np.empty((kmax + 1, flat.size))
    for k, p, emitter in _hermite_iter(kmax, flat):
        out[k] = p * emitter.scale()
    return out.reshape((kmax + 1,) + arr.shape)


def hermite_phi(k: int, x, with_estimate: bool = False):
    """Weighted Hermite function Phi_k, orthonormal in L2(R)."""
    if not 0 <= k <= HERMITE_DEGREE_CAP:
        raise ValueError("degree out of range")
    arr = np.asarray(x, dtype=float)
    flat = np.atleast_1d(arr).astype(float).ravel()
    val = None
    for kk, p, emitter in _hermite_iter(k, flat):
        if kk == k:
            val = p * emitter.scale()
    val = val.reshape(arr.shape)
    if arr.ndim == 0:
        val = float(val)
    if not with_estimate:
        return val
    tail = np.where(np.abs(arr) > 40.0, np.maximum(np.exp(-0.5 * arr * arr), 5e-324), 0.0)
    if arr.ndim == 0:
        return SpecialValue(val, float(tail))
    return val, tail


def hermite_phi_multi(alpha, points):
    """Product Phi_alpha over the trailing axis of `points`.

    `alpha` may be a HermiteIndex or a plain sequence of ints.
    """
    idx = alpha if isinstance(alpha, HermiteIndex) else HermiteIndex(tuple(alpha))
    pts = np.asarray(points, dtype=float)
    n = len(idx.entries)
    if pts.shape[-1] != n:
        raise ValueError("point dimension does not match the index")
    out = np.ones(pts.shape[:-1])
    for axis, k in enumerate(idx.entries):
        out = out * hermite_phi(k, pts[..., axis])
    return out


def _laguerre_iter(kmax: int, delta: float, xsq: np.ndarray):
    base_log = -0.5 * xsq
    emitter = _ScaledEmitter(base_log)
    p_prev = np.zeros_like(xsq)
    p_cur = np.ones_like(xsq)
    yield 0, p_cur, emitter
    if kmax == 0:
        return
    p_prev, p_cur = p_cur, (delta + 1.0 - xsq)
    yield 1, p_cur, emitter
    for k in range(1, kmax):
        nxt = ((2 * k + delta + 1.0 - xsq) * p_cur - (k + delta) * p_prev) / (k + 1.0)
        p_prev, p_cur = p_cur, nxt
        if k % 16 == 15:
            p_prev, p_cur = _renorm(p_prev, p_cur, emitter)
        yield k + 1, p_cur, emitter


def laguerre_psi_all(kmax: int, delta: float, s):
    """Weighted Laguerre functions psi_k(s) = L_k^delta(s^2) exp(-s^2/2).

    Returns an array of shape (kmax+1,) + shape(s).  The family is
    orthogonal in L2((0, inf), s^(2 delta + 1) ds) with
    ||psi_k||^2 = Gamma(k+delta+1) / (2 Gamma(k+1)).
    """
    if not 0 <= kmax <= LAGUERRE_DEGREE_CAP:
        raise ValueError("degree out of range")
    if not delta > -0.5:
        raise ValueError("type parameter must exceed -1/2")
    arr = np.asarray(s, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("radial arguments must be nonnegative")
    flat = np.atleast_1d(arr).astype(float).ravel()
    xsq = flat * flat
    out = np.empty((kmax + 1, flat.size))
    for k, p, emitter in _laguerre_iter(kmax, delta, xsq):
        out[k] = p * emitter.scale()
    return out.reshape((kmax + 1,) + arr.shape)


def laguerre_psi(order, delta=None, s=None):
    """psi_k^delta at radial points; accepts (LaguerreOrder, s) or (k, delta, s)."""
    if isinstance(order, LaguerreOrder):
        k, dl, pts = order.k, order.delta, delta if s is None else s
    else:
        k, dl, pts = int(order), float(delta), s
    LaguerreOrder(k, dl)
    arr = np.asarray(pts, dtype=float)
    out = laguerre_psi_all(k, dl, arr)[k]
    return float(out) if arr.ndim == 0 else out


def laguerre_norm_sq(k: int, delta: float) -> float:
    """Squared norm of psi_k^delta in L2(s^(2 delta + 1) ds)."""
    return math.exp(log_gamma(k + delta + 1.0) - _LN2 - log_gamma(k + 1.0))


def varphi(k: int, n: int, r):
    """Radial profile of the level-k special Hermite function on C^n.

    `r` is the modulus |z|; the value is L_k^(n-1)(r^2/2) exp(-r^2/4).
    """
    if n < 1:
        raise ValueError("dimension must be at least 1")
    arr = np.asarray(r, dtype=float)
    out = laguerre_psi_all(k, n - 1.0, arr / math.sqrt(2.0))[k]
    return float(out) if arr.ndim == 0 else out


@lru_cache(maxsize=None)
def _ratio_seed(delta: float):
    import mpmath as mp

    with mp.workdps(40):
        t = mp.mpf(2.0) ** (-mp.mpf(delta)) / mp.gamma(mp.mpf(delta) + 1)
        hi = float(t)
        lo = float(t - hi)
    return hi, lo


_SERIES_CAP = 400
_SERIES_TOL = 1e-18
# alternating-series lane is well conditioned while Re(w^2) stays moderate
_SERIES_RE_W2_MAX = 1024.0


def _ratio_series_real(delta, q_dd, shape):
    hi, lo = _ratio_seed(float(delta))
    t = (np.full(shape, hi), np.full(shape, lo))
    s = t
    neg_q = _dd.dd_neg(q_dd)
    for j in range(_SERIES_CAP):
        t = _dd.dd_mul(t, neg_q)
        t = _dd.dd_div(t, _dd.dd(float(j + 1), 0.0))
        t = _dd.dd_div(t, _dd.two_sum(np.full(shape, delta), float(j + 1)))
        s = _dd.dd_add(s, t)
        if np.all(np.abs(t[0]) <= _SERIES_TOL * np.abs(s[0]) + 5e-324):
            return _dd.dd_value(s)
    raise RuntimeError("power series failed to converge; this is a bug")


def _ratio_series_complex(delta, q_re, q_im, shape):
    hi, lo = _ratio_seed(float(delta))
    t = ((np.full(shape, hi), np.full(shape, lo)), (np.zeros(shape), np.zeros(shape)))
    s = t
    neg_q = (_dd.dd_neg(q_re), _dd.dd_neg(q_im))
    for j in range(_SERIES_CAP):
        t = _dd.cdd_mul(t, neg_q)
        t = _dd.cdd_div_dd(t, _dd.dd(float(j + 1), 0.0))
        t = _dd.cdd_div_dd(t, _dd.two_sum(np.full(shape, delta), float(j + 1)))
        s = _dd.cdd_add(s, t)
        tmag = np.abs(t[0][0]) + np.abs(t[1][0])
        smag = np.abs(s[0][0]) + np.abs(s[1][0])
        if np.all(tmag <= _SERIES_TOL * smag + 5e-324):
            return _dd.cdd_value(s)
    raise RuntimeError("power series failed to converge; this is a bug")


def _ratio_backward(delta, w):
    """Normalized backward recurrence for J_delta(w)/w^delta, |w| large.

    Uses the expansion of (w/2)^delta in Bessel functions of orders
    delta + 2k for the normalizing sum, so no power of w is ever formed.
    """
    w = np.asarray(w, dtype=complex)
    order_span = int(math.ceil(float(np.max(np.abs(w))))) + 80
    b_hi = np.zeros(w.shape, dtype=complex)
    b_lo = np.full(w.shape, 1e-30, dtype=complex)
    coef = {0: 1.0}
    for k in range(1, order_span // 2 + 1):
        coef[2 * k] = (delta + 2.0 * k) * math.exp(
            gammaln(delta + k) - gammaln(k + 1.0) - gammaln(delta + 1.0)
        )
    norm = np.zeros(w.shape, dtype=complex)
    b0 = None
    inv_w = 1.0 / np.where(w == 0.0, 1.0, w)
    for m in range(order_span, -1, -1):
        b_prev = 2.0 * (delta + m + 1.0) * inv_w * b_lo - b_hi
        b_hi, b_lo = b_lo, b_prev
        if m % 2 == 0:
            norm = norm + coef[m] * b_lo
        if m % 16 == 0:
            mag = np.abs(b_lo)
            over = mag > 1e250
            if np.any(over):
                f = np.where(over, 1e-250, 1.0)
                b_hi *= f
                b_lo *= f
                norm *= f
        if m == 0:
            b0 = b_lo
    hi, lo = _ratio_seed(float(delta))
    return b0 / norm * (hi + lo)


def bessel_ratio(delta: float, w):
    """J_delta(w)/w^delta, entire in w, for delta > -1/2 and |w| <= 160."""
    if not delta > -0.5:
        raise ValueError("order must exceed -1/2")
    arr = np.asarray(w)
    complex_in = np.iscomplexobj(arr)
    zc = np.atleast_1d(arr).astype(complex).ravel()
    if np.any(np.abs(zc) > BESSEL_ARG_CAP * (1.0 + 1e-12)):
        raise ValueError("argument modulus exceeds %g" % BESSEL_ARG_CAP)
    wr, wi = zc.real.copy(), zc.imag.copy()
    # q = w^2/4, assembled exactly in double-double
    rr = _dd.two_prod(wr, wr)
    ii = _dd.two_prod(wi, wi)
    q_re = _dd.dd_scale_pow2(_dd.dd_sub(rr, ii), 0.25)
    q_im = _dd.dd_scale_pow2(_dd.two_prod(wr, wi), 0.5)
    out = np.empty(zc.shape, dtype=complex)
    series = q_re[0] <= _SERIES_RE_W2_MAX / 4.0
    if np.any(series):
        sub_re = (q_re[0][series], q_re[1][series])
        sub_im = (q_im[0][series], q_im[1][series])
        shape = sub_re[0].shape
        if np.all(sub_im[0] == 0.0):
            out[series] = _ratio_series_real(delta, sub_re, shape)
        else:
            out[series] = _ratio_series_complex(delta, sub_re, sub_im, shape)
    rest = ~series
    if np.any(rest):
        out[rest] = _ratio_backward(delta, zc[rest])
    if not complex_in:
        out = out.real
    out = out.reshape(np.shape(arr))
    if np.ndim(arr) == 0:
        return out[()] if complex_in else float(out)
    return out


def bessel_k(delta: float, x, with_estimate: bool = False):
    """Modified Bessel function K_delta on the positive axis.

    Evaluated from the real integral representation
    K_d(z) = sqrt(pi/(2 z)) exp(-z) / Gamma(d + 1/2)
             * 2 * int_0^inf exp(-v^2) v^(2 d) (1 + v^2/(2 z))^(d - 1/2) dv,
    which is smooth at v = 0 for every d >= 0.
    """
    if delta < 0.0:
        raise ValueError("order must be nonnegative")
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0):
        raise ValueError("argument must be positive")
    flat = np.atleast_1d(arr).ravel()
    vals = np.empty(flat.shape)
    errs = np.empty(flat.shape)
    for i, z in enumerate(flat):
        pref = math.sqrt(math.pi / (2.0 * z)) * math.exp(-z) / math.exp(log_gamma(delta + 0.5))

        def integrand(v, _z=z):
            return math.exp(-v * v) * v ** (2.0 * delta) * (1.0 + v * v / (2.0 * _z)) ** (delta - 0.5)

        val, err = quad(integrand, 0.0, np.inf, epsabs=1e-14, epsrel=1e-12, limit=300)
        vals[i] = pref * 2.0 * val
        errs[i] = pref * 2.0 * err
    vals = vals.reshape(arr.shape)
    errs = errs.reshape(arr.shape)
    if arr.ndim == 0:
        if with_estimate:
            return SpecialValue(float(vals), float(errs))
        return float(vals)
    if with_estimate:
        return vals, errs
    return vals


def c_constant(k: int, m: int, n: int) -> float:
    """Combinatorial ratio 2^(2(k-m)) (k-m)! Gamma(n/2+k+m) / (2k)!.

    Evaluated through log-gamma so large degrees stay in range.
    """
    if not 0 <= m <= k:
        raise ValueError("need 0 <= m <= k")
    if n < 1:
        raise ValueError("dimension must be positive")
    lg = (
        2.0 * (k - m) * _LN2
        + log_gamma(k - m + 1.0)
        + log_gamma(0.5 * n + k + m)
        - log_gamma(2.0 * k + 1.0)
    )
    return math.exp(lg)


def circular_harmonic(m: int, j: int, theta):
    """Real orthonormal circular harmonics on S^1.

    m = 0 has the single member 1/sqrt(2 pi); for m >= 1 the pair
    j = 1, 2 is cos(m theta)/sqrt(pi), sin(m theta)/sqrt(pi).
    """
    if m < 0:
        raise ValueError("harmonic degree must be nonnegative")
    arr = np.asarray(theta, dtype=float)
    if m == 0:
        if j != 1:
            raise ValueError("degree zero has a single member, j = 1")
        out = np.full(arr.shape, 1.0 / math.sqrt(2.0 * math.pi))
    elif j == 1:
        out = np.cos(m * arr) / math.sqrt(math.pi)
    elif j == 2:
        out = np.sin(m * arr) / math.sqrt(math.pi)
    else:
        raise ValueError("member label must be 1 or 2")
    return float(out) if arr.ndim == 0 else out


def harmonic_multiplicity(m: int) -> int:
    """Number of independent circular harmonics of degree m."""
    if m < 0:
        raise ValueError("harmonic degree must be nonnegative")
    return 1 if m == 0 else 2
