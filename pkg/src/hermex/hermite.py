"""Hermite expansion machinery: coefficients and projection norms.

Projection norms come by three independent routes: direct multi-index
summation, a phase-space integral against Laguerre functions, and a
circular-harmonic route through reduced radial profiles.  The routes share
no quadrature, which is what makes their agreement a meaningful check.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import functions, quadrature, special, transforms

_ENV_TAIL = 2.0 * 18.0 * math.log(10.0)
_SINGLE_TAIL = 18.0 * math.log(10.0)

COEFF_DEGREE_CAP = 200
DIRECT_LEVEL_CAP = 60
GRID_POINTS = 256

_CIRCLE_M = 256
_REDUCED_FLOOR = 1e-3


# ---------------------------------------------------------------------------
# coefficient tables


@dataclass
class CoefficientTable:
    """Per-level results of one route, with error estimates.

    ``entries`` maps the level k to the stored value (a projection norm or a
    coefficient); ``est_err`` carries a matching absolute-error estimate.
    Negative squared norms clamped to zero are listed in meta["clamped"] so
    quadrature noise near machine zero stays auditable.
    """

    function_id: str
    route: str
    entries: dict
    est_err: dict
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.route not in ("direct", "wigner", "spherical"):
            raise ValueError("unknown route %r" % self.route)

    def bessel_slack(self, norm_sq: float) -> float:
        """sum_k value_k^2 - ||f||^2; must not exceed 1e-6 * ||f||^2."""
        total = sum(float(abs(v)) ** 2 for v in self.entries.values())
        return total - norm_sq

    def to_csv_text(self) -> str:
        lines = ["k,value,est_err,route"]
        for k in sorted(self.entries):
            v = self.entries[k]
            if isinstance(v, complex):
                text = "%.17g%+.17gj" % (v.real, v.imag)
            else:
                text = "%.17g" % v
            lines.append(
                "%d,%s,%.17g,%s" % (k, text, float(self.est_err.get(k, 0.0)), self.route)
            )
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        def enc(v):
            if isinstance(v, complex):
                return [v.real, v.imag]
            return float(v)

        return {
            "function": self.function_id,
            "route": self.route,
            "entries": {str(k): enc(v) for k, v in sorted(self.entries.items())},
            "est_err": {str(k): float(v) for k, v in sorted(self.est_err.items())},
            "meta": self.meta,
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# product-grid inner products


def _expansion_radius(f, kmax: int) -> float:
    gamma = f.gamma
    if gamma <= 0.0:
        raise ValueError("function envelope missing")
    deg = f.gausspoly.degree if f.gausspoly is not None else 0
    R = math.sqrt(_SINGLE_TAIL / gamma)
    for _ in range(3):
        bump = max(0.0, deg * math.log(max(R, 2.0)))
        R = math.sqrt((_SINGLE_TAIL + bump) / gamma)
    # never truncate the oscillatory span of the highest Hermite level
    return max(R, math.sqrt(2.0 * kmax + 1.0) + 1.0)


def _expansion_rule(f, kmax: int, n_points: int = GRID_POINTS):
    R = _expansion_radius(f, kmax)
    # half-phase criterion for the top level's wavenumber sqrt(2 kmax + 1)
    need = int(math.ceil(0.5 * R * math.sqrt(2.0 * kmax + 1.0))) + 32
    N = max(n_points, 8 * ((need + 7) // 8))
    return quadrature.mapped_legendre(N, -R, R)


def _as_index(alpha, n: int) -> tuple:
    if isinstance(alpha, special.HermiteIndex):
        ent = alpha.entries
    elif np.ndim(alpha) == 0:
        ent = (int(alpha),)
    else:
        ent = tuple(int(a) for a in alpha)
    if len(ent) != n:
        raise ValueError("index length must match the dimension")
    if any(a < 0 for a in ent):
        raise ValueError("index entries must be nonnegative")
    return ent


def hermite_coeff(f, alpha) -> complex:
    """Expansion coefficient (f, Phi_alpha) by product-grid quadrature."""
    ent = _as_index(alpha, f.n)
    if sum(ent) > COEFF_DEGREE_CAP:
        raise ValueError("total degree exceeds %d" % COEFF_DEGREE_CAP)
    rule = _expansion_rule(f, max(ent))
    x, w = rule.nodes, rule.weights
    if f.n == 1:
        vals = np.asarray(f.evaluate(x), dtype=complex)
        phi = special.hermite_phi(ent[0], x)
        return complex(np.sum(w * vals * phi))
    X1, X2 = np.meshgrid(x, x, indexing="ij")
    vals = np.asarray(f.evaluate(X1, X2), dtype=complex)
    p1 = special.hermite_phi(ent[0], x) * w
    p2 = special.hermite_phi(ent[1], x) * w
    return complex(p1 @ vals @ p2)


def hermite_coeff_grid(f, kmax: int, n_points: int = GRID_POINTS):
    """All coefficients up to degree kmax in one sweep.

    Returns a length kmax+1 vector for n = 1 and a (kmax+1, kmax+1) matrix
    indexed by (k1, k2) for n = 2.
    """
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    if kmax > COEFF_DEGREE_CAP:
        raise ValueError("total degree exceeds %d" % COEFF_DEGREE_CAP)
    rule = _expansion_rule(f, kmax, n_points)
    x, w = rule.nodes, rule.weights
    H = special.hermite_phi_all(kmax, x)
    if f.n == 1:
        vals = np.asarray(f.evaluate(x), dtype=complex)
        return H @ (w * vals)
    X1, X2 = np.meshgrid(x, x, indexing="ij")
    vals = np.asarray(f.evaluate(X1, X2), dtype=complex)
    HW = H * w
    return HW @ vals @ HW.T


def l2_norm_sq(f) -> float:
    """||f||^2, from registered metadata when available, else quadrature."""
    if f.norm_sq is not None:
        return float(f.norm_sq)
    rule = _expansion_rule(f, 0)
    x, w = rule.nodes, rule.weights
    if f.n == 1:
        vals = np.asarray(f.evaluate(x), dtype=complex)
        return float(np.sum(w * np.abs(vals) ** 2))
    X1, X2 = np.meshgrid(x, x, indexing="ij")
    vals = np.asarray(f.evaluate(X1, X2), dtype=complex)
    return float(w @ np.abs(vals) ** 2 @ w)


# ---------------------------------------------------------------------------
# route 1: direct multi-index sums


def proj_norms_direct(f, kmax: int, n_points: int = GRID_POINTS) -> np.ndarray:
    """||P_k f|| for k = 0..kmax via the coefficient grid."""
    if f.n > 2:
        raise ValueError("direct route budget exceeded (n <= 2)")
    if kmax > DIRECT_LEVEL_CAP:
        raise ValueError("direct route budget exceeded (k <= %d)" % DIRECT_LEVEL_CAP)
    C = hermite_coeff_grid(f, kmax, n_points)
    out = np.zeros(kmax + 1)
    if f.n == 1:
        out = np.abs(C)
    else:
        mag = np.abs(C) ** 2
        for k in range(kmax + 1):
            idx = np.arange(k + 1)
            out[k] = math.sqrt(float(np.sum(mag[idx, k - idx])))
    return out


def proj_norm_direct(f, k: int) -> float:
    return float(proj_norms_direct(f, k)[k])


# ---------------------------------------------------------------------------
# route 2: phase-space integral against Laguerre functions


def _laguerre_radial_stack(kmax: int, alpha: float, t: np.ndarray) -> list:
    """L_k^alpha(t) for k = 0..kmax by the three-term recurrence, as a list."""
    out = [np.ones_like(t)]
    if kmax >= 1:
        out.append(1.0 + alpha - t)
    for k in range(1, kmax):
        nxt = ((2 * k + 1 + alpha - t) * out[k] - (k + alpha) * out[k - 1]) / (k + 1.0)
        out.append(nxt)
    return out


def _wigner_level_sums(f, kmax: int, per_axis: int = 0) -> np.ndarray:
    """Raw integrals of V(f,f) against phi_k^{n-1}, scaled by (2 pi)^{-n/2}."""
    # pad the field so the top Laguerre level's oscillatory span is inside
    L = math.sqrt(2.0 * (2 * kmax + f.n))
    R = max(f.wigner_radius(), L + 4.0)
    if per_axis <= 0:
        # the field's own phases plus the Laguerre factor's oscillation,
        # which runs at wavenumber L but only out to its turning point
        _, hi = f._v_form_rates()
        half_phase = 0.5 * R * (3.25 + math.sqrt(hi)) + 0.5 * min(R, L) * L
        per_axis = 8 * ((int(math.ceil(half_phase)) + 48 + 7) // 8)
    F = transforms.wigner_field(f, per_axis=per_axis, R=R)
    u = F.rule.axis_nodes
    w = F.rule.axis_weights
    sums = np.zeros(kmax + 1, dtype=complex)
    if f.n == 1:
        X, Y = np.meshgrid(u, u, indexing="ij")
        vals = np.asarray(F.evaluator(X, Y), dtype=complex) * np.outer(w, w)
        t = 0.5 * (X * X + Y * Y)
        damp = np.exp(-0.5 * t)
        stack = _laguerre_radial_stack(kmax, 0.0, t)
        for k in range(kmax + 1):
            sums[k] = np.sum(vals * (stack[k] * damp))
    else:
        # split the type-1 Laguerre factor between the x and y planes:
        # L_k^1(t_x + t_y) = sum_j L_j^0(t_x) L_{k-j}^0(t_y), so per-row
        # matrix products replace the four-dimensional sweep; real factor
        # matrices keep the products in double (not complex) arithmetic
        Nu = len(u)
        t_x = 0.5 * np.add.outer(u * u, u * u)
        ex = np.exp(-0.5 * t_x).ravel() * np.outer(w, w).ravel()
        B = np.stack([lx.ravel() * ex for lx in _laguerre_radial_stack(kmax, 0.0, t_x)])
        Mr = np.zeros((kmax + 1, kmax + 1))
        Mi = np.zeros((kmax + 1, kmax + 1))
        vals = np.empty((Nu * Nu, Nu), dtype=complex)
        for j1, y1 in enumerate(u):
            if F.plane_fn is not None:
                for j2, y2 in enumerate(u):
                    vals[:, j2] = np.asarray(
                        F.plane_fn(y1, y2, u, u), dtype=complex
                    ).ravel()
            else:
                X1, X2, Y2 = np.meshgrid(u, u, u, indexing="ij")
                vals[:] = np.asarray(
                    F.evaluator(X1, X2, np.full_like(X1, y1), Y2), dtype=complex
                ).reshape(Nu * Nu, Nu)
            t_y = 0.5 * (y1 * y1 + u * u)
            ey = np.exp(-0.5 * t_y) * w
            C = np.stack([ly * ey for ly in _laguerre_radial_stack(kmax, 0.0, t_y)])
            Mr += w[j1] * ((B @ vals.real) @ C.T)
            Mi += w[j1] * ((B @ vals.imag) @ C.T)
        M = Mr + 1j * Mi
        for k in range(kmax + 1):
            idx = np.arange(k + 1)
            sums[k] = np.sum(M[idx, k - idx])
    return sums * (2.0 * math.pi) ** (-f.n / 2.0)


def proj_norms_wigner(f, kmax: int, per_axis: int = 0):
    """||P_k f|| for k = 0..kmax through the self-Wigner field.

    The squared norm is (2 pi)^{-n/2} times the integral of V(f,f) against
    the radial Laguerre function of type n-1 at each level.  The integral
    runs on the field's tensor rule.  Contract: each level's imaginary part
    stays below 1e-8 and its real part above -1e-8; tiny negatives are
    clamped to zero and reported.
    """
    if f.n not in (1, 2):
        raise ValueError("phase-space route supports n in {1, 2}")
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    sums = _wigner_level_sums(f, kmax, per_axis)
    clamped = []
    norms = np.zeros(kmax + 1)
    for k in range(kmax + 1):
        if abs(sums[k].imag) >= 1e-8:
            raise ValueError(
                "phase-space integral level %d has imaginary part %.3e" % (k, sums[k].imag)
            )
        re = sums[k].real
        if re < -1e-8:
            raise ValueError(
                "phase-space integral level %d is negative: %.3e" % (k, re)
            )
        if re < 0.0:
            clamped.append(k)
            re = 0.0
        norms[k] = math.sqrt(re)
    return norms, {"clamped": clamped, "max_imag": float(np.max(np.abs(sums.imag)))}


def proj_norm_wigner(f, k: int) -> float:
    norms, _ = proj_norms_wigner(f, k)
    return float(norms[k])


# ---------------------------------------------------------------------------
# Laguerre coefficients of radial profiles


def laguerre_coeff(g, order, normalized: bool = False):
    """(g, psi_k^delta) in L2(s^{2 delta + 1} ds), or the normalized R_k^delta(g)."""
    if isinstance(order, special.LaguerreOrder):
        k, delta = order.k, order.delta
    else:
        k, delta = int(order[0]), float(order[1])
    rule = transforms._radial_rule_for(g, delta, 0.0, extra=0.5)
    s = rule.nodes
    psi = special.laguerre_psi(k, delta, s)
    inner = np.sum(rule.weights * np.asarray(g.evaluate(s), dtype=complex) * psi)
    if normalized:
        inner *= 2.0 * math.exp(special.log_gamma(k + 1.0) - special.log_gamma(k + delta + 1.0))
    out = complex(inner)
    return out.real if abs(out.imag) < 1e-14 * max(1.0, abs(out.real)) else out


# ---------------------------------------------------------------------------
# route 3: circular harmonics and reduced profiles


@dataclass
class SphericalProfile:
    """One circular-harmonic component of a plane function.

    ``samples`` holds f_mj on ``grid`` (all radii >= 1e-3); ``reduced``
    evaluates r^{-m} f_mj(r) anywhere, switching to an even-polynomial
    extension below the grid floor where the quotient loses digits.
    """

    m: int
    j: int
    grid: np.ndarray
    samples: np.ndarray
    reduced_samples: np.ndarray
    energy: float
    _harmonic_fn: Callable = None
    _small_poly: np.ndarray = None

    def reduced(self, r):
        r = np.asarray(r, dtype=float)
        scalar = r.ndim == 0
        r = np.atleast_1d(r)
        out = np.zeros(r.shape, dtype=complex)
        big = r >= _REDUCED_FLOOR
        if np.any(big):
            rb = r[big]
            out[big] = self._harmonic_fn(rb) / rb**self.m
        if np.any(~big):
            rsq = r[~big] ** 2
            out[~big] = (
                self._small_poly[0]
                + self._small_poly[1] * rsq
                + self._small_poly[2] * rsq * rsq
            )
        return complex(out[0]) if scalar else out

    def reduced_profile(self, c: float, degree: int = 0) -> functions.RadialProfile:
        """Package the reduced profile for radial quadrature consumers."""
        return functions.RadialProfile(
            "reduced(m=%d,j=%d)" % (self.m, self.j),
            c,
            lambda s: self.reduced(s),
            {"m": self.m, "j": self.j},
            degree=degree,
        )


def _circle_values(f, radii: np.ndarray, M: int) -> np.ndarray:
    theta = 2.0 * math.pi * np.arange(M) / M
    R = np.asarray(radii, dtype=float)
    X1 = np.multiply.outer(R, np.cos(theta))
    X2 = np.multiply.outer(R, np.sin(theta))
    vals = np.asarray(f.evaluate(X1.ravel(), X2.ravel()), dtype=complex)
    return vals.reshape(R.shape + (M,))


def _harmonic_closure(f, m: int, j: int, M: int) -> Callable:
    theta = 2.0 * math.pi * np.arange(M) / M
    Y = special.circular_harmonic(m, j, theta)

    def fn(radii):
        vals = _circle_values(f, radii, M)
        return vals @ Y * (2.0 * math.pi / M)

    return fn


def spherical_decompose(f, m_max: int, n_grid: int = 220):
    """Split an R^2 function into circular-harmonic radial profiles.

    Returns (profiles, tail_energy): the harmonic components for m <= m_max
    and the L2 energy left above the cutoff.  Truncation is reported, never
    fatal.
    """
    if f.n != 2:
        raise ValueError("harmonic analysis needs a function on R^2")
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    gamma = f.gamma
    if gamma <= 0.0:
        raise ValueError("function envelope missing")
    deg = f.gausspoly.degree if f.gausspoly is not None else 0
    R = math.sqrt(_SINGLE_TAIL / gamma)
    for _ in range(3):
        bump = max(0.0, (deg + 1) * math.log(max(R, 2.0)))
        R = math.sqrt((_SINGLE_TAIL + bump) / gamma)

    grid = np.linspace(_REDUCED_FLOOR, R, n_grid)
    erule = quadrature.mapped_legendre(200, 0.0, R)
    small = np.array([_REDUCED_FLOOR, 2.0 * _REDUCED_FLOOR, 3.0 * _REDUCED_FLOOR])

    grid_vals = _circle_values(f, grid, _CIRCLE_M)
    energy_vals = _circle_values(f, erule.nodes, _CIRCLE_M)
    small_vals = _circle_values(f, small, _CIRCLE_M)
    theta = 2.0 * math.pi * np.arange(_CIRCLE_M) / _CIRCLE_M
    vand = np.vander(small**2, 3, increasing=True)

    profiles = []
    total_energy = 0.0
    for m in range(m_max + 1):
        for j in range(1, special.harmonic_multiplicity(m) + 1):
            Y = special.circular_harmonic(m, j, theta)
            scale = 2.0 * math.pi / _CIRCLE_M
            samples = grid_vals @ Y * scale
            on_energy = energy_vals @ Y * scale
            energy = float(
                np.sum(erule.weights * erule.nodes * np.abs(on_energy) ** 2)
            )
            reduced_small = (small_vals @ Y * scale) / small**m
            poly = np.linalg.solve(vand, reduced_small)
            profiles.append(
                SphericalProfile(
                    m=m,
                    j=j,
                    grid=grid,
                    samples=samples,
                    reduced_samples=samples / grid**m,
                    energy=energy,
                    _harmonic_fn=_harmonic_closure(f, m, j, _CIRCLE_M),
                    _small_poly=poly,
                )
            )
            total_energy += energy
    tail = max(0.0, l2_norm_sq(f) - total_energy)
    return profiles, tail


_DECOMPOSITIONS = {}


def _decomposition_for(f, m_max: Optional[int] = None):
    if m_max is None:
        m_max = f.on_finite_degree if f.on_finite_degree is not None else 20
    key = (f.id, m_max)
    if key not in _DECOMPOSITIONS:
        _DECOMPOSITIONS[key] = spherical_decompose(f, m_max) + (m_max,)
    return _DECOMPOSITIONS[key]


def _reduced_inner(f, prof: SphericalProfile, ell: int, delta: float):
    deg = 0
    if f.gausspoly is not None:
        deg = max(0, f.gausspoly.degree - prof.m)
    radial = prof.reduced_profile(f.gamma, degree=deg)
    return laguerre_coeff(radial, (ell, delta))


def proj_norm_spherical(f, k: int, m_max: Optional[int] = None) -> float:
    """||P_k f|| assembled from Laguerre coefficients of reduced profiles.

    Only harmonics of the level's parity contribute, and only those with
    m <= k; a function carrying a single harmonic of degree m therefore has
    exactly zero projections at every other parity class and below level m.
    """
    if f.n != 2:
        raise ValueError("spherical route needs a function on R^2")
    if k < 0:
        raise ValueError("level must be nonnegative")
    profiles, tail, used_max = _decomposition_for(f, m_max)
    norm0 = l2_norm_sq(f)
    if f.on_finite_degree is None and tail > 1e-6 * norm0:
        raise ValueError("harmonic truncation tail too large: %.3e" % tail)
    total = 0.0
    for prof in profiles:
        m = prof.m
        if m > k or (k - m) % 2 != 0:
            continue
        ell = (k - m) // 2
        delta = 0.5 * f.n + m - 1.0
        inner = _reduced_inner(f, prof, ell, delta)
        weight = 2.0 * math.exp(
            special.log_gamma(ell + 1.0)
            - special.log_gamma(0.5 * f.n + 0.5 * (k + m))
        )
        total += weight * abs(inner) ** 2
    return math.sqrt(total)


# ---------------------------------------------------------------------------
# Taylor-coefficient norms of the direction-resolved Bargmann transform


def _taylor_b_coeff(f, prof: SphericalProfile, ell: int) -> complex:
    # coefficient of z^{2 ell} in the Laguerre series of the transformed
    # reduced profile: 2^{-delta} (-1)^ell 2^{-2 ell} (g, psi_ell) / Gamma(ell+delta+1)
    delta = 0.5 * f.n + prof.m - 1.0
    inner = _reduced_inner(f, prof, ell, delta)
    mag = math.exp(
        -(delta + 2.0 * ell) * math.log(2.0) - special.log_gamma(ell + delta + 1.0)
    )
    return (-1) ** ell * mag * inner


def d_k_norms(f, k: int, route: str = "formula", radius: float = 0.0) -> float:
    """Integral over directions of |d_k(omega)|^2, for the Taylor expansion
    Bf(z omega) = sum_k d_k(omega) z^k.

    route="cauchy" reads the coefficients off a circle of z samples per
    direction; route="formula" assembles the same quantity from Laguerre
    coefficients of the reduced harmonic profiles.  The plane-wave expansion
    over the circle of directions contributes a factor (2 pi)^n to the
    harmonic form.
    """
    if f.n != 2:
        raise ValueError("direction-resolved transform needs n = 2")
    if k < 0:
        raise ValueError("order must be nonnegative")
    if route == "cauchy":
        if radius == 0.0:
            radius = min(8.0, max(1.5, math.sqrt(2.0 * (k + 1.0))))
        if not 0.05 <= radius <= 12.0:
            raise ValueError("Cauchy radius outside sane range")
        M_omega = 64
        th = 2.0 * math.pi * np.arange(M_omega) / M_omega
        omegas = np.column_stack([np.cos(th), np.sin(th)])
        M_z = 64
        while M_z < 8 * (k + 1):
            M_z *= 2
        ring = radius * np.exp(2j * math.pi * np.arange(M_z) / M_z)
        vals = transforms.bargmann_vector_ring(f, ring, omegas)
        coeffs = np.fft.fft(vals, axis=0)[k] / M_z / radius**k
        return float(np.sum(np.abs(coeffs) ** 2) * (2.0 * math.pi / M_omega))
    if route != "formula":
        raise ValueError("route must be cauchy or formula")
    profiles, tail, _ = _decomposition_for(f)
    norm0 = l2_norm_sq(f)
    if f.on_finite_degree is None and tail > 1e-6 * norm0:
        raise ValueError("harmonic truncation tail too large: %.3e" % tail)
    total = 0.0
    for prof in profiles:
        if prof.m > k or (k - prof.m) % 2 != 0:
            continue
        ell = (k - prof.m) // 2
        total += abs(_taylor_b_coeff(f, prof, ell)) ** 2
    return (2.0 * math.pi) ** f.n * total


# ---------------------------------------------------------------------------
# the harmonic damping operator


def t_operator(f):
    """Damp each circular harmonic of degree m by 2^{-m/2}.

    Returns a function object compatible with the expansion routines; the
    output's norm never exceeds the input's.
    """
    if f.n != 2:
        raise ValueError("harmonic damping needs a function on R^2")
    _, tail, m_max = _decomposition_for(f)
    if f.on_finite_degree is None and tail > 1e-6 * l2_norm_sq(f):
        raise ValueError("harmonic truncation tail too large: %.3e" % tail)
    M = _CIRCLE_M
    freqs = np.fft.fftfreq(M, d=1.0 / M).astype(int)
    damp = 2.0 ** (-np.abs(freqs) / 2.0)

    def ev(x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        shape = np.broadcast(x1, x2).shape
        r = np.hypot(x1, x2).ravel()
        th = np.arctan2(x2, x1).ravel()
        vals = _circle_values(f, r, M)
        c = np.fft.fft(vals, axis=-1) / M
        phases = np.exp(1j * np.multiply.outer(th, freqs.astype(float)))
        out = np.sum(c * damp * phases, axis=-1)
        if f.gausspoly is not None and f.gausspoly.beta == 0.0 and np.all(
            np.abs(out.imag) < 1e-13 * (1.0 + np.abs(out.real))
        ):
            out = out.real
        return out.reshape(shape)

    return functions.FunctionSpec(
        id="damped(%s)" % f.id,
        n=2,
        params=dict(f.params),
        gamma=f.gamma,
        parity=f.parity,
        radial=f.radial,
        on_finite_degree=f.on_finite_degree,
        gausspoly=None,
        norm_sq=None,
        bandwidth=f.bandwidth,
        env_const=f.env_const * 7.0,
        _evaluate=ev,
    )


# ---------------------------------------------------------------------------
# table assembly


def projection_table(f, kmax: int, route: str = "direct") -> CoefficientTable:
    """Tabulate ||P_k f|| for k = 0..kmax by the requested route."""
    meta = {"n": f.n, "kmax": int(kmax)}
    est = {}
    if route == "direct":
        vals = proj_norms_direct(f, kmax)
        alt = proj_norms_direct(f, kmax, n_points=GRID_POINTS - 64)
        for k in range(kmax + 1):
            est[k] = float(abs(vals[k] - alt[k]))
        meta["grid_points"] = GRID_POINTS
    elif route == "wigner":
        vals, info = proj_norms_wigner(f, kmax)
        meta.update(info)
        for k in range(kmax + 1):
            est[k] = float(info["max_imag"])
    elif route == "spherical":
        vals = np.array([proj_norm_spherical(f, k) for k in range(kmax + 1)])
        direct_small = proj_norms_direct(f, min(kmax, 6))
        drift = float(np.max(np.abs(vals[: len(direct_small)] - direct_small)))
        for k in range(kmax + 1):
            est[k] = drift
        meta["cross_check_levels"] = len(direct_small)
    else:
        raise ValueError("unknown route %r" % route)
    entries = {k: float(vals[k]) for k in range(kmax + 1)}
    return CoefficientTable(f.id, route, entries, est, meta)
