"""Function registry: evaluators plus the analytic metadata the numerics need.

Every registered function declares its Gaussian envelope and, where it exists,
a polynomial-times-Gaussian normal form.  The transform engines key off that
metadata (truncation radii, oscillation bandwidth, closed-form transforms), so
a general expression parser is deliberately out of scope.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from . import special

__all__ = [
    "FunctionSpec",
    "GaussPoly",
    "RadialProfile",
    "make_function",
    "make_profile",
    "list_functions",
]

# e^{-c R^2} = 1e-18; grid radii for Wigner-type fields derive from this
_TAIL18 = 18.0 * math.log(10.0)
# polynomial degree beyond which Hermite coefficient expansion is not offered
# (recurrence evaluation stays exact; only the symbolic form is withheld)
_POLY_DEGREE_CAP = 12


# ---------------------------------------------------------------------------
# polynomial-times-Gaussian normal form


@dataclass(frozen=True)
class GaussPoly:
    """P(x) * exp(-(q/2)|x|^2 - i*beta*x1*x2) with P a complex polynomial.

    ``terms`` maps exponent tuples of length ``n`` to coefficients.  The
    quadratic phase ``beta`` is only meaningful for n = 2.
    """

    n: int
    q: float
    beta: float
    terms: tuple

    def __post_init__(self):
        if self.n not in (1, 2):
            raise ValueError("GaussPoly supports n in {1, 2}")
        if self.q <= 0.0:
            raise ValueError("Gaussian rate q must be positive")
        if self.n == 1 and self.beta != 0.0:
            raise ValueError("cross phase requires n = 2")
        if not self.terms:
            raise ValueError("empty polynomial")

    @property
    def degree(self) -> int:
        return max(sum(e) for e, _ in self.terms)

    def axis_degree(self, axis: int) -> int:
        return max(e[axis] for e, _ in self.terms)

    def poly_values(self, *coords):
        coords = [np.asarray(c, dtype=float) for c in coords]
        out = np.zeros(np.broadcast(*coords).shape, dtype=complex)
        for expo, c in self.terms:
            term = np.full(out.shape, c, dtype=complex)
            for ax, e in enumerate(expo):
                if e:
                    term = term * coords[ax] ** e
            out += term
        return out

    def evaluate(self, *coords):
        if len(coords) != self.n:
            raise ValueError("coordinate count mismatch")
        coords = [np.asarray(c, dtype=float) for c in coords]
        rsq = sum(c * c for c in coords)
        out = self.poly_values(*coords) * np.exp(-0.5 * self.q * rsq)
        if self.beta:
            out = out * np.exp(-1j * self.beta * coords[0] * coords[1])
        return out

    def scaled(self, factor: complex) -> "GaussPoly":
        return GaussPoly(
            self.n, self.q, self.beta, tuple((e, factor * c) for e, c in self.terms)
        )


def _hermite_poly_coeffs(k: int) -> np.ndarray:
    """Coefficients of the polynomial part of Phi_k, ascending powers."""
    c_prev = np.array([math.pi ** -0.25])
    if k == 0:
        return c_prev
    c_cur = np.zeros(2)
    c_cur[1] = math.sqrt(2.0) * c_prev[0]
    for j in range(1, k):
        nxt = np.zeros(j + 2)
        nxt[1:] = math.sqrt(2.0 / (j + 1)) * c_cur
        nxt[: j] -= math.sqrt(j / (j + 1.0)) * c_prev
        c_prev, c_cur = c_cur, nxt
    return c_cur


def _solid_harmonic_terms(m: int, kind: str) -> tuple:
    """Polynomial part of r^m * {cos,sin,complex} harmonic: built from (x1+ix2)^m."""
    if m == 0:
        if kind == "sin":
            raise ValueError("sin harmonic of degree 0 is the zero function")
        return (((0, 0), 1.0 + 0.0j),)
    entries = {}
    for j in range(m + 1):
        coeff = math.comb(m, j) * (1j ** j)
        if kind == "cos":
            coeff = complex(coeff.real, 0.0)
        elif kind == "sin":
            coeff = complex(coeff.imag, 0.0)
        if coeff != 0:
            entries[(m - j, j)] = entries.get((m - j, j), 0.0) + coeff
    return tuple(sorted(entries.items()))


# ---------------------------------------------------------------------------
# registry records


@dataclass
class FunctionSpec:
    """A registered function on R^n with its analytic metadata.

    gamma/env_const witness |f(x)| <= env_const * e^{-gamma|x|^2}; the claim
    is re-verified on a sample grid at registration.  parity is +1/-1 for
    even/odd, 0 for neither.  on_finite_degree bounds the O(n)-harmonic
    content when finite.
    """

    id: str
    n: int
    params: dict
    gamma: float
    parity: int
    radial: bool
    on_finite_degree: Optional[int]
    gausspoly: Optional[GaussPoly]
    norm_sq: Optional[float]
    bandwidth: tuple
    env_const: float = 0.0
    _evaluate: Callable = None
    _fourier_factory: Optional[Callable] = None

    def evaluate(self, *coords):
        if len(coords) != self.n:
            raise ValueError("expected %d coordinates" % self.n)
        return self._evaluate(*[np.asarray(c, dtype=float) for c in coords])

    def fourier_spec(self) -> "FunctionSpec":
        """Closed-form unitary Fourier transform as a registered function."""
        if self._fourier_factory is None:
            raise ValueError("no closed-form transform recorded for %s" % self.id)
        return self._fourier_factory()

    def osc_bandwidth(self, radius: float) -> float:
        """Max local wavenumber of f over |x| <= radius."""
        b0, b1 = self.bandwidth
        return b0 + b1 * radius

    # -- Wigner-field metadata ------------------------------------------------

    def _v_form_rates(self):
        # |V(f,f)| ~ e^{-(q/4)|y|^2 - |x - beta(y2,y1)|^2/(4q)}: on each coupled
        # coordinate pair the quadratic form has trace (1+q^2+beta^2)/(4q) and
        # determinant exactly 1/16, so both eigenvalues are always positive.
        if self.gausspoly is None:
            raise ValueError("Wigner metadata needs a Gaussian normal form")
        q, beta = self.gausspoly.q, self.gausspoly.beta
        tr = (1.0 + q * q + beta * beta) / (4.0 * q)
        half_gap = math.sqrt(max(0.25 * tr * tr - 1.0 / 16.0, 0.0))
        return 0.5 * tr - half_gap, 0.5 * tr + half_gap

    def v_envelope(self) -> float:
        """Worst-direction quadratic decay rate of |V(f,f)| on C^n."""
        return self._v_form_rates()[0]

    def wigner_radius(self) -> float:
        r = math.sqrt(_TAIL18 / self.v_envelope())
        if self.gausspoly.degree:
            r += 1.0
        return r

    def wigner_angular_rate(self, rho: float) -> float:
        """Exponent width of the angular variation of V(f,f) at |z| = rho."""
        lo, hi = self._v_form_rates()
        return rho * rho * (hi - lo)

    def radial_profile(self) -> "RadialProfile":
        if not self.radial:
            raise ValueError("%s is not radial" % self.id)
        if self.n == 1:
            fn = lambda s: self._evaluate(np.asarray(s, dtype=float))
        else:
            fn = lambda s: self._evaluate(
                np.asarray(s, dtype=float), np.zeros_like(np.asarray(s, dtype=float))
            )
        return RadialProfile("radial(%s)" % self.id, self.gamma, fn, dict(self.params))


@dataclass
class RadialProfile:
    """Profile g(s) on s >= 0 with envelope |g| <= C e^{-c s^2}.

    ``degree`` and ``log_coeff`` bound a polynomial prefactor: the tail obeys
    |g(s)| <= e^{log_coeff} s^degree e^{-c s^2}, which quadrature radius
    selection folds in (high-order Laguerre profiles would otherwise be
    truncated too early).
    """

    id: str
    c: float
    _evaluate: Callable
    params: dict
    degree: int = 0
    log_coeff: float = 0.0

    def evaluate(self, s):
        return self._evaluate(np.asarray(s, dtype=float))


# ---------------------------------------------------------------------------
# envelope verification

def _verify_envelope(spec: FunctionSpec) -> float:
    if spec.n == 1:
        xs = np.linspace(-10.0, 10.0, 801)
        vals = np.abs(spec.evaluate(xs))
        sup = float(np.max(vals * np.exp(spec.gamma * xs * xs)))
    else:
        xs = np.linspace(-10.0, 10.0, 161)
        x1, x2 = np.meshgrid(xs, xs, indexing="ij")
        vals = np.abs(spec.evaluate(x1, x2))
        sup = float(np.max(vals * np.exp(spec.gamma * (x1 * x1 + x2 * x2))))
    if not math.isfinite(sup) or sup > 1e12:
        raise ValueError("declared envelope fails for %s (sup %.3g)" % (spec.id, sup))
    return max(sup, 1.0)


def _register(spec: FunctionSpec) -> FunctionSpec:
    spec.env_const = _verify_envelope(spec)
    return spec


# ---------------------------------------------------------------------------
# families


def _build_gaussian(b: float, n: int) -> FunctionSpec:
    if b <= 0.0:
        raise ValueError("gaussian requires b > 0")
    gp = GaussPoly(n, b, 0.0, ((tuple([0] * n), 1.0 + 0.0j),))

    def ft():
        # b^{-n/2} e^{-|xi|^2/(2b)} under the unitary convention
        scale = b ** (-0.5 * n)
        q2 = 1.0 / b
        spec = FunctionSpec(
            id="gaussian(b=%g,n=%d)^" % (b, n),
            n=n,
            params={"b": b},
            gamma=0.5 * q2,
            parity=1,
            radial=True,
            on_finite_degree=0,
            gausspoly=GaussPoly(n, q2, 0.0, ((tuple([0] * n), scale + 0.0j),)),
            norm_sq=scale * scale * (math.pi / q2) ** (0.5 * n),
            bandwidth=(0.0, 0.0),
            _evaluate=lambda *cs: scale
            * np.exp(-0.5 * q2 * sum(c * c for c in cs))
            + 0.0j,
            _fourier_factory=None,
        )
        return _register(spec)

    return _register(
        FunctionSpec(
            id="gaussian(b=%g,n=%d)" % (b, n),
            n=n,
            params={"b": b},
            gamma=0.5 * b,
            parity=1,
            radial=True,
            on_finite_degree=0,
            gausspoly=gp,
            norm_sq=(math.pi / b) ** (0.5 * n),
            bandwidth=(0.0, 0.0),
            _evaluate=lambda *cs: np.exp(-0.5 * b * sum(c * c for c in cs))
            + 0.0j,
            _fourier_factory=ft,
        )
    )


def _build_example44(a: float) -> FunctionSpec:
    """Oscillating Gaussian e^{-(a/2)(x1^2+x2^2+2i x1 x2)} on R^2."""
    if not 0.0 < a < 1.0:
        raise ValueError("example44 requires 0 < a < 1")
    gp = GaussPoly(2, a, a, (((0, 0), 1.0 + 0.0j),))

    def ev(x1, x2):
        return np.exp(-0.5 * a * (x1 * x1 + x2 * x2 + 2j * x1 * x2))

    def ft():
        # unitary transform: constant (2a^2)^{-1/2}, rate 1/(2a), conjugate phase
        q2 = 1.0 / (2.0 * a)
        scale = (2.0 * a * a) ** -0.5
        spec = FunctionSpec(
            id="example44(a=%g)^" % a,
            n=2,
            params={"a": a},
            gamma=0.5 * q2,
            parity=1,
            radial=False,
            on_finite_degree=None,
            gausspoly=GaussPoly(2, q2, -q2, (((0, 0), scale + 0.0j),)),
            norm_sq=scale * scale * math.pi / q2,
            bandwidth=(0.0, q2),
            _evaluate=lambda y1, y2: scale
            * np.exp(-0.5 * q2 * (y1 * y1 + y2 * y2 - 2j * y1 * y2)),
            _fourier_factory=None,
        )
        return _register(spec)

    return _register(
        FunctionSpec(
            id="example44(a=%g)" % a,
            n=2,
            params={"a": a},
            gamma=0.5 * a,
            parity=1,
            radial=False,
            on_finite_degree=None,
            gausspoly=gp,
            norm_sq=math.pi / a,
            bandwidth=(0.0, a),
            _evaluate=ev,
            _fourier_factory=ft,
        )
    )


def _build_hermite_1d(k: int) -> FunctionSpec:
    if k < 0:
        raise ValueError("hermite degree must be >= 0")
    gp = None
    if k <= _POLY_DEGREE_CAP:
        coeffs = _hermite_poly_coeffs(k)
        gp = GaussPoly(
            1,
            1.0,
            0.0,
            tuple(((j,), complex(c)) for j, c in enumerate(coeffs) if c != 0.0),
        )

    def ft():
        base = _build_hermite_1d(k)
        phase = (-1j) ** k
        base.id = "hermite(k=%d)^" % k
        inner = base._evaluate
        base._evaluate = lambda x: phase * inner(x)
        if base.gausspoly is not None:
            base.gausspoly = base.gausspoly.scaled(phase)
        base._fourier_factory = None
        return base

    return _register(
        FunctionSpec(
            id="hermite(k=%d)" % k,
            n=1,
            params={"k": k},
            gamma=0.45,
            parity=-1 if k % 2 else 1,
            radial=False,
            on_finite_degree=k,
            gausspoly=gp,
            norm_sq=1.0,
            bandwidth=(math.sqrt(2.0 * k + 1.0), 0.0),
            _evaluate=lambda x: special.hermite_phi(k, x) + 0.0j,
            _fourier_factory=ft,
        )
    )


def _build_hermite_2d(k1: int, k2: int) -> FunctionSpec:
    if min(k1, k2) < 0:
        raise ValueError("hermite degrees must be >= 0")
    gp = None
    if max(k1, k2) <= _POLY_DEGREE_CAP:
        c1 = _hermite_poly_coeffs(k1)
        c2 = _hermite_poly_coeffs(k2)
        terms = {}
        for i, a in enumerate(c1):
            if a == 0.0:
                continue
            for j, b in enumerate(c2):
                if b != 0.0:
                    terms[(i, j)] = complex(a * b)
        gp = GaussPoly(2, 1.0, 0.0, tuple(sorted(terms.items())))

    def ft():
        base = _build_hermite_2d(k1, k2)
        phase = (-1j) ** (k1 + k2)
        base.id = "hermite(k1=%d,k2=%d)^" % (k1, k2)
        inner = base._evaluate
        base._evaluate = lambda x1, x2: phase * inner(x1, x2)
        if base.gausspoly is not None:
            base.gausspoly = base.gausspoly.scaled(phase)
        base._fourier_factory = None
        return base

    return _register(
        FunctionSpec(
            id="hermite(k1=%d,k2=%d)" % (k1, k2),
            n=2,
            params={"k1": k1, "k2": k2},
            gamma=0.45,
            parity=-1 if (k1 + k2) % 2 else 1,
            radial=(k1 == 0 and k2 == 0),
            on_finite_degree=k1 + k2,
            gausspoly=gp,
            norm_sq=1.0,
            bandwidth=(math.sqrt(2.0 * max(k1, k2) + 1.0), 0.0),
            _evaluate=lambda x1, x2: special.hermite_phi(k1, x1)
            * special.hermite_phi(k2, x2)
            + 0.0j,
            _fourier_factory=ft,
        )
    )


def _build_gauss_harmonic(b: float, m: int, kind: str) -> FunctionSpec:
    """e^{-b|x|^2/2} times a degree-m circular harmonic on R^2."""
    if b <= 0.0:
        raise ValueError("gauss_harmonic requires b > 0")
    if m < 0:
        raise ValueError("harmonic degree must be >= 0")
    if kind not in ("cos", "sin", "complex"):
        raise ValueError("kind must be cos, sin, or complex")
    terms = _solid_harmonic_terms(m, kind)
    gp = GaussPoly(2, b, 0.0, terms)

    if m == 0:
        norm_sq = 2.0 * math.pi / (2.0 * b)
    else:
        angular = math.pi if kind in ("cos", "sin") else 2.0 * math.pi
        norm_sq = angular * math.gamma(m + 1.0) / (2.0 * b ** (m + 1))

    def ev(x1, x2):
        return gp.evaluate(x1, x2)

    def ft():
        # Hecke-Bochner: harmonic factor passes through, rate inverts
        scale = (-1j) ** m * b ** -(1.0 + m)
        q2 = 1.0 / b
        spec = FunctionSpec(
            id="gauss_harmonic(b=%g,m=%d,%s)^" % (b, m, kind),
            n=2,
            params={"b": b, "m": m, "kind": kind},
            gamma=0.5 * q2 if m == 0 else 0.45 * q2,
            parity=-1 if m % 2 else 1,
            radial=(m == 0),
            on_finite_degree=m,
            gausspoly=GaussPoly(2, q2, 0.0, terms).scaled(scale),
            norm_sq=abs(scale) ** 2
            * (
                2.0 * math.pi / (2.0 * q2)
                if m == 0
                else (math.pi if kind in ("cos", "sin") else 2.0 * math.pi)
                * math.gamma(m + 1.0)
                / (2.0 * q2 ** (m + 1))
            ),
            bandwidth=(0.0, 0.0),
            _evaluate=lambda y1, y2: scale
            * GaussPoly(2, q2, 0.0, terms).evaluate(y1, y2),
            _fourier_factory=None,
        )
        return _register(spec)

    return _register(
        FunctionSpec(
            id="gauss_harmonic(b=%g,m=%d,%s)" % (b, m, kind),
            n=2,
            params={"b": b, "m": m, "kind": kind},
            gamma=0.5 * b if m == 0 else 0.45 * b,
            parity=-1 if m % 2 else 1,
            radial=(m == 0),
            on_finite_degree=m,
            gausspoly=gp,
            norm_sq=norm_sq,
            bandwidth=(0.0, 0.0),
            _evaluate=ev,
            _fourier_factory=ft,
        )
    )


# ---------------------------------------------------------------------------
# parsing

_FAMILIES = {
    "gaussian": {
        "params": "b (rate > 0); dimension from --n",
        "dims": (1, 2),
    },
    "hermite": {
        "params": "k (n=1) or k1,k2 (n=2)",
        "dims": (1, 2),
    },
    "example44": {
        "params": "a in (0,1), default 2^{-1/2}",
        "dims": (2,),
    },
    "gauss_harmonic": {
        "params": "b > 0, m >= 0, kind in {cos,sin,complex}",
        "dims": (2,),
    },
}


def list_functions():
    """Family names with parameter summaries, for the CLI."""
    return {name: dict(info) for name, info in sorted(_FAMILIES.items())}


def _parse_kv(text: str) -> dict:
    out = {}
    if not text:
        return out
    for piece in text.split(","):
        if "=" not in piece:
            raise ValueError("malformed parameter %r (expected key=value)" % piece)
        key, val = piece.split("=", 1)
        key = key.strip()
        val = val.strip()
        if not key:
            raise ValueError("empty parameter name")
        try:
            out[key] = int(val)
        except ValueError:
            try:
                out[key] = float(val)
            except ValueError:
                out[key] = val
    return out


@lru_cache(maxsize=256)
def _make_function_cached(text: str, n) -> FunctionSpec:
    name, _, rest = text.partition(":")
    name = name.strip()
    kv = _parse_kv(rest.strip())
    if name == "gaussian":
        extra = set(kv) - {"b"}
        if extra:
            raise ValueError("unknown gaussian parameters: %s" % sorted(extra))
        if "b" not in kv:
            raise ValueError("gaussian requires b")
        dim = 1 if n is None else int(n)
        if dim not in (1, 2):
            raise ValueError("gaussian supports n in {1, 2}")
        return _build_gaussian(float(kv["b"]), dim)
    if name == "hermite":
        if {"k1", "k2"} <= set(kv):
            extra = set(kv) - {"k1", "k2"}
            if extra:
                raise ValueError("unknown hermite parameters: %s" % sorted(extra))
            if n not in (None, 2):
                raise ValueError("k1,k2 form is two-dimensional")
            return _build_hermite_2d(int(kv["k1"]), int(kv["k2"]))
        if "k" in kv:
            extra = set(kv) - {"k"}
            if extra:
                raise ValueError("unknown hermite parameters: %s" % sorted(extra))
            if n not in (None, 1):
                raise ValueError("k form is one-dimensional")
            return _build_hermite_1d(int(kv["k"]))
        raise ValueError("hermite requires k or k1,k2")
    if name == "example44":
        extra = set(kv) - {"a"}
        if extra:
            raise ValueError("unknown example44 parameters: %s" % sorted(extra))
        if n not in (None, 2):
            raise ValueError("example44 is two-dimensional")
        return _build_example44(float(kv.get("a", 2.0 ** -0.5)))
    if name == "gauss_harmonic":
        extra = set(kv) - {"b", "m", "kind"}
        if extra:
            raise ValueError("unknown gauss_harmonic parameters: %s" % sorted(extra))
        if "b" not in kv or "m" not in kv:
            raise ValueError("gauss_harmonic requires b and m")
        if n not in (None, 2):
            raise ValueError("gauss_harmonic is two-dimensional")
        return _build_gauss_harmonic(
            float(kv["b"]), int(kv["m"]), str(kv.get("kind", "cos"))
        )
    raise ValueError("unknown function %r" % name)


def make_function(text: str, n: Optional[int] = None) -> FunctionSpec:
    """Build a registered function from 'name:key=val,...' syntax."""
    return _make_function_cached(text, n)


# ---------------------------------------------------------------------------
# radial profiles (for the Hankel-side transforms)


@lru_cache(maxsize=256)
def _make_profile_cached(text: str) -> RadialProfile:
    name, _, rest = text.partition(":")
    name = name.strip()
    kv = _parse_kv(rest.strip())
    if name == "gauss":
        c = float(kv.get("c", 1.0))
        if c <= 0.0:
            raise ValueError("gauss profile requires c > 0")
        extra = set(kv) - {"c"}
        if extra:
            raise ValueError("unknown gauss parameters: %s" % sorted(extra))
        return RadialProfile(
            "gauss(c=%g)" % c,
            c,
            lambda s: np.exp(-c * np.asarray(s, dtype=float) ** 2) + 0.0j,
            {"c": c},
        )
    if name == "gaussmix":
        if kv:
            raise ValueError("gaussmix takes no parameters")
        return RadialProfile(
            "gaussmix",
            1.0,
            lambda s: np.exp(-np.asarray(s, dtype=float) ** 2)
            + 0.5 * np.exp(-2.0 * np.asarray(s, dtype=float) ** 2)
            + 0.0j,
            {},
        )
    if name == "psi":
        extra = set(kv) - {"k", "delta"}
        if extra:
            raise ValueError("unknown psi parameters: %s" % sorted(extra))
        if "k" not in kv or "delta" not in kv:
            raise ValueError("psi requires k and delta")
        k = int(kv["k"])
        delta = float(kv["delta"])
        if delta <= -0.5:
            raise ValueError("psi requires delta > -1/2")
        return RadialProfile(
            "psi(k=%d,delta=%g)" % (k, delta),
            0.5,
            lambda s: special.laguerre_psi(k, delta, s) + 0.0j,
            {"k": k, "delta": delta},
            degree=2 * k,
            log_coeff=-float(special.log_gamma(k + 1)),
        )
    raise ValueError("unknown profile %r" % name)


def make_profile(text: str) -> RadialProfile:
    """Build a radial profile from 'name:key=val,...' syntax."""
    return _make_profile_cached(text)


def profile_from_callable(ident: str, c: float, fn: Callable) -> RadialProfile:
    if c <= 0.0:
        raise ValueError("envelope rate must be positive")
    return RadialProfile(ident, c, lambda s: np.asarray(fn(np.asarray(s, dtype=float))), {})
