"""Deterministic quadrature rules.

Gaussian-weighted lines, truncated radial half-lines with weight s^(2*delta+1),
the unit spheres in R^2 and R^4, and compact tensor grids over C^n identified
with R^(2n).  Rule construction is pure and reproducible; weighted sums reduce
in fixed (numpy pairwise) order so results are bit-identical across runs and
thread counts.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import ai_zeros

from . import special

_TINY = 5e-324  # smallest positive subnormal, keeps "weights > 0" after underflow
_NODE_BUDGET = 400_000_000


@dataclass(frozen=True)
class QuadratureRule:
    kind: str
    nodes: np.ndarray
    weights: np.ndarray
    meta: dict = field(default_factory=dict)

    def integrate(self, values: np.ndarray):
        values = np.asarray(values)
        return np.sum(self.weights * values, axis=-1)

    def integrate_f(self, f):
        if self.nodes.ndim == 1:
            return self.integrate(f(self.nodes))
        return self.integrate(f(self.nodes.T))

    @property
    def node_count(self) -> int:
        return self.nodes.shape[0]


@dataclass(frozen=True)
class TensorRule:
    """Tensor-product rule over R^(2n), stored one axis at a time.

    The full node set is never materialized implicitly: at the supported sizes
    it can reach 4e8 points, so consumers stream over axis arrays (see the
    transforms module) or call materialize() for small rules.
    """

    kind: str
    axis_nodes: np.ndarray  # shape (per_axis,), shared by all 2n axes
    axis_weights: np.ndarray
    dim: int  # 2n
    meta: dict = field(default_factory=dict)

    @property
    def node_count(self) -> int:
        return self.axis_nodes.size ** self.dim

    def materialize(self, budget: int = 2_000_000):
        if self.node_count > budget:
            raise ValueError(
                f"refusing to materialize {self.node_count} tensor nodes; "
                "stream over axis_nodes instead"
            )
        grids = np.meshgrid(*([self.axis_nodes] * self.dim), indexing="ij")
        pts = np.stack([g.ravel() for g in grids], axis=-1)
        wts = np.ones(1)
        for _ in range(self.dim):
            wts = np.multiply.outer(wts, self.axis_weights).ravel()
        return pts, wts

    def integrate_f(self, f):
        pts, wts = self.materialize()
        return np.sum(wts * f(pts.T))


@dataclass(frozen=True)
class ConvergenceReport:
    value: complex
    value_at_half_resolution: complex
    est_rel_err: float


def report(value, value_at_half) -> ConvergenceReport:
    err = abs(value - value_at_half) / max(abs(value), 1e-300)
    return ConvergenceReport(value, value_at_half, float(err))


# ---------------------------------------------------------------------------
# Gauss-Hermite


def _tricomi_tau(n: int, k: np.ndarray) -> np.ndarray:
    # solve tau - sin(tau) = c_k, Newton from pi/2
    a = n % 2 - 0.5
    c = (4.0 * math.floor(n / 2.0) - 4.0 * k + 3.0) * math.pi / (
        4.0 * math.floor(n / 2.0) + 2.0 * a + 2.0
    )
    x = np.full_like(c, 0.5 * math.pi)
    for _ in range(8):
        x = x - (x - np.sin(x) - c) / (1.0 - np.cos(x))
    return x


def _tricomi_guess_sq(n: int, k: np.ndarray) -> np.ndarray:
    tau = _tricomi_tau(n, k)
    sig = np.cos(0.5 * tau) ** 2
    a = n % 2 - 0.5
    nu = 4.0 * math.floor(n / 2.0) + 2.0 * a + 2.0
    return nu * sig - (1.0 / (3.0 * nu)) * (
        5.0 / (4.0 * (1.0 - sig) ** 2) - 1.0 / (1.0 - sig) - 0.25
    )


def _gatteschi_guess_sq(n: int, k: np.ndarray) -> np.ndarray:
    a = n % 2 - 0.5
    nu = 4.0 * math.floor(n / 2.0) + 2.0 * a + 2.0
    ak = ai_zeros(int(k.max()))[0][k - 1]  # k-th negative zero of Airy Ai
    return (
        nu
        + 2.0 ** (2.0 / 3.0) * ak * nu ** (1.0 / 3.0)
        + 0.2 * 2.0 ** (4.0 / 3.0) * ak**2 * nu ** (-1.0 / 3.0)
        + (9.0 / 140.0 - 12.0 / 175.0 * ak**3) / nu
        + (16.0 / 1575.0 * ak + 92.0 / 7875.0 * ak**4) * 2.0 ** (2.0 / 3.0) * nu ** (-5.0 / 3.0)
        - (15152.0 / 3031875.0 * ak**5 + 1088.0 / 121275.0 * ak**2)
        * 2.0 ** (1.0 / 3.0)
        * nu ** (-7.0 / 3.0)
    )


def _hermite_initial_guesses(n: int) -> np.ndarray:
    """Positive-root guesses, ascending, excluding the odd central zero."""
    half = n // 2
    if half == 0:
        return np.zeros(0)
    turnover = int(round(0.49082003 * n - 4.37859653))
    ia = np.arange(1, half + 1)
    ib = ia[::-1]
    # negative turnover deliberately falls through to python slice semantics
    ia_sl = ia[: turnover + 1]
    ib_sl = ib[turnover + 1 :]
    xa = _tricomi_guess_sq(n, ia_sl) if ia_sl.size else np.zeros(0)
    xb = _gatteschi_guess_sq(n, ib_sl) if ib_sl.size else np.zeros(0)
    sq = np.concatenate([xa, xb])
    if sq.size != half or np.any(sq <= 0.0):
        raise RuntimeError("hermite initial guesses invalid")
    return np.sqrt(sq)


def _hermite_terminal_pair(n: int, x: np.ndarray):
    """Scaled (Phi_{n-1}, Phi_n) on a common scale, plus sum of Phi_k^2, k < n."""
    x = np.asarray(x, dtype=float)
    base_log = -0.5 * x * x - 0.25 * math.log(math.pi)
    emitter = special._ScaledEmitter(base_log)
    p_prev = np.zeros_like(x)
    p_cur = np.ones_like(x)
    sumsq = np.zeros_like(x)
    for k in range(n):
        s = emitter.scale()
        sumsq = sumsq + (p_cur * s) ** 2
        nxt = x * math.sqrt(2.0 / (k + 1)) * p_cur - math.sqrt(k / (k + 1.0)) * p_prev
        p_prev, p_cur = p_cur, nxt
        if k % 16 == 15:
            p_prev, p_cur = special._renorm(p_prev, p_cur, emitter)
    return p_prev, p_cur, emitter, sumsq


def gauss_hermite(N: int) -> QuadratureRule:
    """N-point Gauss rule for the weight e^{-x^2} on the line.

    Nodes are Hermite-polynomial roots refined by Newton iteration on the
    orthonormal recurrence from Tricomi (central) and Airy-corrected (edge)
    first approximations.  ``weights`` carries the classical e^{-x^2}-weighted
    Christoffel numbers; ``meta`` additionally holds ``total_weights`` (for
    integrals of Gaussian-decaying functions against dx) and ``log_weights``.
    """
    if not isinstance(N, (int, np.integer)) or not 1 <= N <= 500:
        raise ValueError("gauss_hermite requires integer 1 <= N <= 500")
    N = int(N)
    x = _hermite_initial_guesses(N)
    if x.size:
        converged = False
        for _ in range(100):
            p_prev, p_cur, _, _ = _hermite_terminal_pair(N, x)
            deriv = math.sqrt(2.0 * N) * p_prev - x * p_cur
            dx = p_cur / deriv
            x = x - dx
            if np.max(np.abs(dx)) <= 1e-14 * (1.0 + np.max(np.abs(x))):
                converged = True
                break
        if not converged:
            raise RuntimeError("gauss_hermite Newton failed to converge in 100 iterations")

    pos = np.sort(x)
    if N % 2 == 1:
        half_nodes = np.concatenate([[0.0], pos])
    else:
        half_nodes = pos
    _, _, _, sumsq = _hermite_terminal_pair(N, half_nodes)
    total_half = 1.0 / sumsq
    with np.errstate(under="ignore"):
        w_half = np.exp(-half_nodes * half_nodes) * total_half
    w_half = np.maximum(w_half, _TINY)
    log_w_half = -half_nodes * half_nodes + np.log(total_half)

    nodes = np.concatenate([-pos[::-1], half_nodes])
    weights = np.concatenate([w_half[-len(pos) :][::-1] if len(pos) else w_half[:0], w_half])
    totals = np.concatenate([total_half[-len(pos) :][::-1] if len(pos) else w_half[:0], total_half])
    log_w = np.concatenate([log_w_half[-len(pos) :][::-1] if len(pos) else w_half[:0], log_w_half])

    if np.any(np.diff(nodes) <= 0.0):
        raise RuntimeError("gauss_hermite produced non-increasing nodes")
    if abs(float(np.sum(weights)) - math.sqrt(math.pi)) > 1e-10:
        raise RuntimeError("gauss_hermite weight sum check failed")
    return QuadratureRule(
        kind="gauss_hermite",
        nodes=nodes,
        weights=weights,
        meta={"N": N, "total_weights": totals, "log_weights": log_w},
    )


# ---------------------------------------------------------------------------
# mapped Legendre family


def mapped_legendre(N: int, a: float, b: float) -> QuadratureRule:
    if not 1 <= N <= 2000:
        raise ValueError("mapped_legendre requires 1 <= N <= 2000")
    if not a < b:
        raise ValueError("mapped_legendre requires a < b")
    base, wts = leggauss(int(N))
    mid, ha = 0.5 * (a + b), 0.5 * (b - a)
    return QuadratureRule(
        kind="mapped_legendre",
        nodes=mid + ha * base,
        weights=ha * wts,
        meta={"N": int(N), "a": float(a), "b": float(b)},
    )


def radial_rule(delta: float, R: float, N: int = 200) -> QuadratureRule:
    """Rule for integrals int_0^inf g(s) s^(2*delta+1) ds, g Gaussian-decaying.

    Truncated to [0, R]; the caller picks R so the integrand envelope is below
    1e-18 there.  Consumers needing an error estimate rerun at N//2 and build a
    ConvergenceReport.
    """
    if delta <= -0.5:
        raise ValueError("radial_rule requires delta > -1/2")
    if R <= 0.0:
        raise ValueError("radial_rule requires R > 0")
    base = mapped_legendre(N, 0.0, R)
    return QuadratureRule(
        kind="radial",
        nodes=base.nodes,
        weights=base.weights * np.power(base.nodes, 2.0 * delta + 1.0),
        meta={"N": int(N), "R": float(R), "delta": float(delta)},
    )


def sphere_rule(n: int, resolution: int = 0) -> QuadratureRule:
    """Surface rule on the unit sphere of C^n = R^(2n), n in {1, 2}.

    n=1: M-point trapezoid on the circle (exact for trig degree < M), nodes as
    (x, y) pairs, resolution = M (default 256).
    n=2: Hopf-coordinate product rule z = (cos(eta) e^{i th1}, sin(eta) e^{i th2}),
    surface element cos(eta) sin(eta) d(eta) d(th1) d(th2); trapezoid in both
    angles, mapped Gauss-Legendre in eta; resolution r gives (r, r, r//2)
    (default 64).  Nodes as (x1, y1, x2, y2) rows.
    """
    if n == 1:
        M = int(resolution) if resolution else 256
        if M < 1:
            raise ValueError("sphere_rule resolution must be positive")
        theta = 2.0 * math.pi * np.arange(M) / M
        nodes = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
        weights = np.full(M, 2.0 * math.pi / M)
        return QuadratureRule("sphere_S1", nodes, weights, {"M": M})
    if n == 2:
        r = int(resolution) if resolution else 64
        if r < 2:
            raise ValueError("sphere_rule resolution must be >= 2")
        M1, M2, Ne = r, r, max(r // 2, 1)
        th1 = 2.0 * math.pi * np.arange(M1) / M1
        th2 = 2.0 * math.pi * np.arange(M2) / M2
        eta_rule = mapped_legendre(Ne, 0.0, 0.5 * math.pi)
        eta, weta = eta_rule.nodes, eta_rule.weights
        E, T1, T2 = np.meshgrid(eta, th1, th2, indexing="ij")
        ce, se = np.cos(E), np.sin(E)
        nodes = np.stack(
            [
                (ce * np.cos(T1)).ravel(),
                (ce * np.sin(T1)).ravel(),
                (se * np.cos(T2)).ravel(),
                (se * np.sin(T2)).ravel(),
            ],
            axis=-1,
        )
        wfull = (
            (weta * np.cos(eta) * np.sin(eta))[:, None, None]
            * np.full((M1, 1), 2.0 * math.pi / M1)[None, :, :]
            * np.full((1, M2), 2.0 * math.pi / M2)[None, :, :]
        )
        return QuadratureRule(
            "sphere_S3", nodes, wfull.ravel(), {"M1": M1, "M2": M2, "N_eta": Ne}
        )
    raise ValueError("sphere_rule supports n in {1, 2}")


def tensor_rule(n: int, per_axis: int = 48, R: float = 12.0) -> TensorRule:
    """Tensor product of mapped_legendre(per_axis, -R, R) over the 2n real axes."""
    if n not in (1, 2):
        raise ValueError("tensor_rule supports n in {1, 2}")
    if per_axis ** (2 * n) > _NODE_BUDGET:
        raise ValueError("tensor_rule node budget (4e8) exceeded")
    base = mapped_legendre(per_axis, -R, R)
    return TensorRule(
        kind="tensor",
        axis_nodes=base.nodes,
        axis_weights=base.weights,
        dim=2 * n,
        meta={"n": n, "per_axis": int(per_axis), "R": float(R)},
    )


# ---------------------------------------------------------------------------
# disk cache (optimization only; results identical with cache disabled)


def _rule_record(rule) -> dict:
    if isinstance(rule, TensorRule):
        return {
            "kind": rule.kind,
            "params": {k: v for k, v in rule.meta.items()},
            "nodes": rule.axis_nodes.tolist(),
            "weights": rule.axis_weights.tolist(),
            "dim": rule.dim,
        }
    params = {k: v for k, v in rule.meta.items() if not isinstance(v, np.ndarray)}
    rec = {
        "kind": rule.kind,
        "params": params,
        "nodes": rule.nodes.tolist(),
        "weights": rule.weights.tolist(),
    }
    for k, v in rule.meta.items():
        if isinstance(v, np.ndarray):
            rec[k] = v.tolist()
    return rec


def _rule_from_record(rec: dict):
    if rec["kind"] == "tensor":
        return TensorRule(
            kind="tensor",
            axis_nodes=np.array(rec["nodes"]),
            axis_weights=np.array(rec["weights"]),
            dim=int(rec["dim"]),
            meta=rec["params"],
        )
    meta = dict(rec["params"])
    for k, v in rec.items():
        if k not in ("kind", "params", "nodes", "weights"):
            meta[k] = np.array(v)
    return QuadratureRule(
        kind=rec["kind"],
        nodes=np.array(rec["nodes"]),
        weights=np.array(rec["weights"]),
        meta=meta,
    )


class RuleCache:
    """JSON-on-disk memo for constructed rules, keyed by kind and parameters."""

    def __init__(self, directory: Optional[str] = None):
        if directory is None:
            directory = os.environ.get("HERMEX_CACHE") or None
        self.directory = directory

    def _path(self, kind: str, **params) -> str:
        key = "_".join(f"{k}-{params[k]}" for k in sorted(params))
        return os.path.join(self.directory, f"{kind}_{key}.json")

    def get(self, kind: str, **params):
        builders = {
            "gauss_hermite": gauss_hermite,
            "mapped_legendre": mapped_legendre,
            "radial": radial_rule,
            "sphere": sphere_rule,
            "tensor": tensor_rule,
        }
        build = builders[kind]
        if not self.directory:
            return build(**params)
        path = self._path(kind, **params)
        if os.path.exists(path):
            with open(path, "r") as fh:
                return _rule_from_record(json.load(fh))
        rule = build(**params)
        os.makedirs(self.directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(_rule_record(rule), fh, sort_keys=True, separators=(",", ":"))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return rule
