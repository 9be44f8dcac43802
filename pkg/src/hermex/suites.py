"""Named verification bundles behind the ``verify`` command.

Each suite recomputes one family of identities from scratch and reports a
row per check; a row records the input it ran on, the measured number and
the tolerance it was held to.  The suite passes only when every row does.
Row values depend on fixed grids and fixed seeds, never on the worker
count, so reports are byte-identical across thread settings.
"""

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import decay, functions, hermite, quadrature, special, transforms

SUITES = (
    "orthonormality",
    "fourier-eigen",
    "wigner-identity",
    "hankel-eigen",
    "udelta",
    "cholewinski",
    "example44",
    "routes",
    "radialization",
    "vector-bargmann",
    "lemma55",
    "theorems",
)

# three-route projection battery; two plain Gaussians, the skew-Gaussian
# pair and a single-harmonic member
ROUTE_BATTERY = (
    "gaussian:b=0.5",
    "gaussian:b=0.7",
    "example44",
    "gauss_harmonic:b=0.5,m=2,kind=cos",
)

CHAIN_BATTERY = ("gaussian:b=0.5", "gaussian:b=0.7", "example44")


def _row(name, inp, measured, tolerance, cmp="lt", also=True):
    measured = float(measured)
    tolerance = float(tolerance)
    if cmp == "lt":
        ok = measured < tolerance
    elif cmp == "le":
        ok = measured <= tolerance
    elif cmp == "ge":
        ok = measured >= tolerance
    elif cmp == "gt":
        ok = measured > tolerance
    else:
        raise ValueError("unknown comparison %r" % cmp)
    return {
        "name": name,
        "input": inp,
        "measured": measured,
        "tolerance": tolerance,
        "pass": bool(ok and also),
    }


def _pmap(threads, fn, items):
    """Ordered map over independent work items.

    Items must not share mutable state; results are gathered in input order
    so reports do not depend on scheduling.
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as ex:
        return list(ex.map(fn, items))


# ---------------------------------------------------------------------------
# eigenfunction families


def _suite_orthonormality(threads):
    # trapezoid step 0.01 is spectrally accurate for these integrands
    kmax = 40
    xs = np.arange(-15.0, 15.0 + 1e-12, 0.01)
    phi = special.hermite_phi_all(kmax, xs)
    G = (phi * 0.01) @ phi.T
    dev = float(np.max(np.abs(G - np.eye(kmax + 1))))
    return [_row("phi-gram-max-dev", "n=1, j,k<=40", dev, 1e-10)]


def _suite_fourier_eigen(threads):
    xs = np.linspace(-6.0, 6.0, 25).reshape(-1, 1)

    def image_dev(k):
        f = functions.make_function("hermite:k=%d" % k, n=1)
        got = transforms.fourier_many(f, frozenset([1]), xs)
        ref = (-1j) ** k * special.hermite_phi(k, xs[:, 0])
        return float(np.max(np.abs(got - ref)))

    devs = _pmap(threads, image_dev, range(21))
    rows = [_row("hermite-image-max-dev", "n=1, k<=20, |x|<=6", max(devs), 1e-8)]

    zs1 = np.array([0.3 + 0.4j, 1.0 + 0.0j, 2.0j, 1.5 - 2.5j]).reshape(-1, 1)
    zs2 = np.array(
        [[0.5 + 0.2j, -0.3 + 0.1j], [1.0 + 1.0j, 0.5 - 0.5j], [2.0 + 0.0j, 1.5j]]
    )
    rr2 = np.sqrt(np.sum(np.abs(zs2) ** 2, axis=1))

    def symplectic_dev(arg):
        k, n = arg
        F = transforms.phi_field(k, n)
        zs = zs1 if n == 1 else zs2
        got = transforms.symplectic_fourier_many(F, zs)
        rr = np.abs(zs1[:, 0]) if n == 1 else rr2
        ref = (-1.0) ** k * special.varphi(k, n, rr)
        return float(np.max(np.abs(got - ref)))

    for n in (1, 2):
        devs = _pmap(threads, symplectic_dev, [(k, n) for k in range(7)])
        rows.append(
            _row("symplectic-image-max-dev-n%d" % n, "n=%d, k<=6" % n, max(devs), 1e-7)
        )
    return rows


def _suite_hankel_eigen(threads):
    rs = np.linspace(0.0, 8.0, 33)

    def dev_for(delta):
        worst = 0.0
        for k in range(21):
            prof = functions.make_profile("psi:k=%d,delta=%g" % (k, delta))
            got = transforms.hankel(prof, delta, rs)
            ref = (-1.0) ** k * special.laguerre_psi(k, delta, rs)
            worst = max(worst, float(np.max(np.abs(got - ref))))
        return worst

    deltas = (0.0, 0.5, 1.0, 1.5, 2.0)
    devs = _pmap(threads, dev_for, deltas)
    return [
        _row("psi-image-max-dev", "delta=%g, k<=20, r<=8" % d, v, 1e-8)
        for d, v in zip(deltas, devs)
    ]


# ---------------------------------------------------------------------------
# phase space


def _suite_wigner_identity(threads):
    rows = []
    R = 14.0
    rule = quadrature.mapped_legendre(112, -R, R)
    u, w = rule.nodes, rule.weights
    X, Y = np.meshgrid(u, u, indexing="ij")
    Z = (X + 1j * Y).ravel().reshape(-1, 1)
    W = np.outer(w, w).ravel()
    pairs = [(j, k) for j in range(4) for k in range(4)]

    def pair_values(jk):
        j, k = jk
        fj = functions.make_function("hermite:k=%d" % j, n=1)
        fk = functions.make_function("hermite:k=%d" % k, n=1)
        return transforms.wigner_engine(fj, fk).values(Z)

    V = np.array(_pmap(threads, pair_values, pairs))
    G = (V * W) @ V.conj().T
    off = G - np.diag(np.diag(G))
    rows.append(
        _row(
            "pair-gram-max-offdiag",
            "n=1, V(phi_j, phi_k), j,k<=3",
            float(np.max(np.abs(off))),
            1e-7,
        )
    )
    rows.append(
        _row(
            "pair-gram-diag-dev-from-1",
            "n=1, 16 diagonal norms",
            float(np.max(np.abs(np.diag(G).real - 1.0))),
            1e-7,
        )
    )

    pts = np.array(
        [
            [0.4 + 0.2j, -0.6 + 0.3j],
            [1.0 + 1.0j, 0.5 - 0.5j],
            [2.0 + 0.0j, 0.0 + 1.5j],
            [0.0 + 0.0j, 0.0 + 0.0j],
            [2.5 - 1.0j, 1.5 + 2.0j],
            [0.7 - 0.7j, -1.4 + 0.2j],
        ]
    )
    rr = np.sqrt(np.sum(np.abs(pts) ** 2, axis=1))

    def level_dev(k):
        tot = np.zeros(len(pts), dtype=complex)
        for k1 in range(k + 1):
            f = functions.make_function("hermite:k1=%d,k2=%d" % (k1, k - k1), n=2)
            tot += transforms.wigner_engine(f).values(pts)
        ref = special.varphi(k, 2, rr) / (2.0 * math.pi)
        return float(np.max(np.abs(tot - ref)))

    devs = _pmap(threads, level_dev, range(7))
    rows.append(
        _row("diagonal-sum-max-dev", "n=2, k<=6, 6 points", max(devs), 1e-8)
    )
    return rows


def _suite_routes(threads):
    # The phase-space route certifies each level integral to 1e-8 absolute,
    # so after the square root a vanishing level reads as ~1e-4.  Norms are
    # therefore compared only on levels any route can tell from zero; the
    # single-harmonic member needs a finer grid than the default to keep
    # its level integrals inside that contract at all.
    kmax = 10
    cut = 0.05
    per_axis = {"gauss_harmonic:b=0.5,m=2,kind=cos": 136}

    def row_for(text):
        f = functions.make_function(text, n=2)
        wn, _ = hermite.proj_norms_wigner(f, kmax, per_axis=per_axis.get(text, 0))
        dn = hermite.proj_norms_direct(f, kmax)
        sn = [hermite.proj_norm_spherical(f, k) for k in range(kmax + 1)]
        vmax = float(np.max(dn))
        worst = 0.0
        for k in range(kmax + 1):
            vals = (dn[k], wn[k], sn[k])
            if max(vals) >= cut * vmax:
                worst = max(worst, (max(vals) - min(vals)) / max(vals))
        return _row(
            "route-spread-max-rel",
            "%s, n=2, k<=%d, levels above %g of peak" % (text, kmax, cut),
            worst,
            1e-6,
        )

    return _pmap(threads, row_for, ROUTE_BATTERY)


def _suite_radialization(threads):
    rs = np.linspace(0.5, 6.0, 6)

    def row_for(text):
        f = functions.make_function(text, n=2)
        lhs = transforms.chain_lhs(f, rs)
        rhs = transforms.chain_rhs(f, rs)
        worst = float(np.max(np.abs(lhs - rhs) / (1.0 + np.abs(rhs))))
        return _row("chain-max-rel-dev", "%s, r in [0.5, 6]" % text, worst, 1e-6)

    rows = _pmap(threads, row_for, CHAIN_BATTERY)

    f44 = functions.make_function("example44", n=2)
    F = transforms.wigner_field(f44)
    a = f44.params["a"]
    rr = np.linspace(4.0, 8.0, 9)
    vals = np.array([transforms.radialize(F, r).real for r in rr])
    ratio = vals / np.exp(-(a / 4.0) * rr**2)
    rows.append(
        _row(
            "example44-ratio-min-increment",
            "radialized transform / slow Gaussian, r in [4, 8]",
            float(np.min(np.diff(ratio))),
            0.0,
            cmp="gt",
        )
    )
    return rows


# ---------------------------------------------------------------------------
# Laguerre side


def _suite_udelta(threads):
    ws = np.linspace(0.0, 5.0, 11)
    wi = np.linspace(0.2, 4.0, 8)

    def rows_for(delta):
        gm = functions.make_profile("gaussmix")
        integral = transforms.u_delta(gm, delta, ws)
        series = transforms.u_delta(gm, delta, ws, route="series")
        r1 = _row(
            "route-agreement",
            "gaussmix, delta=%g, |w|<=5" % delta,
            float(np.max(np.abs(series - integral))),
            1e-8,
        )
        gmh = functions.profile_from_callable(
            "hankel-image", 0.24, lambda s: transforms.hankel(gm, delta, s)
        )
        lhs = transforms.u_delta(gmh, delta, wi)
        rhs = transforms.u_delta(gm, delta, -1j * wi)
        r2 = _row(
            "hankel-intertwining",
            "gaussmix, delta=%g" % delta,
            float(np.max(np.abs(lhs - rhs))),
            1e-8,
        )
        return [r1, r2]

    out = _pmap(threads, rows_for, (0.5, 1.0, 2.0))
    return [r for chunk in out for r in chunk]


def _suite_cholewinski(threads):
    rule = quadrature.mapped_legendre(640, 0.0, 16.0)
    rho, wq = rule.nodes, rule.weights

    def row_for(delta):
        h = (
            (2.0**delta / math.pi)
            * (rho**2 / 2.0) ** (delta + 1.0)
            * special.bessel_k(delta, rho**2 / 2.0)
        )
        worst = 0.0
        for k in range(11):
            got = 2.0 * math.pi * float(np.sum(rho ** (4 * k + 1) * h * wq))
            ref = math.exp(
                (1.0 + 2.0 * delta + 4.0 * k) * math.log(2.0)
                + math.lgamma(k + 1.0)
                + math.lgamma(k + delta + 1.0)
            )
            worst = max(worst, abs(got - ref) / ref)
        return _row("moment-max-rel-err", "delta=%g, k<=10" % delta, worst, 1e-6)

    return _pmap(threads, row_for, (0.5, 1.0, 2.0))


# ---------------------------------------------------------------------------
# the worked pair example


def _suite_example44(threads):
    f = functions.make_function("example44", n=2)
    a = f.params["a"]
    mu = (1.0 - a) / (1.0 + a)
    law0 = 2.0 * math.pi / (1.0 + a)
    rows = []

    tabs = _pmap(
        threads, lambda r: hermite.projection_table(f, 21, route=r), ("direct", "wigner")
    )
    for route, tab in zip(("direct", "wigner"), tabs):
        worst = max(
            abs(tab.entries[2 * k] ** 2 - law0 * mu**k) / (law0 * mu**k)
            for k in range(11)
        )
        rows.append(
            _row(
                "even-levels-geometric-%s" % route,
                "levels 0..20, route=%s" % route,
                worst,
                1e-5,
            )
        )
    rows.append(
        _row(
            "odd-levels-norm-max",
            "levels 1..21, route=direct",
            max(tabs[0].entries[k] for k in range(1, 22, 2)),
            1e-7,
        )
    )
    rows.append(
        _row("spot-level-0", "||P_0 f||^2 vs 3.68060", abs(tabs[0].entries[0] ** 2 - 3.68060), 1e-5)
    )
    rows.append(
        _row("spot-level-2", "||P_2 f||^2 vs 0.63149", abs(tabs[0].entries[2] ** 2 - 0.63149), 1e-5)
    )

    g = np.linspace(-4.0, 4.0, 5)
    P = np.array([[xi, eta] for xi in g for eta in g])
    got = transforms.fourier_many(f, frozenset([1, 2]), P)
    ref = np.exp(-(a / 2.0) * (P[:, 0] ** 2 + P[:, 1] ** 2 - 2j * P[:, 0] * P[:, 1]))
    rows.append(
        _row(
            "transform-closed-form",
            "25 points, |xi|,|eta|<=4",
            float(np.max(np.abs(got - ref))),
            1e-7,
        )
    )

    rng = np.random.default_rng(7)
    pts = rng.uniform(-3.0, 3.0, size=(40, 4))
    Z = pts[:, :2] + 1j * pts[:, 2:]
    got = transforms.wigner_engine(f).values(Z)
    x1, x2, y1, y2 = pts.T
    ref = (
        (1.0 / (2.0 * a))
        * np.exp(-(a / 2.0) * (x1**2 + x2**2 + y1**2 + y2**2))
        * np.exp(0.5 * (x1 * y2 + x2 * y1))
    )
    rows.append(
        _row(
            "wigner-closed-form",
            "40 points, |z|<=6",
            float(np.max(np.abs(got - ref))),
            1e-7,
        )
    )
    return rows


# ---------------------------------------------------------------------------
# vector Bargmann and the degree constants


def _suite_vector_bargmann(threads):
    def rows_for(text):
        f = functions.make_function(text, n=2)
        formulas = [hermite.d_k_norms(f, k, route="formula") for k in range(11)]
        fmax = max(formulas)
        worst = 0.0
        for k in range(11):
            ca = hermite.d_k_norms(f, k, route="cauchy")
            worst = max(
                worst, abs(ca - formulas[k]) / (1e-9 * fmax + max(ca, formulas[k]))
            )
        r1 = _row("dk-route-max-rel", "%s, k<=10" % text, worst, 1e-6)

        direct = hermite.proj_norms_direct(f, 10)
        vmax = float(np.max(direct))
        worst = 0.0
        for k in range(11):
            sp = hermite.proj_norm_spherical(f, k)
            worst = max(
                worst, abs(sp - direct[k]) / (1e-9 * vmax + max(sp, direct[k]))
            )
        r2 = _row("spherical-vs-direct-max-rel", "%s, k<=10" % text, worst, 1e-6)
        return [r1, r2]

    out = _pmap(
        threads, rows_for, ("gaussian:b=0.7", "gauss_harmonic:b=0.5,m=2,kind=cos")
    )
    return [r for chunk in out for r in chunk]


def _suite_lemma55(threads):
    diag = max(abs(special.c_constant(k, k, 2) - 1.0) for k in range(1, 61))
    rows = [_row("diagonal-unity-max-dev", "n=2, k<=60", diag, 1e-12)]

    def growth_for(n):
        running = 0.0
        at_100 = 0.0
        for k in range(1, 401):
            best = max(special.c_constant(k, m, n) for m in range(k + 1))
            running = max(running, best / k ** ((n - 1) / 2.0))
            if k == 100:
                at_100 = running
        return _row(
            "normalized-growth", "n=%d, k=100..400" % n, running / at_100 - 1.0, 0.01
        )

    return rows + _pmap(threads, growth_for, (2, 3, 4))


# ---------------------------------------------------------------------------
# decay theorems


def _suite_theorems(threads):
    rows = []

    combos = [(b, n) for b in (0.3, 0.5, 0.7) for n in (1, 2)]

    def gaussian_dev(bn):
        b, n = bn
        f = functions.make_function("gaussian:b=%g" % b, n=n)
        tab = hermite.projection_table(f, 40 if n == 1 else 24, route="direct")
        return abs(decay.decay_fit(tab, n).tanh_t - b)

    for (b, n), d in zip(combos, _pmap(threads, gaussian_dev, combos)):
        rows.append(_row("gaussian-rate", "b=%g, n=%d" % (b, n), d, 0.01))

    f44 = functions.make_function("example44", n=2)
    tab44 = hermite.projection_table(f44, 24, route="direct")
    fit44 = decay.decay_fit(tab44, 2)
    rows.append(
        _row("example44-rate", "|tanh(2t) - a|", abs(fit44.implied_a - f44.params["a"]), 0.005)
    )

    floor_battery = (
        ("gaussian:b=0.3", 1),
        ("gaussian:b=0.7", 2),
        ("example44", 2),
        ("gauss_harmonic:b=0.5,m=2,kind=cos", 2),
    )

    def floor_gap(item):
        text, n = item
        rep = decay.theorem_check(functions.make_function(text, n=n), "T1_3")
        return rep["fit"]["rate_gap"], rep["pass"] is True

    for (text, n), (gap, ok) in zip(floor_battery, _pmap(threads, floor_gap, floor_battery)):
        rows.append(
            _row("guaranteed-rate-floor", "%s, n=%d" % (text, n), gap, -0.01, cmp="ge", also=ok)
        )

    battery = (
        ("T1_1", "gaussian:b=0.5", 1),
        ("T1_2", "gaussian:b=0.5", 2),
        ("T1_3", "example44", 2),
        ("T1_4", "gaussian:b=0.5", 2),
        ("T4_1", "gaussian:b=0.7", 2),
        ("T5_2", "example44", 2),
    )

    def run_one(item):
        which, text, n = item
        return decay.theorem_check(functions.make_function(text, n=n), which)

    for (which, text, n), rep in zip(battery, _pmap(threads, run_one, battery)):
        ok = rep["pass"] is True
        inp = "%s on %s, n=%d" % (which, text, n)
        if which == "T4_1":
            rows.append(_row("bound-constant", inp, rep["bound"]["C_min"], 10.0, cmp="le", also=ok))
        elif which == "T5_2":
            rows.append(_row("mu-fit-gap", inp, rep["fit"]["mu_gap"], 0.0, cmp="ge", also=ok))
        else:
            rows.append(_row("rate-gap", inp, rep["fit"]["rate_gap"], 0.0, cmp="ge", also=ok))
    return rows


_DISPATCH = {
    "orthonormality": _suite_orthonormality,
    "fourier-eigen": _suite_fourier_eigen,
    "wigner-identity": _suite_wigner_identity,
    "hankel-eigen": _suite_hankel_eigen,
    "udelta": _suite_udelta,
    "cholewinski": _suite_cholewinski,
    "example44": _suite_example44,
    "routes": _suite_routes,
    "radialization": _suite_radialization,
    "vector-bargmann": _suite_vector_bargmann,
    "lemma55": _suite_lemma55,
    "theorems": _suite_theorems,
}


def run_suite(name: str, threads: int = 1) -> dict:
    """Execute one suite and report {suite, checks, pass}."""
    if name not in _DISPATCH:
        raise ValueError("unknown suite %r" % name)
    rows = _DISPATCH[name](max(1, int(threads)))
    return {
        "suite": name,
        "checks": rows,
        "pass": all(r["pass"] for r in rows),
    }


def run_all(threads: int = 1) -> dict:
    reports = [run_suite(name, threads) for name in SUITES]
    return {"suites": reports, "pass": all(r["pass"] for r in reports)}
