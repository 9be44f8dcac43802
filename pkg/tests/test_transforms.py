import math

import numpy as np
import pytest

from hermex import functions, quadrature, special, transforms

PI14 = 1.3313353638003897  # pi^{1/4}
ZETA1 = (2.0 * math.factorial(1) / math.sqrt(math.pi)) ** -0.5
ZETA5 = (2.0**5 * math.factorial(5) / math.sqrt(math.pi)) ** -0.5


# ---------------------------------------------------------------------------
# Fourier-Wigner engine against closed forms


def test_engine_ground_state_1d():
    f0 = functions.make_function("hermite:k=0", n=1)
    eng = transforms.wigner_engine(f0)
    rng = np.random.default_rng(7)
    zs = rng.uniform(-4, 4, 30) + 1j * rng.uniform(-4, 4, 30)
    vals = eng.values(zs[:, None])
    ref = (2 * math.pi) ** -0.5 * np.exp(-np.abs(zs) ** 2 / 4)
    assert np.max(np.abs(vals - ref)) < 1e-13


def test_engine_gaussian_1d():
    b = 0.5
    g = functions.make_function("gaussian:b=0.5", n=1)
    eng = transforms.wigner_engine(g)
    rng = np.random.default_rng(11)
    zs = rng.uniform(-5, 5, 40) + 1j * rng.uniform(-5, 5, 40)
    vals = eng.values(zs[:, None])
    ref = (2 * b) ** -0.5 * np.exp(-zs.real**2 / (4 * b) - b * zs.imag**2 / 4)
    assert np.max(np.abs(vals - ref)) < 1e-13


def test_engine_gaussian_2d():
    # separable case: product of two 1-D transforms
    b = 0.5
    g = functions.make_function("gaussian:b=0.5", n=2)
    eng = transforms.wigner_engine(g)
    rng = np.random.default_rng(3)
    pts = rng.uniform(-6, 6, size=(60, 4))
    Z = pts[:, :2] + 1j * pts[:, 2:]
    x1, x2, y1, y2 = pts.T
    ref = (2 * b) ** -1 * np.exp(
        -(x1**2 + x2**2) / (4 * b) - b * (y1**2 + y2**2) / 4
    )
    assert np.max(np.abs(eng.values(Z) - ref)) < 1e-12


def test_engine_example44():
    a = 2**-0.5
    f44 = functions.make_function("example44", n=2)
    eng = transforms.wigner_engine(f44)
    rng = np.random.default_rng(7)
    pts = rng.uniform(-3.5, 3.5, size=(40, 4))
    Z = pts[:, :2] + 1j * pts[:, 2:]
    x1, x2, y1, y2 = pts.T
    ref = (
        (2 * a) ** -1
        * np.exp(-(a / 2) * (x1**2 + x2**2 + y1**2 + y2**2))
        * np.exp(0.5 * (x1 * y2 + x2 * y1))
    )
    assert np.max(np.abs(eng.values(Z) - ref)) < 1e-12


def test_engine_plane_matches_values():
    f44 = functions.make_function("example44", n=2)
    eng = transforms.wigner_engine(f44)
    x1g = np.linspace(-3, 3, 7)
    x2g = np.linspace(-2, 2, 5)
    P = eng.plane(0.7, -1.3, x1g, x2g)
    pts = np.array([[xx1 + 0.7j, xx2 - 1.3j] for xx1 in x1g for xx2 in x2g])
    assert np.max(np.abs(P - eng.values(pts).reshape(7, 5))) < 1e-14


def test_engine_hermite_vs_direct_quadrature():
    f2 = functions.make_function("hermite:k=2", n=1)
    eng = transforms.wigner_engine(f2)
    rule = quadrature.mapped_legendre(400, -10, 10)
    X, W = rule.nodes, rule.weights
    for z in (0.3 + 0.9j, -1.2 + 2.1j):
        x, y = z.real, z.imag
        brute = (
            (2 * math.pi) ** -0.5
            * np.exp(0.5j * x * y)
            * np.sum(W * f2.evaluate(X + y) * np.conj(f2.evaluate(X)) * np.exp(1j * x * X))
        )
        got = eng.values(np.array([[z]]))[0]
        assert abs(got - brute) < 1e-13


def test_moment_table_gaussian_oracle():
    # M_0(v) for rate Q is sqrt(2 pi / Q) e^{-v^2 / 2Q}
    tab = transforms._MomentTable(2.0, 0)
    vv = np.linspace(-10, 10, 101)
    ref = math.sqrt(math.pi) * np.exp(-vv**2 / 4)
    assert np.max(np.abs(tab.moments(vv)[:, 0] - ref)) < 1e-13


def test_fourier_wigner_pointwise_bound():
    f0 = functions.make_function("hermite:k=0", n=1)
    val = transforms.fourier_wigner(f0, f0, np.array([0.0 + 0.0j]))
    assert val == pytest.approx((2 * math.pi) ** -0.5, abs=1e-13)


# ---------------------------------------------------------------------------
# Fourier


def test_fourier_gaussian_fixed_point():
    g = functions.make_function("gaussian:b=1", n=1)
    xs = np.linspace(-3, 3, 13)
    got = transforms.fourier_many(g, {1}, xs[:, None])
    ref = g.evaluate(xs)
    assert np.max(np.abs(got - ref) / np.abs(ref)) < 1e-10


def test_fourier_hermite_eigen():
    h1 = functions.make_function("hermite:k=1", n=1)
    xs = np.linspace(-3, 3, 13)
    got = transforms.fourier_many(h1, {1}, xs[:, None])
    assert np.max(np.abs(got - (-1j) * h1.evaluate(xs))) < 1e-12


def test_fourier_partial_axis_product():
    g2 = functions.make_function("gaussian:b=0.5", n=2)
    g1 = functions.make_function("gaussian:b=0.5", n=1)
    pts = np.array([[0.5, 1.0], [1.5, -0.5]])
    got = transforms.fourier_many(g2, {1}, pts)
    ref = transforms.fourier_many(g1, {1}, pts[:, :1]) * g1.evaluate(pts[:, 1])
    assert np.max(np.abs(got - ref)) < 1e-12


def test_fourier_empty_subset_is_identity():
    g = functions.make_function("gaussian:b=0.5", n=2)
    pts = np.array([[0.3, -1.1], [2.0, 0.4]])
    got = transforms.fourier_many(g, set(), pts)
    assert np.max(np.abs(got - g.evaluate(pts[:, 0], pts[:, 1]))) < 1e-15


def test_fourier_subset_validation():
    g = functions.make_function("gaussian:b=0.5", n=1)
    with pytest.raises(ValueError):
        transforms.fourier_many(g, {2}, np.array([[0.0]]))


# ---------------------------------------------------------------------------
# Hankel


def test_hankel_eigenrelation():
    for delta in (0.0, 0.5, 1.0, 1.5, 2.0):
        for k in (0, 1, 5, 12, 20):
            prof = functions.make_profile("psi:k=%d,delta=%g" % (k, delta))
            rs = np.linspace(0.0, 8.0, 33)
            got = transforms.hankel(prof, delta, rs)
            ref = (-1) ** k * special.laguerre_psi(k, delta, rs)
            assert np.max(np.abs(got - ref)) < 1e-10, (delta, k)


def test_hankel_inversion():
    gm = functions.make_profile("gaussmix")
    delta = 1.5
    himg = functions.profile_from_callable(
        "h-img", 1.0 / 8.0, lambda s: transforms.hankel(gm, delta, s)
    )
    ss = np.linspace(0.1, 4.0, 9)
    got = transforms.hankel(himg, delta, ss)
    assert np.max(np.abs(got - gm.evaluate(ss))) < 1e-12


def test_hankel_requires_positive_envelope():
    with pytest.raises(ValueError):
        functions.profile_from_callable("flat", 0.0, lambda s: np.ones_like(s))
    bad = functions.RadialProfile("flat", 0.0, lambda s: np.ones_like(s), {})
    with pytest.raises(ValueError):
        transforms.hankel(bad, 1.0, 1.0)


# ---------------------------------------------------------------------------
# Bargmann


def test_bargmann_ground_state_constant():
    h0 = functions.make_function("hermite:k=0", n=1)
    assert transforms.bargmann_1d(h0, 0.0) == pytest.approx(PI14, abs=1e-12)
    # entire extension is constant for the ground state
    assert transforms.bargmann_1d(h0, 1.3 - 0.6j) == pytest.approx(PI14, abs=1e-12)


def test_bargmann_hermite_monomial():
    h1 = functions.make_function("hermite:k=1", n=1)
    z = 0.7 - 0.3j
    assert transforms.bargmann_1d(h1, z) / z == pytest.approx(ZETA1, abs=1e-12)


def test_bargmann_fourier_rotation():
    g = functions.make_function("gaussian:b=0.5", n=1)
    gh = g.fourier_spec()
    for z in (0.5, 1.0 + 0.8j, -1.2j):
        lhs = transforms.bargmann_1d(gh, z)
        rhs = transforms.bargmann_1d(g, -1j * z)
        assert abs(lhs - rhs) < 1e-13


def test_bargmann_vector_radial_direction_free():
    h00 = functions.make_function("hermite:k1=0,k2=0", n=2)
    th = 2 * math.pi * np.arange(64) / 64
    omegas = np.column_stack([np.cos(th), np.sin(th)])
    zs = np.array([0.4 + 0.2j, 1.5, -2.0j])
    vals = transforms.bargmann_vector_ring(h00, zs, omegas)
    spread = np.max(np.abs(vals - vals[:, :1]))
    assert spread < 1e-10
    # radial ground state: B f(z omega) = sqrt(pi) for every z
    assert np.max(np.abs(vals - math.sqrt(math.pi))) < 1e-10


def test_taylor_coeffs():
    c = transforms.taylor_coeffs_cauchy(lambda z: z**2, 1.5, 6)
    ref = np.zeros(6)
    ref[2] = 1.0
    assert np.max(np.abs(c - ref)) < 1e-13
    c = transforms.taylor_coeffs_cauchy(np.exp, 2.0, 10)
    ref = 1.0 / np.array([math.factorial(k) for k in range(10)])
    assert np.max(np.abs(c - ref)) < 1e-13


def test_taylor_coeffs_bargmann_hermite():
    h5 = functions.make_function("hermite:k=5", n=1)
    c = transforms.taylor_coeffs_cauchy(
        lambda zz: transforms.bargmann_many(h5, zz), 3.0, 8
    )
    assert c[5].real == pytest.approx(ZETA5, abs=1e-11)
    assert max(abs(c[j]) for j in range(8) if j != 5) < 1e-12


def test_taylor_coeffs_validation():
    with pytest.raises(ValueError):
        transforms.taylor_coeffs_cauchy(np.exp, -1.0, 4)
    with pytest.raises(ValueError):
        transforms.taylor_coeffs_cauchy(np.exp, 1.0, 0)


# ---------------------------------------------------------------------------
# U_delta


@pytest.mark.parametrize("delta", [0.5, 1.0, 2.0])
def test_u_delta_laguerre_images(delta):
    p0 = functions.make_profile("psi:k=0,delta=%g" % delta)
    p1 = functions.make_profile("psi:k=1,delta=%g" % delta)
    ws = np.linspace(0.0, 5.0, 11)
    got0 = transforms.u_delta(p0, delta, ws)
    assert np.max(np.abs(got0 - 2.0 ** (-delta - 1))) < 1e-12
    got1 = transforms.u_delta(p1, delta, ws)
    assert np.max(np.abs(got1 - (-(2.0 ** (-delta - 3)) * ws**2))) < 1e-12
    series = transforms.u_delta(p0, delta, ws, route="series")
    assert np.max(np.abs(series - got0)) < 1e-12


def test_u_delta_intertwines_hankel():
    gm = functions.make_profile("gaussmix")
    delta = 1.0
    gmh = functions.profile_from_callable(
        "gm-h", 0.24, lambda s: transforms.hankel(gm, delta, s)
    )
    ws = np.linspace(0.2, 4.0, 8)
    lhs = transforms.u_delta(gmh, delta, ws)
    rhs = transforms.u_delta(gm, delta, -1j * ws)
    assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_u_delta_validation():
    gm = functions.make_profile("gaussmix")
    with pytest.raises(ValueError):
        transforms.u_delta(gm, -0.5, 1.0)
    with pytest.raises(ValueError):
        transforms.u_delta(gm, 1.0, 1.0, route="spline")


# ---------------------------------------------------------------------------
# symplectic Fourier


def test_symplectic_eigen_1d():
    for k in (0, 1, 3, 6):
        F = transforms.phi_field(k, 1)
        for z in (0.3 + 0.4j, 1.0, 2.0j, 1.5 - 2.5j):
            got = transforms.symplectic_fourier(F, z)
            ref = (-1) ** k * special.varphi(k, 1, abs(z))
            assert abs(got - ref) < 1e-12, (k, z)


def test_symplectic_eigen_2d():
    zs = np.array([[0.5 + 0.2j, -0.3 + 0.1j], [1.0 + 1.0j, 0.5 - 0.5j], [2.0, 1.5j]])
    rr = np.sqrt(np.sum(np.abs(zs) ** 2, axis=1))
    for k in (0, 2):
        F = transforms.phi_field(k, 2)
        got = transforms.symplectic_fourier_many(F, zs)
        ref = (-1) ** k * special.varphi(k, 2, rr)
        assert np.max(np.abs(got - ref)) < 1e-12, k


def test_symplectic_self_grid_eigen():
    F = transforms.phi_field(4, 1)
    u = F.rule.axis_nodes
    G = transforms.symplectic_self_grid(F)
    U, V = np.meshgrid(u, u, indexing="ij")
    ref = special.varphi(4, 1, np.sqrt(U**2 + V**2))
    assert np.max(np.abs(G - ref)) < 1e-12


def test_symplectic_envelope_guard():
    flat = transforms.ComplexField(
        n=1,
        rule=quadrature.tensor_rule(1, per_axis=16, R=4.0),
        evaluator=lambda x, y: np.exp(-0.001 * (x**2 + y**2)) + 0j,
        env_rate=0.001,
    )
    with pytest.raises(ValueError):
        transforms.symplectic_fourier(flat, 0.5 + 0.5j)


# ---------------------------------------------------------------------------
# radialization


def test_radialize_constant():
    one = transforms.ComplexField(
        n=2,
        rule=quadrature.tensor_rule(2, per_axis=8, R=10.0),
        evaluator=lambda *cs: np.ones_like(cs[0]) + 0j,
        env_rate=1.0,
    )
    assert transforms.radialize(one, 2.0).real == pytest.approx(
        2 * math.pi**2, rel=1e-13
    )


def test_radialize_ground_state_wigner():
    h00 = functions.make_function("hermite:k1=0,k2=0", n=2)
    F = transforms.wigner_field(h00)
    for r in (0.5, 2.0, 5.0):
        got = transforms.radialize(F, r)
        assert abs(got - math.pi * math.exp(-r * r / 4)) < 1e-13


def _pair_gaussian_sphere_integral(v0, lam_lo, lam_hi, r):
    num = math.exp(-lam_lo * r * r) - math.exp(-lam_hi * r * r)
    return v0 * 4 * math.pi**2 * num / (2 * r * r * (lam_hi - lam_lo))


def test_radialize_framed_example44():
    a = 2**-0.5
    f44 = functions.make_function("example44", n=2)
    F = transforms.wigner_field(f44)
    assert F.frame is not None
    assert np.max(np.abs(F.frame @ F.frame.T - np.eye(4))) < 1e-14
    lam_lo, lam_hi = f44._v_form_rates()
    for r in (3.0, 6.0, 10.0):
        got = transforms.radialize(F, r).real
        ref = _pair_gaussian_sphere_integral(1 / (2 * a), lam_lo, lam_hi, r)
        assert abs(got - ref) / abs(ref) < 1e-11, r


def test_radialize_framed_gaussian():
    # anisotropic case where the slow axes sit on the y coordinates
    b = 0.5
    g = functions.make_function("gaussian:b=0.5", n=2)
    F = transforms.wigner_field(g)
    lam_lo, lam_hi = g._v_form_rates()
    assert (lam_lo, lam_hi) == (b / 4, 1 / (4 * b))
    for r in (0.42, 1.41, 4.24, 8.49):
        got = transforms.radialize(F, r).real
        ref = _pair_gaussian_sphere_integral(1 / (2 * b), lam_lo, lam_hi, r)
        assert abs(got - ref) / abs(ref) < 1e-10, r


def test_radialize_validation():
    h00 = functions.make_function("hermite:k1=0,k2=0", n=2)
    F = transforms.wigner_field(h00)
    with pytest.raises(ValueError):
        transforms.radialize(F, -1.0)


# ---------------------------------------------------------------------------
# the radialization chain


def test_chain_ground_state():
    # both routes collapse to pi e^{-r^2/2} for the 2-D ground state
    h00 = functions.make_function("hermite:k1=0,k2=0", n=2)
    rs = np.array([0.5, 1.0, 2.0])
    ref = math.pi * np.exp(-rs * rs / 2)
    lhs = transforms.chain_lhs(h00, rs)
    rhs = transforms.chain_rhs(h00, rs)
    assert np.max(np.abs(lhs - ref)) < 1e-12
    assert np.max(np.abs(rhs - ref)) < 1e-12


# ---------------------------------------------------------------------------
# fields


def test_wigner_field_metadata():
    g = functions.make_function("gaussian:b=0.5", n=2)
    F = transforms.wigner_field(g)
    assert F.n == 2 and F.rule.dim == 4
    assert F.meta["kind"] == "wigner"
    # GL nodes sit strictly inside the mapped interval
    assert 0.95 * g.wigner_radius() < F.radius <= g.wigner_radius()


def test_phi_field_serialization():
    F = transforms.phi_field(1, 1, per_axis=8, R=6.0)
    doc = F.to_json()
    assert doc["dimension"] == 1
    assert len(doc["values"]) == 64
    assert all(len(pair) == 2 for pair in doc["values"])


def test_field_dimension_validation():
    with pytest.raises(ValueError):
        transforms.ComplexField(
            n=1,
            rule=quadrature.tensor_rule(2, per_axis=8, R=6.0),
            evaluator=lambda x, y: x,
            env_rate=1.0,
        )
