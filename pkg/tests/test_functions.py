import math

import numpy as np
import pytest

from hermex import functions, special


SQRT2PI = 2.5066282746310002


def _gl_line(n=400, R=12.0):
    x, w = np.polynomial.legendre.leggauss(n)
    return x * R, w * R


def _brute_fourier_1d(spec, xis, n=500, R=13.0):
    X, W = _gl_line(n, R)
    vals = spec.evaluate(X)
    out = [np.sum(W * vals * np.exp(-1j * X * xi)) for xi in np.atleast_1d(xis)]
    return np.asarray(out) / math.sqrt(2.0 * math.pi)


def _brute_fourier_2d(spec, pts, n=380, R=13.6):
    X, W = _gl_line(n, R)
    X1, X2 = np.meshgrid(X, X, indexing="ij")
    W2 = np.outer(W, W)
    vals = spec.evaluate(X1, X2)
    out = [
        np.sum(W2 * vals * np.exp(-1j * (X1 * a + X2 * b))) for a, b in pts
    ]
    return np.asarray(out) / (2.0 * math.pi)


def test_gaussian_metadata_and_values():
    f = functions.make_function("gaussian:b=0.5", 1)
    assert f.gamma == 0.25
    assert f.parity == 1
    assert f.radial
    assert f.on_finite_degree == 0
    assert f.norm_sq == pytest.approx(SQRT2PI, rel=1e-14)
    xs = np.array([-2.0, 0.0, 1.5])
    assert np.allclose(f.evaluate(xs), np.exp(-0.25 * xs * xs))
    g = functions.make_function("gaussian:b=0.3", 2)
    assert g.norm_sq == pytest.approx(math.pi / 0.3, rel=1e-14)
    assert abs(g.evaluate(1.0, 2.0) - math.exp(-0.15 * 5.0)) < 1e-15


def test_hermite_polynomial_form_matches_recurrence():
    f2 = functions.make_function("hermite:k=2")
    # polynomial part at 0 is the frozen ground-truth value of Phi_2(0)
    assert f2.gausspoly.evaluate(np.array([0.0]))[0] == pytest.approx(
        -0.5311259660135984, abs=1e-15
    )
    xs = np.linspace(-4.0, 4.0, 41)
    for k in [0, 1, 3, 7, 12]:
        f = functions.make_function("hermite:k=%d" % k)
        assert np.max(np.abs(f.gausspoly.evaluate(xs) - f.evaluate(xs))) < 1e-10
    f20 = functions.make_function("hermite:k=20")
    assert f20.gausspoly is None
    assert f20.parity == 1
    assert functions.make_function("hermite:k=5").parity == -1


def test_hermite_2d_product_structure():
    f = functions.make_function("hermite:k1=2,k2=3", 2)
    x1 = np.array([0.3, -1.0])
    x2 = np.array([1.7, 0.4])
    expect = special.hermite_phi(2, x1) * special.hermite_phi(3, x2)
    assert np.max(np.abs(f.evaluate(x1, x2) - expect)) < 1e-14
    assert f.on_finite_degree == 5
    assert np.max(np.abs(f.gausspoly.evaluate(x1, x2) - expect)) < 1e-12


def test_example44_values_and_norm():
    a = 2.0 ** -0.5
    f = functions.make_function("example44", 2)
    assert f.params["a"] == pytest.approx(a)
    x1, x2 = 1.2, -0.7
    expect = np.exp(-0.5 * a * (x1 * x1 + x2 * x2 + 2j * x1 * x2))
    assert abs(f.evaluate(np.array(x1), np.array(x2)) - expect) < 1e-15
    # even function, infinite harmonic content, pi*sqrt(2) squared norm
    assert f.parity == 1
    assert f.on_finite_degree is None
    assert f.norm_sq == pytest.approx(4.442882938158366, rel=1e-14)


def test_gauss_harmonic_angular_structure():
    b, m = 0.5, 3
    theta = np.linspace(0.0, 2.0 * math.pi, 17)[:-1]
    r = 1.7
    x1, x2 = r * np.cos(theta), r * np.sin(theta)
    radial = r ** m * math.exp(-0.5 * b * r * r)
    fc = functions.make_function("gauss_harmonic:b=0.5,m=3,kind=cos", 2)
    fs = functions.make_function("gauss_harmonic:b=0.5,m=3,kind=sin", 2)
    fz = functions.make_function("gauss_harmonic:b=0.5,m=3,kind=complex", 2)
    assert np.max(np.abs(fc.evaluate(x1, x2) - radial * np.cos(m * theta))) < 1e-13
    assert np.max(np.abs(fs.evaluate(x1, x2) - radial * np.sin(m * theta))) < 1e-13
    got = fz.evaluate(x1, x2)
    assert np.max(np.abs(got - radial * np.exp(1j * m * theta))) < 1e-13
    assert fc.on_finite_degree == 3
    assert fc.parity == -1
    # closed-form norms against a direct polar integral
    assert fc.norm_sq == pytest.approx(
        math.pi * math.gamma(m + 1.0) / (2.0 * b ** (m + 1)), rel=1e-13
    )


def test_closed_form_fourier_1d():
    xis = np.array([-3.1, -0.7, 0.0, 1.3, 2.9, 5.0])
    for text in ["gaussian:b=0.5", "hermite:k=3", "hermite:k=5"]:
        f = functions.make_function(text, 1)
        hat = f.fourier_spec()
        got = _brute_fourier_1d(f, xis)
        assert np.max(np.abs(got - hat.evaluate(xis))) < 5e-12


def test_closed_form_fourier_2d():
    pts = [(0.0, 0.0), (1.2, -0.5), (2.0, 2.0), (-3.0, 1.0), (0.5, 4.0)]
    for text in [
        "gaussian:b=0.3",
        "example44",
        "hermite:k1=2,k2=3",
        "gauss_harmonic:b=0.5,m=2,kind=cos",
        "gauss_harmonic:b=1,m=1,kind=complex",
        "gauss_harmonic:b=0.7,m=3,kind=sin",
    ]:
        f = functions.make_function(text, 2)
        hat = f.fourier_spec()
        got = _brute_fourier_2d(f, pts)
        expect = hat.evaluate(
            np.array([p[0] for p in pts]), np.array([p[1] for p in pts])
        )
        assert np.max(np.abs(got - expect)) < 5e-11


def test_example44_transform_is_conjugate_pattern():
    # the unitary transform has constant exactly 1: the sign of the cross
    # phase flips and nothing else changes
    a = 2.0 ** -0.5
    hat = functions.make_function("example44", 2).fourier_spec()
    p1 = np.array([1.0, 2.0, -1.5])
    p2 = np.array([0.5, -2.0, 3.0])
    manual = np.exp(-0.5 * a * (p1 * p1 + p2 * p2 - 2j * p1 * p2))
    assert np.max(np.abs(hat.evaluate(p1, p2) - manual)) < 1e-14
    assert hat.gamma == pytest.approx(0.25 / a)


def test_wigner_envelope_rates():
    g = functions.make_function("gaussian:b=0.5", 1)
    lo, hi = g._v_form_rates()
    assert lo == pytest.approx(0.125, abs=1e-15)
    assert hi == pytest.approx(0.5, abs=1e-15)
    e = functions.make_function("example44", 2)
    a = 2.0 ** -0.5
    lo, hi = e._v_form_rates()
    assert lo == pytest.approx(0.5 * a - 0.25, rel=1e-12)
    assert hi == pytest.approx(0.5 * a + 0.25, rel=1e-12)
    assert 19.5 < e.wigner_radius() < 20.5
    assert 23.0 < functions.make_function("gaussian:b=0.3", 2).wigner_radius() < 24.0
    # angular width scales with rho^2 and the rate gap
    assert e.wigner_angular_rate(2.0) == pytest.approx(4.0 * 0.5, rel=1e-12)


def test_envelope_validation_rejects_false_claims():
    f = functions.make_function("gaussian:b=0.5", 1)
    doctored = functions.FunctionSpec(
        id="bad",
        n=1,
        params={},
        gamma=1.0,
        parity=1,
        radial=True,
        on_finite_degree=0,
        gausspoly=None,
        norm_sq=None,
        bandwidth=(0.0, 0.0),
        _evaluate=f._evaluate,
    )
    with pytest.raises(ValueError):
        functions._register(doctored)


def test_parser_rejections():
    bad = [
        ("nosuch", None),
        ("gaussian", 1),
        ("gaussian:b=0", 1),
        ("gaussian:b=0.5,c=1", 1),
        ("gaussian:b=0.5", 3),
        ("hermite", None),
        ("hermite:k=2", 2),
        ("hermite:k1=1,k2=2", 1),
        ("example44", 1),
        ("example44:a=1.5", 2),
        ("gauss_harmonic:b=0.5", 2),
        ("gauss_harmonic:b=0.5,m=0,kind=sin", 2),
        ("gauss_harmonic:b=0.5,m=2,kind=weird", 2),
        ("gaussian:b", 1),
    ]
    for text, n in bad:
        with pytest.raises(ValueError):
            functions.make_function(text, n)


def test_function_caching_and_ids():
    a = functions.make_function("gaussian:b=0.5", 1)
    b = functions.make_function("gaussian:b=0.5", 1)
    assert a is b
    assert "gaussian" in functions.list_functions()
    assert set(functions.list_functions()) == {
        "gaussian",
        "hermite",
        "example44",
        "gauss_harmonic",
    }


def test_radial_profiles():
    s = np.array([0.0, 0.5, 1.0, 2.5])
    p = functions.make_profile("gauss:c=1.5")
    assert np.allclose(p.evaluate(s), np.exp(-1.5 * s * s))
    assert p.c == 1.5
    mix = functions.make_profile("gaussmix")
    assert np.allclose(
        mix.evaluate(s), np.exp(-s * s) + 0.5 * np.exp(-2.0 * s * s)
    )
    psi = functions.make_profile("psi:k=3,delta=0.5")
    assert np.max(np.abs(psi.evaluate(s) - special.laguerre_psi(3, 0.5, s))) == 0.0
    with pytest.raises(ValueError):
        functions.make_profile("gauss:c=-1")
    with pytest.raises(ValueError):
        functions.make_profile("psi:k=1")
    with pytest.raises(ValueError):
        functions.make_profile("gaussmix:x=1")
    with pytest.raises(ValueError):
        functions.make_profile("nosuch")


def test_radial_profile_of_registered_function():
    g = functions.make_function("gaussian:b=0.7", 2)
    prof = g.radial_profile()
    s = np.array([0.0, 1.0, 3.0])
    assert np.allclose(prof.evaluate(s), np.exp(-0.35 * s * s))
    with pytest.raises(ValueError):
        functions.make_function("example44", 2).radial_profile()


def test_bandwidth_hints():
    h = functions.make_function("hermite:k=8")
    assert h.osc_bandwidth(5.0) == pytest.approx(math.sqrt(17.0))
    e = functions.make_function("example44", 2)
    assert e.osc_bandwidth(10.0) == pytest.approx(10.0 * 2.0 ** -0.5)
