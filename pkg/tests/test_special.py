import math

import mpmath as mp
import numpy as np
import pytest
from scipy.special import eval_hermite, gammaln, jv

from hermex import special

PI_QUARTER = 0.7511255444649425  # pi**(-1/4)


def test_hermite_ground_state_values():
    assert special.hermite_phi(0, 0.0) == pytest.approx(PI_QUARTER, abs=1e-15)
    # Phi_2(0) = -pi^(-1/4)/sqrt(2)
    assert special.hermite_phi(2, 0.0) == pytest.approx(-0.5311259660135984, abs=1e-15)
    val = special.hermite_phi(1, 1.0)
    expect = math.sqrt(2.0) * PI_QUARTER * math.exp(-0.5)
    assert val == pytest.approx(expect, rel=1e-14)


def test_hermite_against_explicit_normalization():
    xs = np.linspace(-8.0, 8.0, 41)
    for k in [0, 1, 2, 5, 17, 36, 60]:
        norm = math.exp(-0.5 * (k * math.log(2.0) + gammaln(k + 1.0) + 0.5 * math.log(math.pi)))
        expect = eval_hermite(k, xs) * np.exp(-0.5 * xs * xs) * norm
        got = special.hermite_phi(k, xs)
        assert np.max(np.abs(got - expect)) < 5e-13


def test_hermite_high_degree_oracle():
    with mp.workdps(60):
        h = mp.hermite(500, mp.mpf(10))
        norm = mp.sqrt(mp.power(2, 500) * mp.factorial(500) * mp.sqrt(mp.pi))
        expect = float(h * mp.exp(mp.mpf(-50)) / norm)
    got = special.hermite_phi(500, 10.0)
    assert got == pytest.approx(expect, rel=1e-11)


def test_hermite_far_tail_window():
    # inside the oscillatory region for k = 800 even though exp(-x^2/2) underflows
    with mp.workdps(80):
        h = mp.hermite(800, mp.mpf("39.5"))
        norm = mp.sqrt(mp.power(2, 800) * mp.factorial(800) * mp.sqrt(mp.pi))
        expect = float(h * mp.exp(-mp.mpf("39.5") ** 2 / 2) / norm)
    got = special.hermite_phi(800, 39.5)
    assert abs(expect) > 1e-8
    assert got == pytest.approx(expect, rel=1e-9)


def test_hermite_cutoff_and_caps():
    assert special.hermite_phi(1000, 41.0) == 0.0
    assert special.hermite_phi(3, -40.5) == 0.0
    sv = special.hermite_phi(2, 41.0, with_estimate=True)
    assert sv.value == 0.0
    assert 0.0 < sv.abs_err_estimate <= math.exp(-0.5 * 41.0**2) + 5e-324
    with pytest.raises(ValueError):
        special.hermite_phi(10_001, 0.0)
    with pytest.raises(ValueError):
        special.hermite_phi(-1, 0.0)


def test_hermite_boundedness():
    xs = np.linspace(-25.0, 25.0, 4001)
    vals = special.hermite_phi_all(200, xs)
    assert np.max(np.abs(vals)) <= 1.0 + 1e-12
    # the overall sup is attained by Phi_0 at the origin
    assert np.max(np.abs(vals)) <= PI_QUARTER + 1e-12


def test_hermite_eigen_relation_finite_difference():
    h = 3e-3
    xs = np.arange(-6.0, 6.0 + 1e-9, 0.25)
    for k in range(21):
        stencil = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / (12.0 * h * h)
        vals = np.stack([special.hermite_phi(k, xs + j * h) for j in (-2, -1, 0, 1, 2)])
        d2 = np.tensordot(stencil, vals, axes=1)
        resid = (-d2 + xs * xs * special.hermite_phi(k, xs)) - (2 * k + 1) * special.hermite_phi(k, xs)
        assert np.max(np.abs(resid)) < 1e-6


def test_hermite_orthonormality_trapezoid():
    xs = np.arange(-15.0, 15.0 + 1e-12, 0.01)
    vals = special.hermite_phi_all(30, xs)
    gram = (vals * 0.01) @ vals.T
    assert np.max(np.abs(gram - np.eye(31))) < 1e-10


def test_hermite_multi_product():
    pts = np.array([[0.3, -1.2], [1.0, 0.0]])
    out = special.hermite_phi_multi((2, 5), pts)
    expect = special.hermite_phi(2, pts[:, 0]) * special.hermite_phi(5, pts[:, 1])
    assert np.allclose(out, expect, rtol=0, atol=1e-15)
    idx = special.HermiteIndex((2, 5))
    assert idx.degree == 7
    with pytest.raises(ValueError):
        special.hermite_phi_multi((1, 2, 3), np.zeros((4, 3)))


def test_laguerre_psi_basics():
    s = np.linspace(0.0, 6.0, 25)
    assert np.allclose(special.laguerre_psi(0, 1.5, s), np.exp(-0.5 * s * s), rtol=1e-14)
    # L_1^d(x) = d + 1 - x
    d = 0.75
    expect = (d + 1.0 - s * s) * np.exp(-0.5 * s * s)
    assert np.allclose(special.laguerre_psi(1, d, s), expect, rtol=0, atol=1e-13)
    assert special.varphi(3, 2, 0.0) == pytest.approx(4.0, rel=1e-14)
    with pytest.raises(ValueError):
        special.laguerre_psi(2, -0.5, s)
    with pytest.raises(ValueError):
        special.laguerre_psi(2, 1.0, np.array([-1.0]))


def test_laguerre_generating_identity():
    for delta in [0.0, 1.0, 1.5]:
        for x in [0.5, 1.0, 4.0]:
            psi = special.laguerre_psi_all(600, delta, math.sqrt(x))
            for r in [0.1, 0.5, 0.9]:
                total = float(np.sum(psi * np.power(r, np.arange(601))))
                expect = (1.0 - r) ** (-delta - 1.0) * math.exp(-0.5 * (1.0 + r) / (1.0 - r) * x)
                assert total == pytest.approx(expect, rel=1e-10)


def test_laguerre_norm_oracle():
    base, wts = np.polynomial.legendre.leggauss(400)
    s = 15.0 * (base + 1.0)
    wts = 15.0 * wts
    for k, delta in [(0, 0.0), (3, 0.5), (17, 2.0)]:
        psi = special.laguerre_psi(k, delta, s)
        integral = float(np.sum(psi * psi * np.power(s, 2 * delta + 1) * wts))
        expect = special.laguerre_norm_sq(k, delta)
        assert integral == pytest.approx(expect, rel=1e-10)


def test_laguerre_extreme_arguments():
    with mp.workdps(80):
        expect = float(mp.laguerre(200, "0.5", 784) * mp.exp(-392))
    got = special.laguerre_psi(200, 0.5, 28.0)
    assert got == pytest.approx(expect, rel=1e-9)
    with np.errstate(all="raise"):
        tiny = special.laguerre_psi(5, 1.0, 40.0)
    assert tiny == 0.0  # true value below the subnormal range


def test_bessel_ratio_half_integer_closed_form():
    scale = math.sqrt(2.0 / math.pi)
    ws = np.concatenate([np.linspace(1e-3, 20.0, 57), [20.0]])
    got = special.bessel_ratio(0.5, ws)
    expect = scale * np.sin(ws) / ws
    assert np.max(np.abs(got - expect)) < 8e-13
    assert special.bessel_ratio(0.5, 0.0) == pytest.approx(scale, abs=1e-16)
    # complex arguments, tolerance scaled by the value magnitude
    pts = np.array([3.0 + 4.0j, 12.0 - 16.0j, 0.5 + 19.0j, -17.0 + 2.0j])
    got = special.bessel_ratio(0.5, pts)
    expect = scale * np.sin(pts) / pts
    err = np.abs(got - expect) / np.maximum(1.0, np.abs(expect))
    assert np.max(err) < 1e-12


def test_bessel_ratio_against_scipy_both_lanes():
    for delta in [0.0, 0.3, 1.0, 1.5, 2.0, 3.7]:
        ws = np.array([0.5, 3.0, 10.0, 20.0, 31.0, 33.0, 47.0, 80.0, 100.0, 131.0, 160.0])
        got = special.bessel_ratio(delta, ws)
        expect = jv(delta, ws) / np.power(ws, delta)
        rel = np.abs(got - expect) / np.abs(expect)
        assert np.max(rel) < 2e-11


def test_bessel_ratio_imaginary_axis_oracle():
    with mp.workdps(40):
        w = mp.mpc(0, 60)
        expect = complex(mp.besselj(mp.mpf("0.75"), w) / w ** mp.mpf("0.75"))
    got = special.bessel_ratio(0.75, 60j)
    assert abs(got - expect) / abs(expect) < 1e-13
    # purely imaginary input of real dtype stays on the series lane
    got_small = special.bessel_ratio(1.0, 2j)
    with mp.workdps(40):
        expect_small = complex(mp.besselj(1, mp.mpc(0, 2)) / mp.mpc(0, 2))
    assert abs(got_small - expect_small) < 1e-14


def test_bessel_ratio_domain_errors():
    with pytest.raises(ValueError):
        special.bessel_ratio(-0.5, 1.0)
    with pytest.raises(ValueError):
        special.bessel_ratio(1.0, 161.0)
    with pytest.raises(ValueError):
        special.bessel_ratio(1.0, np.array([1.0, 180.0]))


def test_bessel_k_closed_form_and_oracle():
    for x in [0.3, 1.0, 2.0, 7.0]:
        expect = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)
        assert special.bessel_k(0.5, x) == pytest.approx(expect, rel=1e-11)
    assert special.bessel_k(0.5, 1.0) == pytest.approx(0.46106850444789495, rel=1e-12)
    for delta in [0.0, 1.0, 2.5]:
        for x in [0.05, 0.5, 3.0, 20.0]:
            with mp.workdps(30):
                expect = float(mp.besselk(delta, x))
            assert special.bessel_k(delta, x) == pytest.approx(expect, rel=1e-9)
    sv = special.bessel_k(1.0, 2.0, with_estimate=True)
    assert sv.abs_err_estimate < 1e-10 * max(1.0, sv.value)
    with pytest.raises(ValueError):
        special.bessel_k(1.0, 0.0)
    with pytest.raises(ValueError):
        special.bessel_k(-1.0, 1.0)


def test_log_gamma_values():
    assert special.log_gamma(11.0) == pytest.approx(15.104412573075516, rel=1e-15)
    assert special.log_gamma(0.5) == pytest.approx(0.5723649429247001, rel=1e-15)
    xs = np.linspace(0.05, 300.0, 777)
    got = special.log_gamma(xs)
    expect = np.array([math.lgamma(v) for v in xs])
    rel = np.abs(got - expect) / np.maximum(1e-30, np.abs(expect))
    assert np.max(rel) < 1e-13
    with pytest.raises(ValueError):
        special.log_gamma(0.0)
    with pytest.raises(ValueError):
        special.log_gamma(np.array([1.0, -2.0]))


def test_c_constant_examples():
    for k in [0, 1, 5, 40]:
        assert special.c_constant(k, k, 2) == pytest.approx(1.0, rel=1e-12)
    assert special.c_constant(1, 0, 2) == pytest.approx(2.0, rel=1e-13)
    assert special.c_constant(2, 0, 2) == pytest.approx(8.0 / 3.0, rel=1e-13)
    with pytest.raises(ValueError):
        special.c_constant(2, 3, 2)


def test_c_constant_growth_bound():
    # running max of c(k, m)/k^((n-1)/2) is essentially flat beyond k = 100
    for n in [2, 3, 4]:
        best = 0.0
        at_100 = None
        for k in range(20, 401):
            ms = np.arange(0, k + 1, dtype=float)
            lg = (
                2.0 * (k - ms) * math.log(2.0)
                + gammaln(k - ms + 1.0)
                + gammaln(0.5 * n + k + ms)
                - gammaln(2.0 * k + 1.0)
            )
            best = max(best, float(np.max(np.exp(lg))) / k ** ((n - 1) / 2.0))
            if k == 100:
                at_100 = best
        assert best <= at_100 * 1.01


def test_circular_harmonics():
    theta = np.linspace(0.0, 2.0 * math.pi, 512, endpoint=False)
    members = [(0, 1)] + [(m, j) for m in (1, 2, 3) for j in (1, 2)]
    h = 2.0 * math.pi / theta.size
    for a, (m1, j1) in enumerate(members):
        for m2, j2 in members[a:]:
            v1 = special.circular_harmonic(m1, j1, theta)
            v2 = special.circular_harmonic(m2, j2, theta)
            ip = float(np.sum(v1 * v2) * h)
            expect = 1.0 if (m1, j1) == (m2, j2) else 0.0
            assert ip == pytest.approx(expect, abs=1e-13)
    assert special.circular_harmonic(0, 1, 0.3) == pytest.approx(1.0 / math.sqrt(2.0 * math.pi))
    assert special.harmonic_multiplicity(0) == 1
    assert special.harmonic_multiplicity(4) == 2
    with pytest.raises(ValueError):
        special.circular_harmonic(0, 2, 0.0)
    with pytest.raises(ValueError):
        special.circular_harmonic(1, 3, 0.0)


def test_type_validation():
    with pytest.raises(ValueError):
        special.HermiteIndex((1, 2, 3))
    with pytest.raises(ValueError):
        special.HermiteIndex((-1,))
    with pytest.raises(ValueError):
        special.LaguerreOrder(0, -0.5)
    special.LaguerreOrder(3, 0.0)
