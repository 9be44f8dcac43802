import math

import numpy as np
import pytest
from scipy.special import gamma as gamma_fn

from hermex import quadrature, special

SQRT_PI = math.sqrt(math.pi)


def test_gauss_hermite_smallest_rules():
    r1 = quadrature.gauss_hermite(1)
    assert r1.nodes.tolist() == [0.0]
    assert r1.weights[0] == pytest.approx(SQRT_PI, rel=1e-15)
    r2 = quadrature.gauss_hermite(2)
    assert r2.nodes == pytest.approx([-1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0)], rel=1e-14)
    assert r2.weights == pytest.approx([SQRT_PI / 2.0] * 2, rel=1e-14)


def test_gauss_hermite_tenth_moment():
    rule = quadrature.gauss_hermite(20)
    got = float(np.sum(rule.weights * rule.nodes**10))
    assert got == pytest.approx(945.0 * SQRT_PI / 32.0, rel=1e-12)


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5, 8, 20, 37, 64])
def test_gauss_hermite_polynomial_exactness(N):
    rule = quadrature.gauss_hermite(N)
    assert np.all(np.diff(rule.nodes) > 0.0)
    assert np.all(rule.weights > 0.0)
    for j in range(2 * N):
        got = float(np.sum(rule.weights * rule.nodes**j))
        if j % 2 == 1:
            scale = float(np.sum(rule.weights * np.abs(rule.nodes) ** j))
            assert abs(got) <= 1e-12 * max(scale, 1.0)
        else:
            expect = gamma_fn((j + 1) / 2.0)
            assert got == pytest.approx(expect, rel=1e-12)


def test_gauss_hermite_symmetry_and_totals():
    rule = quadrature.gauss_hermite(41)
    assert np.array_equal(rule.nodes, -rule.nodes[::-1])
    assert np.array_equal(rule.weights, rule.weights[::-1])
    totals = rule.meta["total_weights"]
    # integral of Phi_5^2 dx via total weights
    vals = special.hermite_phi(5, rule.nodes)
    assert float(np.sum(totals * vals * vals)) == pytest.approx(1.0, abs=1e-12)


def test_gauss_hermite_orthonormality_inner_products():
    rule = quadrature.gauss_hermite(64)
    vals = special.hermite_phi_all(40, rule.nodes)
    gram = (vals * rule.meta["total_weights"]) @ vals.T
    assert np.max(np.abs(gram - np.eye(41))) < 1e-12


def test_gauss_hermite_large_rule():
    rule = quadrature.gauss_hermite(500)
    assert rule.node_count == 500
    assert np.all(np.diff(rule.nodes) > 0.0)
    assert float(np.sum(rule.weights)) == pytest.approx(SQRT_PI, rel=1e-12)
    vals_a = special.hermite_phi(300, rule.nodes)
    vals_b = special.hermite_phi(302, rule.nodes)
    totals = rule.meta["total_weights"]
    assert float(np.sum(totals * vals_a * vals_a)) == pytest.approx(1.0, abs=1e-10)
    assert abs(float(np.sum(totals * vals_a * vals_b))) < 1e-10


def test_gauss_hermite_weight_underflow_clamp():
    rule = quadrature.gauss_hermite(380)
    assert np.all(rule.weights > 0.0)
    rule = quadrature.gauss_hermite(500)
    assert np.all(rule.weights > 0.0)
    assert rule.weights.min() == 5e-324
    logw = rule.meta["log_weights"]
    assert np.all(np.isfinite(logw))
    assert logw.min() < -745.0


def test_gauss_hermite_validation():
    for bad in [0, -3, 501, 2.5]:
        with pytest.raises(ValueError):
            quadrature.gauss_hermite(bad)


def test_gauss_hermite_determinism():
    a = quadrature.gauss_hermite(150)
    b = quadrature.gauss_hermite(150)
    assert np.array_equal(a.nodes, b.nodes)
    assert np.array_equal(a.weights, b.weights)


def test_mapped_legendre():
    r = quadrature.mapped_legendre(1, 0.0, 1.0)
    assert r.nodes == pytest.approx([0.5], abs=1e-16)
    assert r.weights == pytest.approx([1.0], abs=1e-16)
    r = quadrature.mapped_legendre(2, -1.0, 1.0)
    assert float(np.sum(r.weights * r.nodes**2)) == pytest.approx(2.0 / 3.0, rel=1e-15)
    r = quadrature.mapped_legendre(64, 0.0, 8.0)
    got = float(np.sum(r.weights * np.exp(-r.nodes**2) * r.nodes))
    assert got == pytest.approx(0.5 * (1.0 - math.exp(-64.0)), rel=1e-14)
    with pytest.raises(ValueError):
        quadrature.mapped_legendre(4, 1.0, 1.0)
    with pytest.raises(ValueError):
        quadrature.mapped_legendre(2001, 0.0, 1.0)


def test_radial_rule_gamma_integrals():
    for delta, expect in [(0.0, 0.5), (1.0, 0.5), (1.5, 0.6646701940895685)]:
        rule = quadrature.radial_rule(delta, 12.0, 200)
        got = float(np.sum(rule.weights * np.exp(-rule.nodes**2)))
        assert got == pytest.approx(expect, rel=1e-13)
    with pytest.raises(ValueError):
        quadrature.radial_rule(-0.5, 12.0, 200)
    with pytest.raises(ValueError):
        quadrature.radial_rule(1.0, -3.0, 200)


def test_radial_rule_halving_report():
    full = quadrature.radial_rule(0.5, 12.0, 200)
    half = quadrature.radial_rule(0.5, 12.0, 100)
    v_full = float(np.sum(full.weights * np.exp(-full.nodes**2)))
    v_half = float(np.sum(half.weights * np.exp(-half.nodes**2)))
    rep = quadrature.report(v_full, v_half)
    assert rep.est_rel_err < 1e-8
    assert rep.value == v_full


def test_sphere_rule_circle():
    rule = quadrature.sphere_rule(1)
    assert rule.node_count == 256
    assert float(np.sum(rule.weights)) == pytest.approx(2.0 * math.pi, rel=1e-14)
    assert np.allclose(np.sum(rule.nodes**2, axis=1), 1.0, atol=1e-15)
    x = rule.nodes[:, 0]
    assert float(np.sum(rule.weights * x)) == pytest.approx(0.0, abs=1e-13)
    assert float(np.sum(rule.weights * x * x)) == pytest.approx(math.pi, rel=1e-13)


def test_sphere_rule_s3():
    rule = quadrature.sphere_rule(2)
    assert rule.node_count == 64 * 64 * 32
    assert float(np.sum(rule.weights)) == pytest.approx(19.739208802178716, rel=1e-12)
    assert np.allclose(np.sum(rule.nodes**2, axis=1), 1.0, atol=1e-14)
    for j in range(4):
        got = float(np.sum(rule.weights * rule.nodes[:, j] ** 2))
        assert got == pytest.approx(math.pi**2 / 2.0, rel=1e-12)
    mixed = float(np.sum(rule.weights * rule.nodes[:, 0] * rule.nodes[:, 2]))
    assert abs(mixed) < 1e-12
    with pytest.raises(ValueError):
        quadrature.sphere_rule(3)


def test_tensor_rule_gaussian_integrals():
    rule = quadrature.tensor_rule(1, 48, 12.0)
    pts, wts = rule.materialize()
    got = float(np.sum(wts * np.exp(-0.5 * np.sum(pts**2, axis=1))))
    assert got == pytest.approx(2.0 * math.pi, rel=1e-10)
    # C^2 via per-axis separability of the same rule
    rule2 = quadrature.tensor_rule(2, 48, 12.0)
    one_axis = float(np.sum(rule2.axis_weights * np.exp(-0.5 * rule2.axis_nodes**2)))
    assert one_axis**4 == pytest.approx((2.0 * math.pi) ** 2, rel=1e-10)
    assert rule2.node_count == 48**4
    with pytest.raises(ValueError):
        quadrature.tensor_rule(2, 160)
    with pytest.raises(ValueError):
        rule2.materialize()


def test_convergence_report():
    rep = quadrature.report(1.0, 1.0 + 1e-9)
    assert rep.est_rel_err == pytest.approx(1e-9, rel=1e-6)
    assert quadrature.report(0.0, 0.0).est_rel_err == 0.0


def test_rule_cache_roundtrip(tmp_path):
    cache = quadrature.RuleCache(str(tmp_path))
    r1 = cache.get("gauss_hermite", N=35)
    r2 = cache.get("gauss_hermite", N=35)
    direct = quadrature.gauss_hermite(35)
    assert np.array_equal(r1.nodes, direct.nodes)
    assert np.array_equal(r2.nodes, direct.nodes)
    assert np.array_equal(r2.weights, direct.weights)
    t1 = cache.get("tensor", n=1, per_axis=16, R=9.0)
    t2 = cache.get("tensor", n=1, per_axis=16, R=9.0)
    assert np.array_equal(t1.axis_nodes, t2.axis_nodes)
    assert t2.dim == 2
    nocache = quadrature.RuleCache(None)
    r3 = nocache.get("radial", delta=0.5, R=10.0, N=64)
    assert r3.kind == "radial"
