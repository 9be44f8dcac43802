import math
import time
import numpy as np

from hermex import functions, transforms, special, quadrature

# --- symplectic eigenrelation, n=1, via phi_field
for k in [0, 1, 3, 6]:
    F = transforms.phi_field(k, 1)
    errs = []
    for z in [0.3 + 0.4j, 1.0, 2.0j, 1.5 - 2.5j]:
        got = transforms.symplectic_fourier(F, z)
        ref = (-1) ** k * special.varphi(k, 1, abs(z))
        errs.append(abs(got - ref))
    print("sympl eigen n=1 k=%d err %.3e (per_axis %d)" % (k, max(errs), F.rule.axis_nodes.size))

# --- symplectic eigenrelation, n=2, streaming
t0 = time.time()
for k in [0, 2, 6]:
    F = transforms.phi_field(k, 2)
    errs = []
    zs = np.array([[0.5 + 0.2j, -0.3 + 0.1j], [1.0 + 1.0j, 0.5 - 0.5j], [2.0, 1.5j]])
    got = transforms.symplectic_fourier_many(F, zs)
    rr = np.sqrt(np.sum(np.abs(zs) ** 2, axis=1))
    ref = (-1) ** k * special.varphi(k, 2, rr)
    print(
        "sympl eigen n=2 k=%d err %.3e (per_axis %d, %.1fs)"
        % (k, np.max(np.abs(got - ref)), F.rule.axis_nodes.size, time.time() - t0)
    )
    t0 = time.time()

# --- double apply on self grid, n=1: F_s F_s F = F(-z) = F (radial)
F = transforms.phi_field(4, 1)
u = F.rule.axis_nodes
G1 = transforms.symplectic_self_grid(F)
F2 = transforms.ComplexField(
    n=1, rule=F.rule, evaluator=None, env_rate=0.25, meta={"kind": "grid"}
)
# wrap grid values in an interpolating evaluator? no: make self-grid accept values
# instead: check F_s G1 at a few points equals varphi (since G1 = (-1)^4 varphi on grid)
U, V = np.meshgrid(u, u, indexing="ij")
ref = special.varphi(4, 1, np.sqrt(U**2 + V**2))
print("self-grid eigen err:", np.max(np.abs(G1 - ref)))

# --- hankel eigenrelation
for delta in [0.0, 0.5, 1.0, 1.5, 2.0]:
    worst = 0.0
    for k in [0, 1, 5, 12, 20]:
        prof = functions.make_profile("psi:k=%d,delta=%g" % (k, delta))
        rs = np.linspace(0.0, 8.0, 33)
        got = transforms.hankel(prof, delta, rs)
        ref = (-1) ** k * special.laguerre_psi(k, delta, rs)
        worst = max(worst, float(np.max(np.abs(got - ref))))
    print("hankel eigen delta=%.1f sup err %.3e" % (delta, worst))

# --- hankel inversion on gaussmix
gm = functions.make_profile("gaussmix")
delta = 1.5
himg = functions.profile_from_callable(
    "h-img", 1.0 / 8.0, lambda s: transforms.hankel(gm, delta, s)
)
ss = np.linspace(0.1, 4.0, 9)
got = transforms.hankel(himg, delta, ss)
ref = gm.evaluate(ss)
print("hankel inversion err:", np.max(np.abs(got - ref)))

# --- bargmann
h0 = functions.make_function("hermite:k=0", n=1)
h1 = functions.make_function("hermite:k=1", n=1)
h5 = functions.make_function("hermite:k=5", n=1)
print("B Phi0 at 0:", transforms.bargmann_1d(h0, 0.0), "expect", math.pi ** 0.25)
z = 0.7 - 0.3j
print(
    "B Phi1 linear:",
    transforms.bargmann_1d(h1, z) / z,
    "expect",
    (2 * math.factorial(1) / math.sqrt(math.pi)) ** -0.5,
)

# B(f-hat)(z) = B f(-i z) for gaussian b=0.5
g = functions.make_function("gaussian:b=0.5", n=1)
gh = g.fourier_spec()
for z in [0.5, 1.0 + 0.8j, -1.2j]:
    lhs = transforms.bargmann_1d(gh, z)
    rhs = transforms.bargmann_1d(g, -1j * z)
    print("B-hat vs B(-iz) err:", abs(lhs - rhs))

# --- taylor coeffs
c = transforms.taylor_coeffs_cauchy(lambda z: z**2, 1.5, 6)
print("taylor z^2:", np.round(c, 12))
c = transforms.taylor_coeffs_cauchy(np.exp, 2.0, 10)
ref = 1.0 / np.array([math.factorial(k) for k in range(10)])
print("taylor e^z err:", np.max(np.abs(c - ref)))
cB = transforms.taylor_coeffs_cauchy(lambda zz: transforms.bargmann_many(h5, zz), 3.0, 8)
zeta5 = (2**5 * math.factorial(5) / math.sqrt(math.pi)) ** -0.5
print("taylor B Phi5: c5=%.12f expect %.12f; others max %.3e" % (
    cB[5].real, zeta5, max(abs(cB[j]) for j in range(8) if j != 5)))

# --- u_delta routes and values
for delta in [0.5, 1.0, 2.0]:
    p0 = functions.make_profile("psi:k=0,delta=%g" % delta)
    p1 = functions.make_profile("psi:k=1,delta=%g" % delta)
    ws = np.linspace(0.0, 5.0, 11)
    got0 = transforms.u_delta(p0, delta, ws)
    ref0 = np.full_like(ws, 2.0 ** (-delta - 1))
    got1 = transforms.u_delta(p1, delta, ws)
    ref1 = -(2.0 ** (-delta - 3)) * ws**2
    s0 = transforms.u_delta(p0, delta, ws, route="series")
    print(
        "u_delta d=%.1f: psi0 err %.2e, psi1 err %.2e, series vs integral %.2e"
        % (
            delta,
            np.max(np.abs(got0 - ref0)),
            np.max(np.abs(got1 - ref1)),
            np.max(np.abs(s0 - got0)),
        )
    )

# intertwining U_d(H_d f)(w) = U_d f(-iw)
delta = 1.0
gmh = functions.profile_from_callable(
    "gm-h", 0.24, lambda s: transforms.hankel(gm, delta, s)
)
ws = np.linspace(0.2, 4.0, 8)
lhs = transforms.u_delta(gmh, delta, ws)
rhs = transforms.u_delta(gm, delta, -1j * ws)
print("u_delta intertwining err:", np.max(np.abs(lhs - rhs)))

# --- fourier eigen + fixed point + partial
g1f = functions.make_function("gaussian:b=1", n=1)
xs = np.linspace(-3, 3, 13)
got = transforms.fourier_many(g1f, {1}, xs[:, None])
ref = g1f.evaluate(xs)
print("fourier gaussian fixed point:", np.max(np.abs(got - ref) / np.abs(ref)))
h1v = transforms.fourier_many(h1, {1}, xs[:, None])
print("fourier Phi1 -> -i Phi1:", np.max(np.abs(h1v - (-1j) * h1.evaluate(xs))))
g2 = functions.make_function("gaussian:b=0.5", n=2)
pts = np.array([[0.5, 1.0], [1.5, -0.5]])
got = transforms.fourier_many(g2, {1}, pts)
# partial transform along axis 1 only: product structure means 1-D transform times carried factor
g1d = functions.make_function("gaussian:b=0.5", n=1)
ref = transforms.fourier_many(g1d, {1}, pts[:, :1]) * g1d.evaluate(pts[:, 1])
print("partial fourier vs product:", np.max(np.abs(got - ref)))
