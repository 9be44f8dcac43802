import math
import numpy as np

from hermex import functions, transforms, special, quadrature

rng = np.random.default_rng(7)

# 1. V(Phi_0, Phi_0) n=1 closed form
f0 = functions.make_function("hermite:k=0", n=1)
eng = transforms.wigner_engine(f0)
zs = (rng.uniform(-4, 4, size=(30,)) + 1j * rng.uniform(-4, 4, size=(30,)))
vals = eng.values(zs[:, None])
ref = (2 * math.pi) ** -0.5 * np.exp(-np.abs(zs) ** 2 / 4)
print("phi0 n=1 err:", np.max(np.abs(vals - ref)))

# 2. gaussian b=0.5 n=1
b = 0.5
g1 = functions.make_function("gaussian:b=0.5", n=1)
engg = transforms.wigner_engine(g1)
vals = engg.values(zs[:, None])
ref = (2 * b) ** -0.5 * np.exp(-zs.real**2 / (4 * b) - b * zs.imag**2 / 4)
print("gauss b=0.5 n=1 err:", np.max(np.abs(vals - ref)))

# 3. example44 n=2 closed form
a = 2 ** -0.5
f44 = functions.make_function("example44", n=2)
eng44 = transforms.wigner_engine(f44)
pts = rng.uniform(-3.5, 3.5, size=(40, 4))
Z = pts[:, :2] + 1j * pts[:, 2:]
vals = eng44.values(Z)
x1, x2, y1, y2 = pts[:, 0], pts[:, 1], pts[:, 2], pts[:, 3]
ref = (
    1.0
    / (2 * a)
    * np.exp(-(a / 2) * (x1**2 + x2**2 + y1**2 + y2**2))
    * np.exp(0.5 * (x1 * y2 + x2 * y1))
)
print("ex44 err:", np.max(np.abs(vals - ref)))

# plane vs values consistency
x1g = np.linspace(-3, 3, 7)
x2g = np.linspace(-2, 2, 5)
P = eng44.plane(0.7, -1.3, x1g, x2g)
ptsg = np.array([[xx1 + 0.7j, xx2 - 1.3j] for xx1 in x1g for xx2 in x2g])
V2 = eng44.values(ptsg).reshape(7, 5)
print("plane vs values:", np.max(np.abs(P - V2)))

# 4. M0 table vs closed form
tab = transforms._MomentTable(2.0, 0)
vv = np.linspace(-10, 10, 101)
m0 = tab.moments(vv)[:, 0]
ref0 = math.sqrt(2 * math.pi / 2.0) * np.exp(-vv**2 / 4)
print("M0 err:", np.max(np.abs(m0 - ref0)))

# hermite k=2 n=1: compare engine to brute quadrature of the defining integral
f2 = functions.make_function("hermite:k=2", n=1)
eng2 = transforms.wigner_engine(f2)
rule = quadrature.mapped_legendre(400, -10, 10)
X, W = rule.nodes, rule.weights
for z in [0.3 + 0.9j, -1.2 + 2.1j]:
    x, y = z.real, z.imag
    brute = (
        (2 * math.pi) ** -0.5
        * np.exp(0.5j * x * y)
        * np.sum(W * f2.evaluate(X + y) * np.conj(f2.evaluate(X)) * np.exp(1j * x * X))
    )
    got = eng2.values(np.array([[z]]))[0]
    print("hermite2 z=%s err %.3e" % (z, abs(got - brute)))

# 5. symplectic: ground state self-fixed point, n=1
F1 = transforms.phi_field(0, 1)
for z in [0.5 + 0.5j, 1.5 - 0.3j, 2.5j]:
    got = transforms.symplectic_fourier(F1, z)
    ref = math.exp(-abs(z) ** 2 / 4)
    print("sympl phi0 n=1 z=%s: %.6e vs %.6e" % (z, got.real, ref))

# 6. radialize: F=1 and V(Phi_0 x Phi_0) n=2
one = transforms.ComplexField(
    n=2,
    rule=quadrature.tensor_rule(2, per_axis=8, R=10.0),
    evaluator=lambda *cs: np.ones_like(cs[0]) + 0j,
    env_rate=1.0,
)
print("radialize 1:", transforms.radialize(one, 2.0), 2 * math.pi**2)

h00 = functions.make_function("hermite:k1=0,k2=0", n=2)
Fh = transforms.wigner_field(h00)
for r in [0.5, 2.0, 5.0]:
    got = transforms.radialize(Fh, r)
    ref = math.pi * math.exp(-r * r / 4)
    print("radialize V00 r=%.1f err %.3e" % (r, abs(got - ref)))

# 7. frame-adapted radialize of example44 V-field vs closed form
F44 = transforms.wigner_field(f44)
print("frame:\n", F44.frame)
lam_lo, lam_hi = f44._v_form_rates()
for r in [3.0, 6.0, 10.0, 20.0]:
    got = transforms.radialize(F44, r)
    ref = (
        (1 / (2 * a))
        * 4
        * math.pi**2
        * (math.exp(-lam_lo * r * r) - math.exp(-lam_hi * r * r))
        / (2 * r * r * (lam_hi - lam_lo))
    )
    print("radialize ex44 r=%.1f rel %.3e" % (r, abs(got - ref) / abs(ref)))
