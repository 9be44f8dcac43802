import math, time
import numpy as np
from hermex import functions, transforms, hermite, special, quadrature

t0 = time.time()

# 1) Wigner diagonal-sum constant, n=2
pts = np.array([[0.4 + 0.2j, -0.6 + 0.3j],
                [1.0 + 1.0j, 0.5 - 0.5j],
                [2.0 + 0.0j, 0.0 + 1.5j],
                [0.0 + 0.0j, 0.0 + 0.0j],
                [2.5 - 1.0j, 1.5 + 2.0j]])
rr = np.sqrt(np.sum(np.abs(pts) ** 2, axis=1))
for k in range(3):
    tot = np.zeros(len(pts), dtype=complex)
    for k1 in range(k + 1):
        f = functions.make_function("hermite:k1=%d,k2=%d" % (k1, k - k1), n=2)
        tot += transforms.wigner_engine(f).values(pts)
    ref = special.varphi(k, 2, rr) / (2.0 * math.pi)
    print("diag k=%d maxdev=%.3e  ratio0=%s" % (
        k, float(np.max(np.abs(tot - ref))), (tot[3] / ref[3]) if ref[3] else "n/a"))
print("varphi(0,2,0)=", special.varphi(0, 2, 0.0), " varphi(1,2,0)=", special.varphi(1, 2, 0.0))
t1 = time.time(); print("diag time %.2f" % (t1 - t0))

# 2) n=1 pair Gram
R = 14.0
rule = quadrature.mapped_legendre(112, -R, R)
u, w = rule.nodes, rule.weights
X, Y = np.meshgrid(u, u, indexing="ij")
Z = (X + 1j * Y).ravel().reshape(-1, 1)
W = np.outer(w, w).ravel()
vals = []
for j in range(4):
    for k in range(4):
        fj = functions.make_function("hermite:k=%d" % j, n=1)
        fk = functions.make_function("hermite:k=%d" % k, n=1)
        vals.append(transforms.wigner_engine(fj, fk).values(Z))
V = np.array(vals)
G = (V * W) @ V.conj().T
off = G - np.diag(np.diag(G))
diag = np.diag(G).real
print("gram offdiag max %.3e  diag mean %.6f spread %.3e" % (
    float(np.max(np.abs(off))), float(np.mean(diag)),
    float(np.max(np.abs(diag - np.mean(diag))))))
t2 = time.time(); print("gram time %.2f" % (t2 - t1))

# 3) Cholewinski moments
ru = quadrature.mapped_legendre(640, 0.0, 16.0)
rho, wq = ru.nodes, ru.weights
for delta in (0.5, 1.0, 2.0):
    h = (2.0 ** delta / math.pi) * (rho ** 2 / 2.0) ** (delta + 1.0) * special.bessel_k(delta, rho ** 2 / 2.0)
    worst = 0.0
    for k in range(11):
        got = 2.0 * math.pi * float(np.sum(rho ** (4 * k + 1) * h * wq))
        ref = math.exp((1.0 + 2.0 * delta + 4.0 * k) * math.log(2.0)
                       + math.lgamma(k + 1.0) + math.lgamma(k + delta + 1.0))
        worst = max(worst, abs(got - ref) / ref)
    print("cholewinski delta=%g worst rel %.3e" % (delta, worst))
t3 = time.time(); print("chol time %.2f" % (t3 - t2))

# 4) ex44 spots + table check
f44 = functions.make_function("example44", n=2)
a = f44.params["a"]
mu = (1.0 - a) / (1.0 + a)
law0 = 2.0 * math.pi / (1.0 + a)
print("law0=%.7f  |law0-3.68060|=%.2e" % (law0, abs(law0 - 3.68060)))
print("law1=%.7f  |law1-0.63149|=%.2e" % (law0 * mu, abs(law0 * mu - 0.63149)))
tab = hermite.projection_table(f44, 21, route="direct")
worst = max(abs(tab.entries[2 * k] ** 2 - law0 * mu ** k) / (law0 * mu ** k) for k in range(11))
oddmax = max(tab.entries[k] for k in range(1, 22, 2))
print("direct geometric worst rel %.3e  odd max %.3e" % (worst, oddmax))
t4 = time.time(); print("direct table time %.2f" % (t4 - t3))
tabw = hermite.projection_table(f44, 21, route="wigner")
worstw = max(abs(tabw.entries[2 * k] ** 2 - law0 * mu ** k) / (law0 * mu ** k) for k in range(11))
print("wigner geometric worst rel %.3e" % worstw)
t5 = time.time(); print("wigner table kmax=21 time %.2f" % (t5 - t4))

# 5) chain cost for 8 rs on one gaussian
g5 = functions.make_function("gaussian:b=0.5", n=2)
rs = np.linspace(0.5, 6.0, 8)
lhs = transforms.chain_lhs(g5, rs)
rhs = transforms.chain_rhs(g5, rs)
print("chain gaussian b=0.5 worst %.3e" % float(np.max(np.abs(lhs - rhs) / (1.0 + np.abs(rhs)))))
t6 = time.time(); print("chain(8 pts) time %.2f" % (t6 - t5))

# 6) symplectic eigen n=2 cost k<=6
zs2 = np.array([[0.5 + 0.2j, -0.3 + 0.1j], [1.0 + 1.0j, 0.5 - 0.5j], [2.0, 1.5j]])
rr2 = np.sqrt(np.sum(np.abs(zs2) ** 2, axis=1))
dev2 = 0.0
for k in range(7):
    F = transforms.phi_field(k, 2)
    got = transforms.symplectic_fourier_many(F, zs2)
    ref = (-1.0) ** k * special.varphi(k, 2, rr2)
    dev2 = max(dev2, float(np.max(np.abs(got - ref))))
print("symplectic n=2 k<=6 maxdev %.3e" % dev2)
t7 = time.time(); print("symplectic n=2 time %.2f" % (t7 - t6))

# 7) d_k cauchy vs formula cost
for text in ("gaussian:b=0.7", "gauss_harmonic:b=0.5,m=2,kind=cos"):
    f = functions.make_function(text, n=2)
    formulas = [hermite.d_k_norms(f, k, "formula") for k in range(11)]
    fmax = max(formulas)
    worst = 0.0
    for k in range(11):
        ca = hermite.d_k_norms(f, k, "cauchy")
        rel = abs(ca - formulas[k]) / (1e-9 * fmax + max(ca, formulas[k]))
        worst = max(worst, rel)
    print("dk %s worst rel %.3e" % (text, worst))
t8 = time.time(); print("dk time %.2f" % (t8 - t7))
print("TOTAL %.2f" % (t8 - t0))
