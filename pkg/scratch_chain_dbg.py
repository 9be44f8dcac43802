import math
import numpy as np

from hermex import functions, transforms, quadrature, special

b = 0.5
g = functions.make_function("gaussian:b=0.5", n=2)
lam_lo, lam_hi = g._v_form_rates()
print("rates", lam_lo, lam_hi)
A0 = 1.0 / (2 * b)  # V(0)

def G_exact(s):
    # radialize(V, sqrt2 s): sphere integral of the product Gaussian
    rho2 = 2.0 * s * s
    num = np.exp(-lam_lo * rho2) - np.exp(-lam_hi * rho2)
    out = A0 * 4 * math.pi**2 * num / (2 * rho2 * (lam_hi - lam_lo))
    return np.where(s == 0, A0 * 2 * math.pi**2, out)

F = transforms.wigner_field(g)
ss = np.array([0.3, 1.0, 3.0, 6.0, 10.0, 14.0, 16.4])
rad = np.array([transforms.radialize(F, math.sqrt(2.0) * s) for s in ss])
print("radialize rel err:", np.abs(rad - G_exact(ss)) / np.abs(G_exact(ss)))

# H1 of exact G via a big rule
rs = np.array([0.5, 1.0, 2.0, 3.5, 5.0, 6.0])
rule = quadrature.radial_rule(1.0, 16.5, N=400)
s = rule.nodes
Hexact = special.bessel_ratio(1.0, np.outer(rs, s)) @ (rule.weights * G_exact(s))
# tail beyond 16.5?
rule2 = quadrature.radial_rule(1.0, 26.0, N=700)
s2 = rule2.nodes
Hexact2 = special.bessel_ratio(1.0, np.outer(rs, s2)) @ (rule2.weights * G_exact(s2))
print("H1 16.5-vs-26 truncation:", np.abs(Hexact - Hexact2) / (1 + np.abs(Hexact2)))

rhs = transforms.chain_rhs(g, rs)
print("rhs vs exact:", np.abs(rhs - Hexact2) / (1 + np.abs(Hexact2)))

lhs = transforms.chain_lhs(g, rs)
print("lhs vs exact:", np.abs(lhs - Hexact2) / (1 + np.abs(Hexact2)))
