import math
import time

import numpy as np

from hermex import functions, hermite, special

P = lambda *a: print(*a, flush=True)

# laguerre_coeff oracles
psi0 = functions.profile_from_callable(
    "psi0d1", 0.5, lambda s: special.laguerre_psi(0, 1.0, s)
)
P("(psi0,psi0) d=1:", hermite.laguerre_coeff(psi0, (0, 1.0)), "want", 0.5 * math.gamma(2.0))
for delta in (0.0, 1.0, 1.5):
    worst = 0.0
    for k in range(11):
        pk = functions.profile_from_callable(
            "psi%d" % k, 0.5, lambda s, k=k, d=delta: special.laguerre_psi(k, d, s)
        )
        r = hermite.laguerre_coeff(pk, (k, delta), normalized=True)
        worst = max(worst, abs(r - 1.0))
    P("R_k(psi_k)=1 delta", delta, "worst", worst)
p1 = functions.profile_from_callable("psi1d1", 0.5, lambda s: special.laguerre_psi(1, 1.0, s))
P("(psi1,psi0) cross:", abs(hermite.laguerre_coeff(p1, (0, 1.0))))

# spherical decomposition
g = functions.make_function("gaussian:b=0.8", n=2)
profs, tail = hermite.spherical_decompose(g, 4)
P("radial energies:", [(p.m, p.j, round(p.energy, 10)) for p in profs if p.energy > 1e-12])
P("radial tail:", tail)

gh = functions.make_function("gauss_harmonic:b=0.9,m=2,kind=cos")
profs, tail = hermite.spherical_decompose(gh, 5)
P("m2cos energies:", [(p.m, p.j, round(p.energy, 10)) for p in profs if p.energy > 1e-12])
P("m2cos norm_sq:", gh.norm_sq, "tail:", tail)

ex = functions.make_function("example44")
t0 = time.time()
profs, tail = hermite.spherical_decompose(ex, 20)
P("ex44 decompose t", round(time.time() - t0, 2), "tail:", tail)

# spherical projection norms
gs2 = functions.make_function("hermite:k1=0,k2=0", n=2)
P("ground P0 spherical:", hermite.proj_norm_spherical(gs2, 0))
ghc = functions.make_function("gauss_harmonic:b=0.9,m=2,kind=complex")
for k in range(5):
    P("  m2complex P%d:" % k, hermite.proj_norm_spherical(ghc, k))

# vs direct
t0 = time.time()
nd = hermite.proj_norms_direct(ex, 12)
ns = np.array([hermite.proj_norm_spherical(ex, k) for k in range(13)])
P("ex44 spherical t", round(time.time() - t0, 2))
P("ex44 spherical vs direct:", float(np.max(np.abs(ns - nd))))

# d_k norms
t0 = time.time()
c0 = hermite.d_k_norms(gs2, 0, route="cauchy")
f0 = hermite.d_k_norms(gs2, 0, route="formula")
P("d0 ground cauchy/formula:", c0, f0, "want", 2 * math.pi**2, "t", round(time.time() - t0, 2))
for k in (2, 4, 6):
    c = hermite.d_k_norms(ghc, k, route="cauchy")
    fm = hermite.d_k_norms(ghc, k, route="formula")
    P("d%d m2complex:" % k, c, fm, "rel", abs(c / fm - 1) if fm else None)
P("radius validation:", end=" ")
try:
    hermite.d_k_norms(gs2, 0, route="cauchy", radius=50.0)
    P("NO ERROR")
except ValueError as e:
    P("ok:", e)

# t_operator
t0 = time.time()
tg = hermite.t_operator(g)
xs = np.linspace(-3, 3, 7)
dmax = float(np.max(np.abs(tg.evaluate(xs, xs * 0.3) - g.evaluate(xs, xs * 0.3))))
P("T radial identity sup:", dmax, "t", round(time.time() - t0, 2))
tgh = hermite.t_operator(ghc)
vals = tgh.evaluate(xs, 0.5 + 0 * xs)
want = 0.5 * ghc.evaluate(xs, 0.5 + 0 * xs)
P("T single harmonic 2^{-1} scale sup:", float(np.max(np.abs(vals - want))))
n_t = hermite.l2_norm_sq(tg)
P("norm contraction:", n_t, "<=", hermite.l2_norm_sq(g))
