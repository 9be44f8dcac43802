import math
import time

import numpy as np

from hermex import functions, hermite

P = print

gs2 = functions.make_function("hermite:k1=0,k2=0", n=2)
try:
    hermite.d_k_norms(gs2, 0, route="cauchy", radius=50.0)
    P("radius validation: NO ERROR")
except ValueError as e:
    P("radius validation ok:", e)

g = functions.make_function("gaussian:b=0.8", n=2)
t0 = time.time()
tg = hermite.t_operator(g)
xs = np.linspace(-3, 3, 7)
dmax = float(np.max(np.abs(tg.evaluate(xs, xs * 0.3) - g.evaluate(xs, xs * 0.3))))
P("T radial identity sup:", dmax, "t", round(time.time() - t0, 2))

ghc = functions.make_function("gauss_harmonic:b=0.9,m=2,kind=complex")
tgh = hermite.t_operator(ghc)
vals = tgh.evaluate(xs, 0.5 + 0 * xs)
want = 0.5 * ghc.evaluate(xs, 0.5 + 0 * xs)
P("T single harmonic scale sup:", float(np.max(np.abs(vals - want))))

t0 = time.time()
n_t = hermite.l2_norm_sq(tg)
P("norm contraction:", n_t, "<=", hermite.l2_norm_sq(g), "t", round(time.time() - t0, 2))

ex = functions.make_function("example44")
t0 = time.time()
tex = hermite.t_operator(ex)
n_tex = hermite.l2_norm_sq(tex)
P("ex44 T norm:", n_tex, "<=", hermite.l2_norm_sq(ex), "t", round(time.time() - t0, 2))

# CoefficientTable round trip
tab = hermite.projection_table(g, 6, route="direct")
P("csv head:", tab.to_csv_text().splitlines()[:3])
P("bessel slack:", tab.bessel_slack(hermite.l2_norm_sq(g)))
tabw = hermite.projection_table(gs2, 4, route="wigner")
P("wigner table entries:", {k: round(v, 12) for k, v in tabw.entries.items()})
tabs = hermite.projection_table(ex, 6, route="spherical")
P("spherical table est_err:", tabs.est_err[0])
