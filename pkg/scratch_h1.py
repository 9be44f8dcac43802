import math
import time

import numpy as np

from hermex import functions, hermite

P = lambda *a: print(*a, flush=True)

h3 = functions.make_function("hermite:k=3", n=1)
P("phi3@3:", hermite.hermite_coeff(h3, 3))
P("phi3@2 parity:", abs(hermite.hermite_coeff(h3, 2)))
g1 = functions.make_function("gaussian:b=1", n=1)
P("gauss@0:", hermite.hermite_coeff(g1, 0), "want", math.pi**0.25)

ex = functions.make_function("example44")
a = 2**-0.5
mu = (1 - a) / (1 + a)
t0 = time.time()
nd = hermite.proj_norms_direct(ex, 24)
P("direct time", time.time() - t0)
worst = 0.0
for k in range(0, 25, 2):
    tgt = 2 * math.pi / (1 + a) * mu ** (k // 2)
    worst = max(worst, abs(nd[k] ** 2 / tgt - 1))
P("even rel worst:", worst, " P0^2:", nd[0] ** 2, " P2^2:", nd[2] ** 2)
P("odd max:", float(np.max(nd[1::2])))

gs1 = functions.make_function("hermite:k=0", n=1)
t0 = time.time()
nw1, info1 = hermite.proj_norms_wigner(gs1, 8)
P("wig1 t", time.time() - t0, "norms", nw1, info1)

gs2 = functions.make_function("hermite:k1=0,k2=0", n=2)
t0 = time.time()
nw2, info2 = hermite.proj_norms_wigner(gs2, 6)
P("wig2 t", time.time() - t0, "norms", nw2, info2)
