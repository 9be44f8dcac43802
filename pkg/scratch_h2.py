import math
import time

import numpy as np

from hermex import functions, hermite

P = lambda *a: print(*a, flush=True)

ex = functions.make_function("example44")
a = 2**-0.5
mu = (1 - a) / (1 + a)

t0 = time.time()
nw, info = hermite.proj_norms_wigner(ex, 20)
P("ex44 wigner t", time.time() - t0, info)
worst = 0.0
for k in range(0, 21, 2):
    tgt = 2 * math.pi / (1 + a) * mu ** (k // 2)
    rel = abs(nw[k] ** 2 / tgt - 1)
    worst = max(worst, rel)
    if k in (0, 2, 10, 20):
        P(k, nw[k] ** 2, tgt, rel)
P("even rel worst:", worst)
P("odd max norm:", float(np.max(nw[1::2])))
