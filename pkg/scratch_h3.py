import math
import time

import numpy as np

from hermex import functions, hermite

P = lambda *a: print(*a, flush=True)

ex = functions.make_function("example44")
a = 2**-0.5
mu = (1 - a) / (1 + a)
tgt = np.zeros(21)
tgt[0::2] = [2 * math.pi / (1 + a) * mu**j for j in range(11)]

t0 = time.time()
sums = hermite._wigner_level_sums(ex, 20)
P("auto per_axis t", round(time.time() - t0, 1))
err = np.abs(sums.real - tgt)
P("  abs err even:", ["%.1e" % e for e in err[0::2]])
P("  abs err odd :", ["%.1e" % e for e in err[1::2]])
relw = max(
    abs(sums.real[2 * j] / tgt[2 * j] - 1) for j in range(11)
)
P("  even rel worst:", "%.2e" % relw)

t0 = time.time()
nw, info = hermite.proj_norms_wigner(ex, 12)
P("kmax=12 t", round(time.time() - t0, 1), info)
relw = max(abs(nw[2 * j] ** 2 / tgt[2 * j] - 1) for j in range(7))
P("  even rel worst:", "%.2e" % relw, " odd norm max:", "%.1e" % np.max(nw[1::2]))
