import math, time
import numpy as np
from hermex import decay, functions, hermite

t0 = time.time()

g = functions.make_function("gaussian:b=0.5", n=1)
env = decay.hardy_envelope(g)
print("gauss b=.5 n=1: gamma", env.gamma_star, "C", env.c_star, "bdry", env.boundary_attained)

e44 = functions.make_function("example44")
env44 = decay.hardy_envelope(e44)
a = 2 ** -0.5
print("ex44 gamma err", env44.gamma_star - a / 2, "C", env44.c_star, "bdry", env44.boundary_attained)
envh = decay.transform_envelope(e44)
print("ex44 hat gamma err", envh.gamma_star - a / 2, "C", envh.c_star)

phi2 = functions.make_function("hermite:k=2", n=1)
e_small = decay.hardy_envelope(phi2, (0.5, 6.0))
e_big = decay.hardy_envelope(phi2, (0.5, 11.5))
print("phi2 gamma small/big", e_small.gamma_star, e_big.gamma_star)

# synthetic exact recovery
tab = {k: 3.0 * math.exp(-(2 * k + 1) * 0.25) for k in range(0, 21)}
fit = decay.decay_fit(tab, 1, p_mode=0.0)
print("synthetic t err", fit.t - 0.5, "C err", fit.c - 3.0, "rms", fit.residual_rms)

# free-fit gaussian battery
for b in (0.3, 0.5, 0.7):
    f1 = functions.make_function("gaussian:b=%g" % b, n=1)
    table = hermite.projection_table(f1, 40, route="direct")
    ft = decay.decay_fit(table, 1)
    print("b=%.1f tanh(t)=%.6f implied_a=%.6f p=%.3f rms=%.2e window=%s mono=%s"
          % (b, ft.tanh_t, ft.implied_a, ft.p, ft.residual_rms, ft.k_window, ft.non_monotone))

# ex44 fit
t44 = hermite.projection_table(e44, 24, route="direct")
f44 = decay.decay_fit(t44, 2)
print("ex44 t=%.6f (target %.6f) implied_a err %.2e p=%.3f rms=%.2e"
      % (f44.t, math.atanh(a) / 2, f44.implied_a - a, f44.p, f44.residual_rms))

print("elapsed", time.time() - t0)
