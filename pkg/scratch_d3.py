import math, time
from hermex import decay, functions, hermite

t0 = time.time()

# Lemma 5.5 feed-through: damped O(2)-finite function, sharp-rate bound
f = functions.make_function("gauss_harmonic:b=0.5,m=2,kind=cos", n=2)
hp = decay.hardy_parameter(f)
tf = hermite.t_operator(f)
table = hermite.projection_table(tf, 16, route="direct")
t_sharp = 0.5 * math.atanh(hp["a"])
b = decay.bound_check(table, 2, 0.0, t_sharp)
print("damped harmonic: a=%.4f C_min=%.4f at k=%d holds=%s" % (hp["a"], b["C_min"], b["attained_k"], b["holds"]))

# criterion-7 battery: monotone implied_a + T1_3 floor
prev = 0.0
for b_ in (0.3, 0.5, 0.7):
    for n in (1, 2):
        g = functions.make_function("gaussian:b=%g" % b_, n=n)
        tab = hermite.projection_table(g, 40 if n == 1 else 28, route="direct")
        fit = decay.decay_fit(tab, n)
        hp = decay.hardy_parameter(g)
        floor = hp["a"] / 2 - 0.01
        print("b=%.1f n=%d tanh_t=%.5f implied_a=%.5f floor=%.4f ok=%s" %
              (b_, n, fit.tanh_t, fit.implied_a, floor, fit.implied_a >= floor))
    if not fit.implied_a > prev:
        print("  MONOTONE VIOLATION")
    prev = fit.implied_a

for name, n, kmax in [("example44", 2, 24),
                      ("gauss_harmonic:b=0.5,m=2,kind=cos", 2, 24),
                      ("gauss_harmonic:b=0.7,m=3,kind=sin", 2, 27),
                      ("gauss_harmonic:b=0.5,m=0,kind=cos", 2, 24),
                      ("gauss_harmonic:b=0.5,m=2,kind=complex", 2, 24)]:
    f = functions.make_function(name, n=n)
    hp = decay.hardy_parameter(f)
    tab = hermite.projection_table(f, kmax, route="direct")
    try:
        fit = decay.decay_fit(tab, n)
        msg = "implied_a=%.5f floor=%.4f ok=%s" % (fit.implied_a, hp["a"] / 2 - 0.01,
                                                   fit.implied_a >= hp["a"] / 2 - 0.01)
    except ValueError as exc:
        msg = "fit error: %s" % exc
    print("%-42s a=%.4f %s" % (name, hp["a"], msg))

print("elapsed", time.time() - t0)
