import json, math, time
import numpy as np
from hermex import decay, functions, hermite

t0 = time.time()
phi2 = functions.make_function("hermite:k=2", n=1)
for ann in [(0.5, 6.0), (3.0, 10.0), (6.0, 12.0), (8.0, 12.0)]:
    e = decay.hardy_envelope(phi2, ann)
    print("phi2", ann, "gamma", round(e.gamma_star, 6))

e44 = functions.make_function("example44")
a = 2 ** -0.5

# bound_check examples
t44 = hermite.projection_table(e44, 24, route="direct")
s = 0.5 * math.atanh(a / 2)
b1 = decay.bound_check(t44, 2, (2 - 1) / 4.0, s)
print("ex44 T1.3-style bound holds", b1["holds"], "C_min %.4f at k=%d" % (b1["C_min"], b1["attained_k"]))
tt = 0.5 * math.atanh(a)
b2 = decay.bound_check(t44, 2, 0.0, tt)
print("ex44 sharp bound holds", b2["holds"], "C_min %.4f at k=%d" % (b2["C_min"], b2["attained_k"]))
slow = {k: math.exp(-(2 * k + 2) * 0.1) for k in range(25)}
b3 = decay.bound_check(slow, 2, 0.0, tt)
print("slow synthetic holds", b3["holds"])

# theorem checks
r = decay.theorem_check(e44, "T1_3")
print("T1_3 ex44:", r["status"], "pass", r["pass"], "a", round(r["hypothesis"]["a"], 6),
      "implied_a", round(r["fit"]["implied_a"], 6), "gap", round(r["fit"]["rate_gap"], 4))
g2 = functions.make_function("gaussian:b=0.5", n=2)
r = decay.theorem_check(g2, "T1_4")
print("T1_4 gauss .5 n=2:", r["status"], "tanh_t", round(r["fit"]["tanh_t"], 6),
      "implied_a", round(r["fit"]["implied_a"], 6), "C_min", round(r["bound"]["C_min"], 4))
r = decay.theorem_check(e44, "T1_4")
print("T1_4 ex44:", r["status"], r["hypothesis"].get("reason"))
g1 = functions.make_function("gaussian:b=0.5", n=1)
r = decay.theorem_check(g1, "T1_1")
print("T1_1 gauss n=1:", r["status"], "pass", r["pass"])
phi0 = functions.make_function("hermite:k=0", n=1)
r = decay.theorem_check(phi0, "T1_1")
print("T1_1 phi0:", r["status"], "pass", r["pass"], "fit", r["fit"], "hyp a", round(r["hypothesis"]["a"], 4))
r = decay.theorem_check(g2, "T1_2")
print("T1_2 gauss n=2:", r["status"], "pass", r["pass"], "a_partial", r["hypothesis"]["a_partial"])
r = decay.theorem_check(g2, "T4_1")
print("T4_1 gauss n=2:", r["status"], "pass", r["pass"], "C_min", round(r["bound"]["C_min"], 4))
r = decay.theorem_check(g2, "T5_2")
print("T5_2 gauss n=2:", r["status"], "pass", r["pass"], "mu", round(r["hypothesis"]["mu"], 4),
      "C_min %.3e" % r["bound"]["C_min"], "fit",
      r["fit"] if r["fit"].get("degenerate") else "mu_fit %.5f gap %.4f rms %.2e" % (
          r["fit"]["mu_fit"], r["fit"]["mu_gap"], r["fit"]["residual_rms"]))
r = decay.theorem_check(e44, "T5_2")
print("T5_2 ex44:", r["status"], "pass", r["pass"], "fit",
      r["fit"] if r["fit"].get("degenerate") else "mu_fit %.5f vs mu %.5f" % (
          r["fit"]["mu_fit"], r["hypothesis"]["mu"]))
gb1 = functions.make_function("gaussian:b=1", n=2)
r = decay.theorem_check(gb1, "T1_4")
print("T1_4 gauss b=1:", r["status"], r["hypothesis"].get("reason"))

print("json ok:", len(json.dumps(decay.theorem_check(e44, "T1_3"))))
print("elapsed", time.time() - t0)
