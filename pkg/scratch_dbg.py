import math
import numpy as np

from hermex import functions, transforms

a = 2 ** -0.5
f44 = functions.make_function("example44", n=2)
F44 = transforms.wigner_field(f44)
lam_lo, lam_hi = f44._v_form_rates()

r = 20.0
nodes, wts = transforms._framed_sphere_nodes(F44, r)
coords = [r * nodes[:, i] for i in range(4)]
vals = np.asarray(F44.evaluator(*coords), dtype=complex)

x1, y1, x2, y2 = coords
ref = (
    1.0
    / (2 * a)
    * np.exp(-(a / 2) * (x1**2 + x2**2 + y1**2 + y2**2))
    * np.exp(0.5 * (x1 * y2 + x2 * y1))
)

num = complex(np.sum(wts * vals))
refint = complex(np.sum(wts * ref))
analytic = (
    (1 / (2 * a))
    * 4
    * math.pi**2
    * (math.exp(-lam_lo * r * r) - math.exp(-lam_hi * r * r))
    / (2 * r * r * (lam_hi - lam_lo))
)
print("num     ", num)
print("ref quad", refint)
print("analytic", analytic)
print("rel num vs analytic", abs(num - analytic) / abs(analytic))
print("rel ref vs analytic", abs(refint - analytic) / abs(analytic))

d = np.abs(vals - ref)
i = int(np.argmax(d))
print("worst node diff", d[i], "at", nodes[i], "val", vals[i], "ref", ref[i])
print("engine abs scale", np.max(np.abs(vals)), "ref scale", np.max(np.abs(ref)))

# where are the x-tilde values relative to the table cutoff?
eng = transforms.wigner_engine(f44)
tab = eng._tables[0]
v1 = x1 - eng.beta * y2
v2 = x2 - eng.beta * y1
print("vstar", tab.vstar, "max |v1|", np.max(np.abs(v1)), "max |v2|", np.max(np.abs(v2)))
mask = (np.abs(v1) > tab.vstar) | (np.abs(v2) > tab.vstar)
print("frac beyond table", mask.mean())
print("max ref where beyond", np.max(np.abs(ref[mask])) if mask.any() else 0.0)
print("max diff where inside", np.max(d[~mask]))
