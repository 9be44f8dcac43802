import math
import time
import numpy as np

from hermex import functions, transforms

# ground state: both sides pi e^{-r^2/2}
h00 = functions.make_function("hermite:k1=0,k2=0", n=2)
rs = np.array([0.5, 1.0, 2.0, 3.5, 5.0, 6.0])
t0 = time.time()
lhs = transforms.chain_lhs(h00, rs)
t1 = time.time()
rhs = transforms.chain_rhs(h00, rs)
t2 = time.time()
ref = math.pi * np.exp(-rs * rs / 2)
print("ground lhs err:", np.max(np.abs(lhs - ref)), " (%.1fs)" % (t1 - t0))
print("ground rhs err:", np.max(np.abs(rhs - ref)), " (%.1fs)" % (t2 - t1))
print("lhs/rhs at r=1:", (lhs[1] / rhs[1]).real)

# battery: gaussian b=0.5
g = functions.make_function("gaussian:b=0.5", n=2)
t0 = time.time()
lhs = transforms.chain_lhs(g, rs)
t1 = time.time()
rhs = transforms.chain_rhs(g, rs)
t2 = time.time()
diff = np.abs(lhs - rhs) / (1.0 + np.abs(rhs))
print("b=0.5 chain: max scaled diff %.3e  lhs %.1fs rhs %.1fs" % (np.max(diff), t1 - t0, t2 - t1))
print("  values at r:", np.round(np.abs(rhs), 10))

# example44
f44 = functions.make_function("example44", n=2)
t0 = time.time()
lhs = transforms.chain_lhs(f44, rs)
t1 = time.time()
rhs = transforms.chain_rhs(f44, rs)
t2 = time.time()
diff = np.abs(lhs - rhs) / (1.0 + np.abs(rhs))
print("ex44 chain: max scaled diff %.3e  lhs %.1fs rhs %.1fs" % (np.max(diff), t1 - t0, t2 - t1))
print("  values:", np.round(np.abs(rhs), 10))
