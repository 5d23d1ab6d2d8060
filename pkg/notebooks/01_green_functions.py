# %% [markdown]
# # Green functions and the trapezium tables
#
# For u'''' = phi with u = u'' = 0 at both ends the solution is
# u(x) = int G0(x, s) phi(s) ds and u'(x) = int G1(x, s) phi(s) ds.

# %%
import numpy as np

from navier_ide import GridSpec, build_tables, constants, green0, green1
from navier_ide.kernels import abs_row_integral_max
from navier_ide.problem import Problem

print("G0(0.5, 0.25) =", green0(0.5, 0.25))
print("G0(0.25, 0.5) =", green0(0.25, 0.5), "(symmetric)")
print("G1(0, 0.5), G1(0.5, 0.5), G1(1, 0.5) =", green1(0.0, 0.5), green1(0.5, 0.5), green1(1.0, 0.5))

# %% [markdown]
# The bounds M0 = max_x int |G0| and M1 = max_x int |G1| are known exactly;
# a fine trapezium grid recovers them.

# %%
m0, m1 = constants()
print(f"M0 = {m0:.6f}  numeric {abs_row_integral_max(green0, 1000):.6f}")
print(f"M1 = {m1:.6f}  numeric {abs_row_integral_max(green1, 1000):.6f}")

# %% [markdown]
# Row sums of the weighted G0 matrix integrate phi = 1, whose exact answer is
# (x^4 - 2x^3 + x)/24. The error falls by 4 per grid doubling.

# %%
zero = Problem("zero", lambda *a: 0.0, lambda x, t: 0.0 * x)
prev = None
for n in (20, 40, 80, 160):
    g = GridSpec(n)
    x = g.nodes
    err = np.max(np.abs(build_tables(zero, g).a0.sum(axis=1) - (x**4 - 2 * x**3 + x) / 24))
    ratio = "" if prev is None else f"  ratio {prev / err:.3f}"
    print(f"N = {n:4d}  max error {err:.4e}{ratio}")
    prev = err
