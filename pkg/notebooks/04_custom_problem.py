# %% [markdown]
# # Problems from expression strings
#
# Variables: x, u, v (= u'), z (= int k u dt) in f; x, t in the kernel.
# ``^`` is power and binds tighter than unary minus: -x^2 = -(x^2).

# %%
import numpy as np

from navier_ide import ExactError, GridSpec, convergence_table, from_expressions, observed_order, solve

# u'''' = pi^4 sin(pi x) + u - sin(pi x): exact solution sin(pi x) again
p = from_expressions("pi^4*sin(pi*x) + u - sin(pi*x)", "0", exact_text="sin(pi*x)")
sol = solve(p, GridSpec(200))
print(f"{sol.iterations} sweeps, error {sol.error_u:.3e}")

# %% [markdown]
# A uniform load u'''' = 1 keeps the right-hand side nonzero at the ends,
# so here the plain second order of the trapezium rule shows.

# %%
load = from_expressions("1", "0", exact_text="(x^4 - 2*x^3 + x)/24")
rows = convergence_table(load, (25, 50, 100, 200), ExactError())
for r, o in zip(rows, [np.nan] + observed_order(rows)):
    print(f"N = {r.n:4d}  error {r.error:.4e}  order {o:.3f}")
