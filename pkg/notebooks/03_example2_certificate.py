# %% [markdown]
# # Example 2: certificate, solution, plot
#
# u'''' = sin(pi x) [(2 - u^2) int t u dt + 1], written as
# f = (2 - u^2) z + sin(pi x) with k(x, t) = sin(pi x) t.

# %%
import os
import tempfile

import numpy as np

from navier_ide import (
    ContractionInputs,
    GridSpec,
    Successive,
    contraction_check,
    example2,
    kernel_bound_m2,
    lipschitz_estimate,
    solve,
    sup_f_check,
)
from navier_ide.plot import emit_svg

problem = example2()
M = 1.1
m2 = kernel_bound_m2(problem.kernel, 1000)
print(f"M2 = {m2:.6f}")

# %% [markdown]
# Lipschitz constants by sampling (lower estimates), then the contraction
# factor with the analytic constants L0 = 2.0515e-4, L1 = 0, L2 = 2.

# %%
print("sampled L0, L1, L2:", lipschitz_estimate(problem, M, m2=m2))
sup, ok = sup_f_check(problem, M, m2=m2)
cert = contraction_check(ContractionInputs(M, 2.0515e-4, 0.0, 2.0, m2), sup_ok=ok)
print(cert.render())

# %%
sol = solve(problem, GridSpec(100), Successive(1e-10))
print(f"{sol.iterations} sweeps, residual {sol.residual:.3e}")
print(f"max|U| = {np.max(np.abs(sol.u)):.4e} (certified <= {cert.u_bound:.4e})")
print(f"max|V| = {np.max(np.abs(sol.v)):.4e} (certified <= {cert.v_bound:.4e})")

path = os.path.join(tempfile.gettempdir(), "example2.svg")
emit_svg(sol, path, title="Example 2, N = 100")
print("plot written to", path)
