# %% [markdown]
# # Example 1: convergence tables
#
# f = u^2 z + u v - e^x sin^2(pi x)/2 + pi^4 sin(pi x) - (pi/2) sin(2 pi x),
# k(x, t) = e^x sin(pi t), exact solution sin(pi x).

# %%
from navier_ide import ExactError, Successive, convergence_table, example1
from navier_ide.study import format_table

grids = (50, 100, 150, 200, 300, 400, 500, 800, 1000)
problem = example1()

# %% [markdown]
# Stop as soon as the error against the exact solution is at most h^2.
# The error stays near 2.86e-6 for N = 100..500 because three sweeps are
# enough there; the fourth sweep only becomes necessary once h^2 drops below it.

# %%
print(format_table(convergence_table(problem, grids, ExactError())))

# %% [markdown]
# Stop on ||Phi_m - Phi_{m-1}|| <= 1e-10 instead. Seven sweeps every time,
# and the error falls roughly like h^4 until round-off takes over.
# The fourth order is no accident: Phi vanishes at both ends here, which
# cancels the h^2 term of the trapezium error.

# %%
print(format_table(convergence_table(problem, grids, Successive(1e-10))))
