"""Green functions of u'''' = phi under Navier conditions and the
quadrature-weighted kernel matrices used by the discrete iteration.

    u(x)  = int_0^1 G0(x, s) phi(s) ds
    u'(x) = int_0^1 G1(x, s) phi(s) ds

Note on G0: the closed form below is the one obtained by solving
u'''' = delta(x - s) with u = u'' = 0 at both ends. Its x-derivative is G1,
and max_x int G0 ds = 5/384. A frequently reproduced variant with
``x**2 - x + s**2`` in place of ``x**2 - 2*x + s**2`` is not a Green function
of this problem.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from navier_ide.expr import EvaluationError
from navier_ide.quadrature import GridSpec, trap_weights

M0 = 5.0 / 384.0
M1 = 1.0 / 24.0


def _check_unit(name, value):
    a = np.asarray(value, dtype=float)
    if np.any(~((a >= 0.0) & (a <= 1.0))):
        raise ValueError(f"{name} must lie in [0, 1]")
    return a


def green0(x, s):
    """Green function G0(x, s). Accepts scalars or broadcastable arrays."""
    x = _check_unit("x", x)
    s = _check_unit("s", s)
    lower = s * (x - 1.0) * (x * x - 2.0 * x + s * s)  # s <= x
    upper = x * (s - 1.0) * (s * s - 2.0 * s + x * x)  # x < s
    out = np.where(s <= x, lower, upper) / 6.0
    return float(out) if out.ndim == 0 else out


def green1(x, s):
    """x-derivative G1(x, s) of the Green function; continuous on s = x."""
    x = _check_unit("x", x)
    s = _check_unit("s", s)
    lower = s * (3.0 * x * x - 6.0 * x + s * s + 2.0)
    upper = (s - 1.0) * (3.0 * x * x - 2.0 * s + s * s)
    out = np.where(s <= x, lower, upper) / 6.0
    return float(out) if out.ndim == 0 else out


def constants():
    """The exact bounds (M0, M1) = (max_x int|G0| ds, max_x int|G1| ds)."""
    return M0, M1


def evaluate_kernel(kernel, x, t, what="kernel"):
    """Evaluate ``kernel(x, t)`` on broadcast arrays and insist on finite values."""
    with np.errstate(all="ignore"):
        vals = np.asarray(kernel(x, t), dtype=float)
    vals = np.broadcast_to(vals, np.broadcast_shapes(np.shape(x), np.shape(t))).astype(float)
    bad = ~np.isfinite(vals)
    if np.any(bad):
        idx = np.unravel_index(int(np.flatnonzero(bad)[0]), vals.shape)
        xb = np.broadcast_to(x, vals.shape)[idx]
        tb = np.broadcast_to(t, vals.shape)[idx]
        raise EvaluationError(f"non-finite {what} value {vals[idx]!r} at (x, t) = ({xb!r}, {tb!r})")
    return vals


def weighted_matrix(kernel, grid: GridSpec, what="kernel") -> np.ndarray:
    """Matrix with entries h * rho_j * kernel(x_i, x_j)."""
    x = grid.nodes
    vals = evaluate_kernel(kernel, x[:, None], x[None, :], what)
    return vals * grid.weights[None, :]


def abs_row_integral_max(kernel, n: int) -> float:
    """max_i of the trapezium value of int_0^1 |kernel(x_i, s)| ds on an n-grid."""
    grid = GridSpec(n)
    return float(np.max(np.abs(weighted_matrix(kernel, grid)).sum(axis=1)))


def kernel_bound_m2(k, n: int = 1000) -> float:
    """Numerical M2 = max_x int_0^1 |k(x, s)| ds, maximised over grid nodes."""
    return abs_row_integral_max(k, n)


@dataclass(frozen=True)
class GreenTables:
    """Quadrature-weighted matrices for one (problem, grid) pair.

    ``a0 @ phi`` approximates int G0(x_i, s) phi(s) ds, ``a1 @ phi`` the G1
    analogue, and ``kmat @ u`` approximates int k(x_i, t) u(t) dt.
    """

    n: int
    a0: np.ndarray
    a1: np.ndarray
    kmat: np.ndarray

    @property
    def grid(self):
        return GridSpec(self.n)


def build_tables(problem, grid: GridSpec) -> GreenTables:
    if grid.n < 2:
        raise ValueError("grid size must be >= 2")
    a0 = weighted_matrix(green0, grid, "G0")
    a1 = weighted_matrix(green1, grid, "G1")
    kmat = weighted_matrix(problem.kernel, grid, "kernel")
    for m in (a0, a1, kmat):
        m.setflags(write=False)
    return GreenTables(n=grid.n, a0=a0, a1=a1, kmat=kmat)


__all__ = [
    "M0",
    "M1",
    "GreenTables",
    "abs_row_integral_max",
    "build_tables",
    "constants",
    "green0",
    "green1",
    "kernel_bound_m2",
    "trap_weights",
]
