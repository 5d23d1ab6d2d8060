"""Discrete successive-substitution scheme.

Starting from Phi_0(x_i) = f(x_i, 0, 0, 0), each sweep computes

    U = A0 @ Phi,   V = A1 @ Phi,   Z = K @ U,   Phi+ = f(x, U, V, Z)

with the trapezium-weighted matrices of :mod:`navier_ide.kernels`.
``iterations`` counts sweeps, so after m sweeps the reported U is the
one built from Phi_{m-1} and the residual is ||Phi_m - Phi_{m-1}||.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import List, Optional, Union

import numpy as np

from navier_ide.expr import EvaluationError
from navier_ide.kernels import GreenTables, build_tables
from navier_ide.quadrature import GridSpec


class NonConvergenceError(RuntimeError):
    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


@dataclass(frozen=True)
class Successive:
    """Stop once ||Phi_m - Phi_{m-1}||_inf <= eps."""

    eps: float = 1e-10
    max_iter: int = 1000

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError(f"eps must be positive, got {self.eps!r}")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclass(frozen=True)
class ExactError:
    """Stop once ||U_m - u||_inf <= h^2 (needs an exact solution)."""

    max_iter: int = 1000

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


StoppingRule = Union[Successive, ExactError]


@dataclass(frozen=True)
class IterationState:
    m: int
    phi: np.ndarray
    u: np.ndarray
    v: np.ndarray
    z: np.ndarray
    residual: Optional[float] = None


@dataclass
class Solution:
    grid: GridSpec
    u: np.ndarray
    v: np.ndarray
    iterations: int
    residual_history: List[float] = field(default_factory=list)
    error_u: Optional[float] = None
    error_v: Optional[float] = None

    @property
    def x(self):
        return self.grid.nodes

    @property
    def residual(self):
        return self.residual_history[-1] if self.residual_history else None

    def to_csv(self, path):
        """Write columns x, u, v with shortest round-trip decimals."""
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "u", "v"])
            for xi, ui, vi in zip(self.x, self.u, self.v):
                w.writerow([repr(float(xi)), repr(float(ui)), repr(float(vi))])


def max_norm_diff(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def _check_finite(name, arr, m):
    bad = ~np.isfinite(arr)
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise EvaluationError(f"non-finite {name} = {arr[i]!r} at node {i} in iteration {m}")


def initial_state(problem, grid: GridSpec) -> IterationState:
    x = grid.nodes
    zero = np.zeros_like(x)
    phi = problem.rhs(x, zero, zero, zero)
    _check_finite("Phi", phi, 0)
    return IterationState(m=0, phi=phi, u=zero.copy(), v=zero.copy(), z=zero.copy())


def sweep(state: IterationState, tables: GreenTables, problem) -> IterationState:
    x = np.arange(tables.n + 1) / tables.n
    u = tables.a0 @ state.phi
    v = tables.a1 @ state.phi
    z = tables.kmat @ u
    m = state.m + 1
    for name, arr in (("U", u), ("V", v), ("Z", z)):
        _check_finite(name, arr, m)
    phi = problem.rhs(x, u, v, z)
    _check_finite("Phi", phi, m)
    return IterationState(m=m, phi=phi, u=u, v=v, z=z, residual=max_norm_diff(phi, state.phi))


def solve(problem, grid: GridSpec, rule: StoppingRule = Successive(), tables: Optional[GreenTables] = None) -> Solution:
    """Iterate sweeps until ``rule`` fires.

    Raises
    ------
    NonConvergenceError
        ``rule.max_iter`` sweeps without meeting the stopping test.
    """
    if isinstance(rule, ExactError) and not problem.has_exact:
        raise ValueError(f"problem {problem.name!r} has no exact solution; use Successive")
    if tables is None:
        tables = build_tables(problem, grid)
    elif tables.n != grid.n:
        raise ValueError(f"tables built for N = {tables.n}, grid has N = {grid.n}")

    exact = None
    if problem.has_exact:
        exact = np.broadcast_to(np.asarray(problem.exact_u(grid.nodes), dtype=float), (grid.n + 1,))
        _check_finite("exact u", exact, 0)
    h2 = grid.h**2

    state = initial_state(problem, grid)
    history = []
    while True:
        state = sweep(state, tables, problem)
        history.append(state.residual)
        if isinstance(rule, Successive):
            done = state.residual <= rule.eps
        else:
            done = max_norm_diff(state.u, exact) <= h2
        if done:
            break
        if state.m >= rule.max_iter:
            raise NonConvergenceError(
                f"no convergence after {state.m} iterations (N = {grid.n}); "
                f"final residual {state.residual:.4e}",
                residual=state.residual,
                iterations=state.m,
            )

    err_u = err_v = None
    if exact is not None:
        err_u = max_norm_diff(state.u, exact)
    if problem.exact_v is not None:
        ev = np.broadcast_to(np.asarray(problem.exact_v(grid.nodes), dtype=float), (grid.n + 1,))
        _check_finite("exact u'", ev, state.m)
        err_v = max_norm_diff(state.v, ev)
    return Solution(
        grid=grid,
        u=state.u,
        v=state.v,
        iterations=state.m,
        residual_history=history,
        error_u=err_u,
        error_v=err_v,
    )
