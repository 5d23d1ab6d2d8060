"""Composite trapezium rule on the uniform grid x_i = i/N of [0, 1]."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def trap_weights(n: int) -> np.ndarray:
    """Trapezium weights rho_j: 1/2 at both ends, 1 in the interior."""
    if int(n) != n or n < 2:
        raise ValueError(f"grid size must be an integer >= 2, got {n!r}")
    rho = np.ones(int(n) + 1)
    rho[0] = rho[-1] = 0.5
    return rho


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid with ``n`` subintervals on [0, 1].

    Nodes are built as ``i / n`` (not ``i * h``) so the last node is exactly 1.
    """

    n: int
    h: float = field(init=False)
    nodes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 2:
            raise ValueError(f"grid size must be an integer >= 2, got {self.n!r}")
        n = int(self.n)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "h", 1.0 / n)
        nodes = np.arange(n + 1) / n
        nodes.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)

    @property
    def weights(self) -> np.ndarray:
        """Quadrature weights h * rho_j."""
        return self.h * trap_weights(self.n)

    def __len__(self):
        return self.n + 1


def integrate(samples, grid: GridSpec) -> float:
    """Trapezium approximation of the integral over [0, 1] of sampled values.

    Parameters
    ----------
    samples : array_like
        Values at the ``grid.n + 1`` nodes.
    grid : GridSpec

    Returns
    -------
    float
        ``h * sum(rho_j * samples_j)``, accumulated left to right.
    """
    y = np.asarray(samples, dtype=float)
    if y.shape != (grid.n + 1,):
        raise ValueError(f"expected {grid.n + 1} samples, got shape {y.shape}")
    if not np.all(np.isfinite(y)):
        bad = int(np.flatnonzero(~np.isfinite(y))[0])
        raise ValueError(f"non-finite sample at node {bad}: {y[bad]!r}")
    rho = trap_weights(grid.n)
    total = 0.0
    for r, v in zip(rho, y):
        total += r * v
    return grid.h * total
