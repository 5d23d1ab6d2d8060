"""Problem instances: the right-hand side f(x, u, v, z), the Fredholm kernel
k(x, t) and, when known, the exact solution.

All callables must accept numpy arrays and broadcast; the built-in examples
use numpy ufuncs and expression-backed problems evaluate element-wise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from navier_ide.expr import compile_function
from navier_ide.kernels import M0, M1


@dataclass(frozen=True)
class Problem:
    name: str
    f: Callable
    kernel: Callable
    exact_u: Optional[Callable] = None
    exact_v: Optional[Callable] = None
    description: str = ""

    def __post_init__(self):
        if self.exact_u is not None:
            ends = np.asarray(self.exact_u(np.array([0.0, 1.0])), dtype=float)
            ends = np.broadcast_to(ends, (2,))
            if not np.all(np.abs(ends) <= 1e-12):
                raise ValueError(
                    f"exact solution of {self.name!r} violates u(0) = u(1) = 0: "
                    f"u(0) = {ends[0]!r}, u(1) = {ends[1]!r}"
                )

    @property
    def has_exact(self):
        return self.exact_u is not None

    def rhs(self, x, u, v, z):
        """f evaluated and broadcast to the common shape of the arguments."""
        with np.errstate(all="ignore"):
            out = np.asarray(self.f(x, u, v, z), dtype=float)
        shape = np.broadcast_shapes(*(np.shape(a) for a in (x, u, v, z)))
        return np.broadcast_to(out, shape).astype(float)


@dataclass(frozen=True)
class DomainBox:
    """The box D_M (or D_M^+ when ``positive``) for x in [0, 1].

    |u| <= M0*M, |v| <= M1*M, |z| <= M0*M2*M; with ``positive`` the u-range
    is [0, M0*M] instead.
    """

    m: float
    m2: float
    positive: bool = False

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError(f"M must be positive, got {self.m!r}")
        if not self.m2 >= 0:
            raise ValueError(f"M2 must be nonnegative, got {self.m2!r}")

    @property
    def u_bound(self):
        return M0 * self.m

    @property
    def v_bound(self):
        return M1 * self.m

    @property
    def z_bound(self):
        return M0 * self.m2 * self.m

    def ranges(self):
        """(low, high) for each of x, u, v, z."""
        u_lo = 0.0 if self.positive else -self.u_bound
        return (
            (0.0, 1.0),
            (u_lo, self.u_bound),
            (-self.v_bound, self.v_bound),
            (-self.z_bound, self.z_bound),
        )

    def mesh(self, density: int):
        """Tensor-product sample with ``density`` points per axis, endpoints included.

        Returns four arrays shaped to broadcast against each other.
        """
        if density < 2:
            raise ValueError("density must be at least 2 points per axis")
        axes = [np.linspace(lo, hi, density) for lo, hi in self.ranges()]
        return tuple(a.reshape([-1 if i == j else 1 for j in range(4)]) for i, a in enumerate(axes))


def example1() -> Problem:
    """u'''' = u^2 z + u u' + g(x) with k = e^x sin(pi t); exact u = sin(pi x)."""
    pi = np.pi

    def f(x, u, v, z):
        return (
            u * u * z
            + u * v
            - 0.5 * np.exp(x) * np.sin(pi * x) ** 2
            + pi**4 * np.sin(pi * x)
            - 0.5 * pi * np.sin(2 * pi * x)
        )

    return Problem(
        name="example1",
        f=f,
        kernel=lambda x, t: np.exp(x) * np.sin(pi * t),
        exact_u=lambda x: np.sin(pi * x),
        exact_v=lambda x: pi * np.cos(pi * x),
        description="u^2 z + u v - e^x sin^2(pi x)/2 + pi^4 sin(pi x) - (pi/2) sin(2 pi x), k = e^x sin(pi t)",
    )


def example2() -> Problem:
    """u'''' = sin(pi x) [(2 - u^2) int t u dt + 1]; no closed-form solution."""
    pi = np.pi
    return Problem(
        name="example2",
        f=lambda x, u, v, z: (2.0 - u * u) * z + np.sin(pi * x),
        kernel=lambda x, t: np.sin(pi * x) * t,
        description="(2 - u^2) z + sin(pi x), k = sin(pi x) t",
    )


EXAMPLES = {"example1": example1, "example2": example2}


def get_example(name: str) -> Problem:
    try:
        return EXAMPLES[name]()
    except KeyError:
        raise ValueError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}") from None


def from_expressions(f_text, k_text, exact_text=None, exact_deriv_text=None, name="custom") -> Problem:
    """Build a problem from expression strings.

    ``f_text`` may use x, u, v, z; ``k_text`` x, t; the exact solution and its
    derivative only x.
    """
    f = compile_function(f_text, ("x", "u", "v", "z"))
    k = compile_function(k_text, ("x", "t"))
    exact_u = compile_function(exact_text, ("x",)) if exact_text else None
    exact_v = compile_function(exact_deriv_text, ("x",)) if exact_deriv_text else None
    desc = f"f = {f_text}, k = {k_text}"
    return Problem(name=name, f=f, kernel=k, exact_u=exact_u, exact_v=exact_v, description=desc)
