"""Sufficient conditions for existence, uniqueness and positivity of the
solution, and the a-priori error envelope of the iteration.

With M0 = 5/384, M1 = 1/24 and M2 = max_x int |k(x, s)| ds, the iteration map
is a contraction on the ball ||phi|| <= M when

    (i)   |f| <= M on the box D_M,
    (ii)  f is Lipschitz in (u, v, z) on D_M with constants L0, L1, L2,
    (iii) q = L0*M0 + L1*M1 + L2*M0*M2 < 1.

The same q formula is used for the positivity statement. (Some printed
versions of that statement drop the M0 in the last term; both worked examples
only check out with it.)

Everything here is sampled, not proven: sup and Lipschitz values are lower
estimates over finite point sets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from navier_ide.expr import EvaluationError
from navier_ide.kernels import M0, M1, kernel_bound_m2
from navier_ide.problem import DomainBox


@dataclass(frozen=True)
class ContractionInputs:
    m: float
    l0: float
    l1: float
    l2: float
    m2: float

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError(f"M must be positive, got {self.m!r}")
        for name in ("l0", "l1", "l2", "m2"):
            if not getattr(self, name) >= 0:
                raise ValueError(f"{name.upper()} must be nonnegative, got {getattr(self, name)!r}")


@dataclass(frozen=True)
class Certificate:
    q: float
    m: float
    l0: float
    l1: float
    l2: float
    m0: float
    m1: float
    m2: float
    u_bound: float
    v_bound: float
    z_bound: float
    contraction_ok: bool
    sup_ok: Optional[bool] = None
    positivity_ok: Optional[bool] = None

    def to_dict(self):
        return {
            "q": self.q,
            "M": self.m,
            "L0": self.l0,
            "L1": self.l1,
            "L2": self.l2,
            "M0": self.m0,
            "M1": self.m1,
            "M2": self.m2,
            "u_bound": self.u_bound,
            "v_bound": self.v_bound,
            "z_bound": self.z_bound,
            "contraction_ok": self.contraction_ok,
            "sup_ok": self.sup_ok,
            "positivity_ok": self.positivity_ok,
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    def render(self):
        def flag(v):
            return "not checked" if v is None else ("yes" if v else "NO")

        lines = [
            f"M        = {self.m:.4e}",
            f"L0 L1 L2 = {self.l0:.4e} {self.l1:.4e} {self.l2:.4e}",
            f"M0 M1 M2 = {self.m0:.4e} {self.m1:.4e} {self.m2:.4e}",
            f"q        = {self.q:.4e}",
            f"|u|  <= {self.u_bound:.4e}",
            f"|u'| <= {self.v_bound:.4e}",
            f"|Ku| <= {self.z_bound:.4e}",
            f"contraction (q < 1): {flag(self.contraction_ok)}",
            f"sup |f| <= M on D_M (sampled): {flag(self.sup_ok)}",
            f"positivity conditions (sampled): {flag(self.positivity_ok)}",
        ]
        return "\n".join(lines)


def contraction_factor(l0, l1, l2, m2):
    return l0 * M0 + l1 * M1 + l2 * M0 * m2


def contraction_check(inputs: ContractionInputs, sup_ok=None, positivity_ok=None) -> Certificate:
    q = contraction_factor(inputs.l0, inputs.l1, inputs.l2, inputs.m2)
    return Certificate(
        q=q,
        m=inputs.m,
        l0=inputs.l0,
        l1=inputs.l1,
        l2=inputs.l2,
        m0=M0,
        m1=M1,
        m2=inputs.m2,
        u_bound=M0 * inputs.m,
        v_bound=M1 * inputs.m,
        z_bound=M0 * inputs.m2 * inputs.m,
        contraction_ok=bool(q < 1.0),
        sup_ok=sup_ok,
        positivity_ok=positivity_ok,
    )


def _resolve_m2(problem, m2):
    return kernel_bound_m2(problem.kernel, 1000) if m2 is None else float(m2)


def _sample_f(problem, box, density):
    pts = box.mesh(density)
    vals = problem.rhs(*pts)
    bad = ~np.isfinite(vals)
    if np.any(bad):
        idx = np.unravel_index(int(np.flatnonzero(bad)[0]), vals.shape)
        point = tuple(float(np.broadcast_to(p, vals.shape)[idx]) for p in pts)
        raise EvaluationError(f"f is not finite at (x, u, v, z) = {point}")
    return vals


def sup_f_check(problem, m, density=20, m2=None):
    """Sampled max of |f| over D_M.

    Returns
    -------
    (float, bool)
        The sampled supremum and whether it is <= ``m``.
    """
    box = DomainBox(m, _resolve_m2(problem, m2))
    sup = float(np.max(np.abs(_sample_f(problem, box, density))))
    return sup, sup <= m


def positivity_check(problem, m, density=20, m2=None) -> bool:
    """Sampled check of the positivity hypotheses on D_M^+:
    0 <= f <= M there, and f(x, 0, 0, 0) not identically zero."""
    box = DomainBox(m, _resolve_m2(problem, m2), positive=True)
    vals = _sample_f(problem, box, density)
    if np.min(vals) < 0 or np.max(vals) > m:
        return False
    x = np.linspace(0.0, 1.0, max(density, 2))
    base = problem.rhs(x, 0.0, 0.0, 0.0)
    if not np.all(np.isfinite(base)):
        raise EvaluationError("f(x, 0, 0, 0) is not finite")
    return bool(np.max(np.abs(base)) > 0)


def lipschitz_estimate(problem, m, samples=100_000, m2=None, seed=0):
    """Lower estimates of L0, L1, L2 over D_M from one-coordinate secants.

    For each of u, v, z, ``samples`` random base points in the box are paired
    with a second random value of that coordinate only; the largest
    |f(p') - f(p)| / |p'_j - p_j| is returned.
    """
    if samples < 100:
        raise ValueError("at least 100 samples are needed")
    box = DomainBox(m, _resolve_m2(problem, m2))
    rng = np.random.default_rng(seed)
    ranges = box.ranges()
    base = [rng.uniform(lo, hi, samples) for lo, hi in ranges]
    f0 = problem.rhs(*base)
    if not np.all(np.isfinite(f0)):
        raise EvaluationError("f is not finite at a sampled point of D_M")
    out = []
    for j in (1, 2, 3):
        lo, hi = ranges[j]
        if hi <= lo:
            out.append(0.0)
            continue
        moved = list(base)
        moved[j] = rng.uniform(lo, hi, samples)
        f1 = problem.rhs(*moved)
        if not np.all(np.isfinite(f1)):
            raise EvaluationError("f is not finite at a sampled point of D_M")
        step = np.abs(moved[j] - base[j])
        keep = step > 0
        out.append(float(np.max(np.abs(f1 - f0)[keep] / step[keep])) if np.any(keep) else 0.0)
    return tuple(out)


def apriori_bound(q, d, m):
    """Error envelope after ``m`` iterations.

    With p_m = q**m / (1 - q) returns (M0 * p_m * d, M1 * p_m * d), the bounds
    for ||u_m - u|| and ||u_m' - u'||.
    """
    if not 0 <= q < 1:
        raise ValueError(f"q must lie in [0, 1), got {q!r}")
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d!r}")
    p = q**m / (1.0 - q)
    return M0 * p * d, M1 * p * d
