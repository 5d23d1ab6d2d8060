"""Grid-refinement studies: one independent solve per grid size."""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from navier_ide.quadrature import GridSpec
from navier_ide.solver import ExactError, solve


class StudyError(RuntimeError):
    def __init__(self, n, cause):
        super().__init__(f"N = {n}: {cause}")
        self.n = n
        self.cause = cause


@dataclass(frozen=True)
class StudyRow:
    n: int
    h2: float
    iterations: int
    error: float
    # "error" when measured against an exact solution, otherwise "residual"
    kind: str = "error"


def _row(problem, n, rule):
    try:
        sol = solve(problem, GridSpec(n), rule)
    except Exception as exc:
        raise StudyError(n, exc) from exc
    if sol.error_u is not None:
        return StudyRow(n, sol.grid.h**2, sol.iterations, sol.error_u, "error")
    return StudyRow(n, sol.grid.h**2, sol.iterations, sol.residual, "residual")


def convergence_table(problem, ns, rule, workers=None):
    """Solve on each grid size in ``ns`` and collect one row per size.

    Rows come back in the order of ``ns``. With ``workers`` > 1 the solves run
    in a thread pool (the dense matvecs release the GIL).
    """
    ns = [int(n) for n in ns]
    if not ns:
        raise ValueError("need at least one grid size")
    for n in ns:
        if n < 2:
            raise ValueError(f"grid size must be >= 2, got {n}")
    if isinstance(rule, ExactError) and not problem.has_exact:
        raise ValueError(f"problem {problem.name!r} has no exact solution; use Successive")
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda n: _row(problem, n, rule), ns))
    return [_row(problem, n, rule) for n in ns]


def observed_order(rows):
    """log(e_i / e_{i+1}) / log(N_{i+1} / N_i) for adjacent rows.

    A pair with a zero or non-finite error, or equal N, gives ``nan``.
    """
    out = []
    for a, b in zip(rows, rows[1:]):
        ok = all(math.isfinite(e) and e > 0 for e in (a.error, b.error)) and a.n != b.n
        out.append(math.log(a.error / b.error) / math.log(b.n / a.n) if ok else math.nan)
    return out


def write_csv(rows, path):
    """Header ``N,h2,m,error`` (or ``residual``); values in 5-digit scientific notation."""
    kind = rows[0].kind if rows else "error"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["N", "h2", "m", kind])
        for r in rows:
            w.writerow([r.n, f"{r.h2:.4e}", r.iterations, f"{r.error:.4e}"])


def format_table(rows, with_order=True):
    kind = rows[0].kind if rows else "error"
    orders = observed_order(rows) if with_order and len(rows) > 1 else None
    head = f"{'N':>6} {'h2':>11} {'m':>4} {kind:>11}"
    if orders is not None:
        head += f" {'order':>11}"
    lines = [head]
    for i, r in enumerate(rows):
        line = f"{r.n:>6} {r.h2:>11.4e} {r.iterations:>4} {r.error:>11.4e}"
        if orders is not None:
            line += f" {'':>11}" if i == 0 else f" {orders[i - 1]:>11.4e}"
        lines.append(line)
    return "\n".join(lines)
