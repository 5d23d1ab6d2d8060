"""Green's-function fixed-point solver for the fourth-order integro-differential
Navier problem

    u''''(x) = f(x, u, u', int_0^1 k(x, t) u(t) dt),   u(0) = u(1) = u''(0) = u''(1) = 0.
"""

from navier_ide.certificate import (
    Certificate,
    ContractionInputs,
    apriori_bound,
    contraction_check,
    lipschitz_estimate,
    positivity_check,
    sup_f_check,
)
from navier_ide.expr import EvaluationError, ExprSyntaxError, evaluate, parse, to_string
from navier_ide.kernels import (
    GreenTables,
    build_tables,
    constants,
    green0,
    green1,
    kernel_bound_m2,
)
from navier_ide.problem import EXAMPLES, DomainBox, Problem, example1, example2, from_expressions, get_example
from navier_ide.quadrature import GridSpec, integrate, trap_weights
from navier_ide.solver import (
    ExactError,
    IterationState,
    NonConvergenceError,
    Solution,
    Successive,
    initial_state,
    max_norm_diff,
    solve,
    sweep,
)
from navier_ide.study import StudyRow, convergence_table, observed_order

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ContractionInputs",
    "DomainBox",
    "EXAMPLES",
    "EvaluationError",
    "ExactError",
    "ExprSyntaxError",
    "GreenTables",
    "GridSpec",
    "IterationState",
    "NonConvergenceError",
    "Problem",
    "Solution",
    "StudyRow",
    "Successive",
    "apriori_bound",
    "build_tables",
    "constants",
    "contraction_check",
    "convergence_table",
    "evaluate",
    "example1",
    "example2",
    "from_expressions",
    "get_example",
    "green0",
    "green1",
    "initial_state",
    "integrate",
    "kernel_bound_m2",
    "lipschitz_estimate",
    "max_norm_diff",
    "observed_order",
    "parse",
    "positivity_check",
    "solve",
    "sup_f_check",
    "sweep",
    "to_string",
    "trap_weights",
]
