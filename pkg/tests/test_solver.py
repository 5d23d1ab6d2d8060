import csv

import numpy as np
import pytest

from navier_ide.certificate import ContractionInputs, contraction_check
from navier_ide.expr import EvaluationError
from navier_ide.kernels import build_tables
from navier_ide.problem import Problem, from_expressions
from navier_ide.quadrature import GridSpec
from navier_ide.solver import (
    ExactError,
    NonConvergenceError,
    Successive,
    initial_state,
    max_norm_diff,
    solve,
    sweep,
)

Q_EX1 = contraction_check(ContractionInputs(113, 12.2010, 1.4714, 2.1649, 2 * np.e / np.pi)).q
Q_EX2 = contraction_check(ContractionInputs(1.1, 2.0515e-4, 0.0, 2.0, 0.5)).q


def test_max_norm_diff():
    assert max_norm_diff([1, 2, 3], [1, 2, 3]) == 0.0
    assert max_norm_diff([0, 1, 0], [0, 0, 0]) == 1.0
    rng = np.random.default_rng(3)
    a, b = rng.normal(size=(2, 50))
    assert max_norm_diff(a, b) == max_norm_diff(b, a)
    with pytest.raises(ValueError, match="mismatch"):
        max_norm_diff([1, 2], [1, 2, 3])


def test_initial_state_example2(ex2):
    g = GridSpec(20)
    s = initial_state(ex2, g)
    np.testing.assert_allclose(s.phi, np.sin(np.pi * g.nodes), atol=1e-15)
    assert s.m == 0 and s.residual is None
    assert not s.u.any() and not s.v.any() and not s.z.any()


def test_initial_state_example1_left_end(ex1):
    assert initial_state(ex1, GridSpec(10)).phi[0] == 0.0


def test_initial_state_constant():
    p = Problem("c", lambda *a: 2.5, lambda x, t: 0.0 * x)
    np.testing.assert_array_equal(initial_state(p, GridSpec(4)).phi, np.full(5, 2.5))


def test_sweep_from_zero_reproduces_init(ex1):
    g = GridSpec(10)
    t = build_tables(ex1, g)
    s0 = initial_state(ex1, g)
    zero = s0.__class__(m=0, phi=np.zeros(11), u=s0.u, v=s0.v, z=s0.z)
    s1 = sweep(zero, t, ex1)
    np.testing.assert_array_equal(s1.phi, s0.phi)
    assert s1.m == 1


def test_sweep_linear_problem(linear_problem):
    g = GridSpec(100)
    t = build_tables(linear_problem, g)
    s1 = sweep(initial_state(linear_problem, g), t, linear_problem)
    assert max_norm_diff(s1.u, np.sin(np.pi * g.nodes)) <= 5e-3
    s2 = sweep(s1, t, linear_problem)
    assert s2.residual == 0.0


def test_sweep_matvec_contract(ex2):
    g = GridSpec(12)
    t = build_tables(ex2, g)
    s0 = initial_state(ex2, g)
    s1 = sweep(s0, t, ex2)
    np.testing.assert_array_equal(s1.u, t.a0 @ s0.phi)
    np.testing.assert_array_equal(s1.v, t.a1 @ s0.phi)
    np.testing.assert_array_equal(s1.z, t.kmat @ s1.u)
    np.testing.assert_array_equal(s1.phi, ex2.f(g.nodes, s1.u, s1.v, s1.z))
    assert s1.residual == max_norm_diff(s1.phi, s0.phi)


def test_residuals_decrease_example1(ex1):
    sol = solve(ex1, GridSpec(100), Successive(1e-10))
    r = sol.residual_history
    assert all(b < a for a, b in zip(r[1:], r[2:]))


@pytest.mark.parametrize("which, q", [("ex1", Q_EX1), ("ex2", Q_EX2)])
def test_contraction_observable(request, which, q):
    sol = solve(request.getfixturevalue(which), GridSpec(100), Successive(1e-10))
    r = sol.residual_history
    ratios = [b / a for a, b in zip(r[1:], r[2:])]
    assert ratios and max(ratios) <= q + 0.05


def test_boundary_exact_every_sweep(ex1):
    g = GridSpec(64)
    t = build_tables(ex1, g)
    s = initial_state(ex1, g)
    for _ in range(8):
        s = sweep(s, t, ex1)
        assert s.u[0] == 0.0 and s.u[-1] == 0.0


def test_table2_row(ex1):
    sol = solve(ex1, GridSpec(100), Successive(1e-10))
    assert sol.iterations == 7
    assert sol.error_u == pytest.approx(1.3831e-09, rel=5e-4)


def test_table1_row(ex1):
    sol = solve(ex1, GridSpec(50), ExactError())
    assert sol.iterations == 2
    assert sol.error_u == pytest.approx(1.4305e-04, rel=5e-4)


def test_example2_within_certified_bounds(ex2):
    sol = solve(ex2, GridSpec(100), Successive(1e-10))
    assert sol.error_u is None and sol.error_v is None
    assert np.max(np.abs(sol.u)) <= 0.0143
    assert np.max(np.abs(sol.v)) <= 0.0458


def test_linear_consistency_order(linear_problem):
    errs = [solve(linear_problem, GridSpec(n), Successive(1e-12)).error_u for n in (25, 50, 100, 200)]
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(orders >= 1.8)


def test_deterministic(ex1):
    a = solve(ex1, GridSpec(80), Successive(1e-10))
    b = solve(ex1, GridSpec(80), Successive(1e-10))
    assert np.array_equal(a.u, b.u) and np.array_equal(a.v, b.v)
    assert a.residual_history == b.residual_history and a.error_u == b.error_u


def test_derivative_consistency(ex1):
    errs = []
    for n in (100, 200):
        sol = solve(ex1, GridSpec(n), Successive(1e-12))
        h = sol.grid.h
        fd = (sol.u[2:] - sol.u[:-2]) / (2 * h)
        e = np.max(np.abs(sol.v[1:-1] - fd))
        assert e <= 10 * h * h
        errs.append(e)
    assert errs[0] / errs[1] >= 3.5


def test_exact_rule_requires_exact(ex2):
    with pytest.raises(ValueError, match="no exact solution"):
        solve(ex2, GridSpec(10), ExactError())


def test_rule_validation():
    with pytest.raises(ValueError):
        Successive(0.0)
    with pytest.raises(ValueError):
        Successive(1e-3, max_iter=0)
    with pytest.raises(ValueError):
        ExactError(max_iter=0)


def test_nonconvergence():
    p = from_expressions("5000*u + sin(pi*x)", "0")
    with pytest.raises(NonConvergenceError, match="final residual") as info:
        solve(p, GridSpec(20), Successive(1e-10, max_iter=5))
    assert info.value.iterations == 5


def test_nonfinite_reported_with_node():
    p = from_expressions("1/x", "0")
    with pytest.raises(EvaluationError, match="node 0 in iteration 0"):
        solve(p, GridSpec(10))


def test_overflow_during_iteration():
    p = from_expressions("exp(1e5*u) + 1", "0")
    with pytest.raises(EvaluationError, match="iteration 1"):
        solve(p, GridSpec(10))


def test_tables_mismatch(ex1):
    with pytest.raises(ValueError, match="N = 10"):
        solve(ex1, GridSpec(20), tables=build_tables(ex1, GridSpec(10)))


def test_reuse_tables(ex1):
    g = GridSpec(50)
    t = build_tables(ex1, g)
    a = solve(ex1, g, ExactError(), tables=t)
    b = solve(ex1, g, ExactError())
    assert np.array_equal(a.u, b.u)


def test_csv(tmp_path, ex2):
    sol = solve(ex2, GridSpec(8))
    path = tmp_path / "sol.csv"
    sol.to_csv(path)
    rows = list(csv.reader(open(path)))
    assert rows[0] == ["x", "u", "v"]
    assert len(rows) == 10
    back = np.array([[float(c) for c in r] for r in rows[1:]])
    assert np.array_equal(back[:, 0], sol.x)
    assert np.array_equal(back[:, 1], sol.u)
    assert np.array_equal(back[:, 2], sol.v)


def test_second_order_is_sharp_when_rhs_nonzero_at_ends():
    # u'''' = 1: phi(0), phi(1) != 0 so the h^2 quadrature term survives
    p = Problem(
        "uniform load",
        lambda x, u, v, z: 1.0,
        lambda x, t: 0.0 * x,
        exact_u=lambda x: (x**4 - 2 * x**3 + x) / 24,
    )
    errs = [solve(p, GridSpec(n), Successive(1e-12)).error_u for n in (25, 50, 100, 200)]
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all((orders >= 1.8) & (orders <= 2.2))
