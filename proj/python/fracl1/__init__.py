"""Caputo L1 solvers on graded meshes (bindings to the C++ core)."""

from ._core import (
    L1Row,
    SolverError,
    TemporalMesh,
    apply_l1,
    caputo_power,
    format_double,
    gamma_backend,
    global_rate,
    is_nested_refinement,
    l1_row,
    problem_catalog,
    quasi_graded_constant,
    run_convergence,
    solve_linear_recursion,
    solve_ode,
    solve_test_a,
    step_condition_ok,
    theoretical_bound,
    truncation_gamma,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "L1Row",
    "SolverError",
    "TemporalMesh",
    "apply_l1",
    "caputo_power",
    "format_double",
    "gamma_backend",
    "global_rate",
    "is_nested_refinement",
    "l1_row",
    "problem_catalog",
    "quasi_graded_constant",
    "run_convergence",
    "solve_linear_recursion",
    "solve_ode",
    "solve_test_a",
    "step_condition_ok",
    "theoretical_bound",
    "truncation_gamma",
    "verify",
]
