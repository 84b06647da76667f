#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracl1/fdspace.hpp"
#include "fracl1/l1.hpp"
#include "fracl1/mesh.hpp"
#include "fracl1/schemes.hpp"

namespace fracl1 {

using SpaceTimeStateFn = std::function<double(double x, double t, double u)>;

/**
 * d^alpha u - (a(u) u_x + b(x,t,u))_x + f(x,t,u) = 0 on (x_lo, x_hi), u = 0 on the boundary.
 *
 * The bounds c_a <= a <= c_a_max, |a'| <= C_a, |b_u| <= C_b, |u_x| <= C_u and the
 * one-sided Lipschitz constant lambda0 of f are declared by the caller on
 * `range`; they gate the step condition only.
 */
struct QuasilinearProblem {
    double alpha = 0.5;
    ScalarFn a;
    ScalarFn A;      // antiderivative of a with A(0) = 0; integrated numerically if empty
    ScalarFn A_inv;  // analytic inverse; monotone bisection on `range` if empty
    SpaceTimeStateFn b;  // optional
    SpaceTimeStateFn f;
    SpaceTimeStateFn df;  // partial derivative of f in u
    std::function<double(double)> u0 = [](double) { return 0.0; };
    double T = 1.0;

    Interval range{-1.0, 1.0};
    double c_a = 1.0;
    double c_a_max = 1.0;
    double C_a = 0.0;
    double C_b = 0.0;
    double C_u = 0.0;
    double lambda0 = 0.0;

    /// lambda0 + (C_a C_u + C_b)^2 / (4 c_a)   (d = 1)
    double step_lambda() const;
};

/// A(w) = int_0^w a(s) ds.
double kirchhoff(const QuasilinearProblem& problem, double w);
/// A^{-1}(W). Throws std::invalid_argument if W is not attained on the declared range
/// (numeric inversion only).
double kirchhoff_inverse(const QuasilinearProblem& problem, double W);

struct QuasilinearStepStats {
    std::size_t outer_iterations = 0;
    std::vector<double> distances;  // ||w_{k} - w_{k-1}||_inf per outer iteration
    std::size_t newton_iterations = 0;
};

/**
 * One fully implicit step at t_m via the Kirchhoff fixed point v -> w:
 *
 *   -D_h^2 A(w) + kappa_mm w + f(., t_m, w) = D_h b(., t_m, v) + sum_{j<m} kappa_{m,j} U^j.
 *
 * The inner equation is solved by Newton in W = A(w). The outer iteration
 * stops when ||w - v||_inf <= 1e-10 or after 100 iterations; with b absent a
 * single inner solve is exact. Throws SolverError on contraction failure
 * (distance non-decreasing for 5 consecutive iterations) or Newton failure.
 */
std::vector<double> quasilinear_step(const SpatialGrid& grid, const QuasilinearProblem& problem,
                                     const L1Row& row, std::span<const double> history, double t_m,
                                     QuasilinearStepStats* stats = nullptr);

/// Max-norm residual of  delta^alpha U^m + Q_h U^m + f(., t_m, U^m)  for candidate U^m.
double quasilinear_residual(const SpatialGrid& grid, const QuasilinearProblem& problem, const L1Row& row,
                            std::span<const double> history, std::span<const double> u, double t_m);

struct QuasilinearSolution {
    SpaceTimeTrajectory trajectory;
    std::vector<QuasilinearStepStats> steps;
};

/// Full time loop. Throws SolverError if lambda tau_j^alpha < 1/Gamma(2-alpha) fails.
QuasilinearSolution solve_quasilinear(const QuasilinearProblem& problem, const TemporalMesh& mesh,
                                      const SpatialGrid& grid);

}  // namespace fracl1
