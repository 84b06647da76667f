#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "fracl1/error.hpp"
#include "fracl1/l1.hpp"
#include "fracl1/mesh.hpp"
#include "fracl1/schemes.hpp"

namespace fracl1 {

/// Caputo problem  d^alpha u + f(u) = g(t),  u(0) = u0,  discretised with `scheme`.
struct ScalarProblem {
    double alpha = 0.5;
    SchemeDescriptor scheme;
    std::function<double(double)> g;
    double u0 = 0.0;
    double T = 1.0;
    std::function<double(double)> exact;  // optional
};

struct Trajectory {
    TemporalMesh mesh;
    std::vector<double> values;  // U^0..U^M
};

/// True iff lambda0 * tau_j^alpha < 1/Gamma(2-alpha) for every step.
bool step_condition_ok(const TemporalMesh& mesh, double alpha, double lambda0);

/**
 * Solves  kappa_mm U + F(U, w) = rhs  for U.
 *
 * G(U) = kappa_mm U + F(U,w) is continuous and strictly increasing whenever
 * kappa_mm > lambda0 and F(.,w) + lambda0 (.) is non-decreasing, so the root is
 * unique. Throws SolverError if kappa_mm <= lambda0 or no bracket is found in
 * 200 expansions.
 */
double solve_step_scalar(double kappa_mm, double lambda0, const SchemeDescriptor& scheme, double w,
                         double rhs);

/// Time-steps the L1 scheme over `mesh`. Throws SolverError if the step condition fails.
Trajectory solve_ode(const ScalarProblem& problem, const TemporalMesh& mesh);

enum class BoundVariant { E, ETilde };

/**
 * Pointwise error bound at t_m for graded meshes, nu = 1 + sigma - alpha:
 *
 *   M^{-nu r} t^{alpha-1}                    r < (2-alpha)/nu
 *   M^{-(2-alpha)} t^{alpha-1} (1+ln(t/t_1)) r = (2-alpha)/nu
 *   M^{-(2-alpha)} t^{sigma-(2-alpha)/r}     r > (2-alpha)/nu
 *
 * ETilde adds M^{-1} t^{min(sigma,1)+alpha-1/r} (schemes with q = 1).
 */
double theoretical_bound(double alpha, double sigma, double r, std::size_t M, double t_m,
                         BoundVariant variant = BoundVariant::E, double T = 1.0);

/// Global-in-time rate exponent min{sigma r, 2 - alpha}.
double global_rate(double alpha, double sigma, double r);

/**
 * Solves the linear recursion (delta^alpha - lambda0) U^j - lambda1 U^{j-1} = rhs_j,
 * U^0 = u0, which underlies the stability and comparison properties.
 */
std::vector<double> solve_linear_recursion(const TemporalMesh& mesh, double alpha, double lambda0,
                                           double lambda1, const std::vector<double>& rhs, double u0 = 0.0);
std::vector<double> solve_linear_recursion(const L1Cache& rows, double lambda0, double lambda1,
                                           const std::vector<double>& rhs, double u0 = 0.0);

/// U_gamma^j = l_gamma tau t_j^{alpha-1} (tau/t_j)^{min(0,gamma)}; l_gamma = 1 + ln(t_j/tau) iff gamma == 0.
double stability_barrier(const TemporalMesh& mesh, double alpha, double gamma, std::size_t j);

}  // namespace fracl1
