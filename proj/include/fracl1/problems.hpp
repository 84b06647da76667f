#pragma once

#include <cstddef>

#include "fracl1/fdspace.hpp"
#include "fracl1/ode.hpp"
#include "fracl1/quasilinear.hpp"
#include "fracl1/schemes.hpp"

namespace fracl1::problems {

/// d^alpha u = Gamma(sigma+1)/Gamma(sigma-alpha+1) t^{sigma-alpha}, u(0) = 0, exact u = t^sigma.
ScalarProblem test_a(double alpha, double sigma, SchemeKind kind = SchemeKind::Implicit);

/**
 * d^alpha u - u_xx + u^3 - u = g on (0, pi), exact u = t^sigma sin(x^2/pi).
 * The source is manufactured as g = d^alpha u - u_xx + u^3 - u.
 */
PdeProblem test_b(double alpha, double sigma, SchemeKind kind);
SpatialGrid test_b_grid(std::size_t interior);

/// Manufactured source for test_b at (x, t); exposed for residual checks.
double test_b_source(double alpha, double sigma, double x, double t);

/**
 * Subdiffusive Fisher-Kolmogorov problem on (0,1):
 * d^alpha u - ((1+u) u_x)_x + u(1-u) = 0, u0 = x(1-x).
 */
QuasilinearProblem fisher_kolmogorov(double alpha);
SpatialGrid fisher_kolmogorov_grid(std::size_t interior);

/**
 * Linear problem with smooth-in-space, linear-in-time solution u = t sin(pi x) on (0,1),
 * a = 1+x, b = 1, c = 1, f = 0. The L1 scheme is exact in time for it, so the
 * discrete error is purely spatial.
 */
PdeProblem smooth_linear(double alpha);
SpatialGrid smooth_linear_grid(std::size_t interior);

}  // namespace fracl1::problems
