#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracl1/l1.hpp"
#include "fracl1/mesh.hpp"
#include "fracl1/schemes.hpp"
#include "fracl1/tridiag.hpp"

namespace fracl1 {

/// Uniform 1-D grid x_i = x_lo + i h, i = 0..N+1, with N interior unknowns.
class SpatialGrid {
public:
    SpatialGrid(double x_lo, double x_hi, std::size_t interior);

    std::size_t interior() const { return n_; }
    double h() const { return h_; }
    double x_lo() const { return lo_; }
    double x_hi() const { return hi_; }
    /// Node x_i, i = 0..N+1 (0 and N+1 are the Dirichlet boundary).
    double node(std::size_t i) const { return lo_ + static_cast<double>(i) * h_; }
    /// Interior unknown k = 0..N-1 sits at node k+1.
    double x(std::size_t k) const { return node(k + 1); }

private:
    double lo_;
    double hi_;
    std::size_t n_;
    double h_;
};

using SpaceTimeFn = std::function<double(double x, double t)>;

/**
 * Semilinear problem  d^alpha u + L u + f(u) = g(x,t)  with homogeneous Dirichlet data,
 * L u = -(a u_x)_x + b u_x + c u, a > 0, c >= 0.
 */
struct PdeProblem {
    double alpha = 0.5;
    SpaceTimeFn a = [](double, double) { return 1.0; };
    SpaceTimeFn b = [](double, double) { return 0.0; };
    SpaceTimeFn c = [](double, double) { return 0.0; };
    SchemeDescriptor scheme;
    SpaceTimeFn g;  // optional source
    std::function<double(double)> u0 = [](double) { return 0.0; };
    double T = 1.0;
    SpaceTimeFn exact;  // optional
};

/// L_h at time t: midpoint a, centred b, nodal c.
Tridiagonal build_Lh(const SpatialGrid& grid, const PdeProblem& problem, double t);

/// h^{-1} >= 1/2 ||b||_inf ||1/a||_inf, sampled on nodes/midpoints at `times`
/// (defaults to five equispaced times on [0, T]).
bool check_h_condition(const SpatialGrid& grid, const PdeProblem& problem,
                       std::span<const double> times = {});

/// Row-major (M+1) x N array of interior values U^m_k.
class SpaceTimeTrajectory {
public:
    SpaceTimeTrajectory(TemporalMesh mesh, SpatialGrid grid)
        : mesh_(std::move(mesh)), grid_(grid), values_((mesh_.steps() + 1) * grid_.interior(), 0.0) {}

    const TemporalMesh& mesh() const { return mesh_; }
    const SpatialGrid& grid() const { return grid_; }
    std::size_t steps() const { return mesh_.steps(); }
    std::size_t nodes() const { return grid_.interior(); }

    std::span<double> at(std::size_t m) { return {values_.data() + m * nodes(), nodes()}; }
    std::span<const double> at(std::size_t m) const { return {values_.data() + m * nodes(), nodes()}; }
    /// U^0..U^{m-1} as a contiguous block.
    std::span<const double> history(std::size_t m) const { return {values_.data(), m * nodes()}; }

private:
    TemporalMesh mesh_;
    SpatialGrid grid_;
    std::vector<double> values_;
};

struct NewtonTrace {
    std::vector<double> residuals;  // max-norm residual before each iteration
    std::size_t iterations = 0;
};

/// out = sum_{j<m} kappa_{m,j} U^j for a flat history block of m*N values.
void history_combination(const L1Row& row, std::span<const double> history, std::size_t n,
                         std::span<double> out);

/**
 * One step of  (kappa_mm I + L_h) U + F(U, U^{m-1}) = sum_j kappa_{m,j} U^j + g_m.
 *
 * IMEX kinds reduce to a single tridiagonal solve. Implicit kinds use damped
 * Newton (step halved up to 20 times) from U^{m-1}, stopping when the residual
 * max-norm is <= 1e-11 (1 + ||rhs||) or the update stagnates at rounding level;
 * SolverError after 50 iterations.
 */
std::vector<double> semilinear_step(const Tridiagonal& Lh, const L1Row& row, const SchemeDescriptor& scheme,
                                    std::span<const double> history, std::span<const double> g_m,
                                    NewtonTrace* trace = nullptr);

struct StepError {
    double t;
    double max_norm;
    double l2;  // sqrt(h sum e^2)
};

struct PdeSolution {
    SpaceTimeTrajectory trajectory;
    std::vector<StepError> errors;  // m = 1..M, filled when the problem has an exact solution
};

/// Full time loop. Throws SolverError if the step condition or the h condition fails.
PdeSolution solve_pde(const PdeProblem& problem, const TemporalMesh& mesh, const SpatialGrid& grid);

/// Nodal max and discrete L2 error of `values` against `exact` at time t.
StepError nodal_error(const SpatialGrid& grid, std::span<const double> values, const SpaceTimeFn& exact, double t);

}  // namespace fracl1
