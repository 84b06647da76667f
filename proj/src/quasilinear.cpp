#include "fracl1/quasilinear.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "fracl1/error.hpp"
#include "fracl1/ode.hpp"
#include "fracl1/tridiag.hpp"

namespace fracl1 {

namespace {

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

constexpr std::array<double, 5> kGLNodes = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                            0.9061798459386640};
constexpr std::array<double, 5> kGLWeights = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                              0.4786286704993665, 0.2369268850561891};

double integrate_a(const ScalarFn& a, double w) {
    const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(w) * 16.0)));
    const double h = w / pieces;
    double acc = 0.0;
    for (int p = 0; p < pieces; ++p) {
        const double mid = (p + 0.5) * h;
        for (std::size_t k = 0; k < kGLNodes.size(); ++k) acc += kGLWeights[k] * a(mid + 0.5 * h * kGLNodes[k]);
    }
    return acc * 0.5 * h;
}

// D_h b(., t, v) at interior nodes, with v = 0 on the boundary
void flux_divergence(const SpatialGrid& grid, const QuasilinearProblem& p, std::span<const double> v, double t,
                     std::span<double> out) {
    const std::size_t n = grid.interior();
    const double ih = 0.5 / grid.h();
    for (std::size_t k = 0; k < n; ++k) {
        const double left = k > 0 ? p.b(grid.x(k - 1), t, v[k - 1]) : p.b(grid.node(0), t, 0.0);
        const double right = k + 1 < n ? p.b(grid.x(k + 1), t, v[k + 1]) : p.b(grid.node(n + 1), t, 0.0);
        out[k] = (right - left) * ih;
    }
}

}  // namespace

double QuasilinearProblem::step_lambda() const {
    const double g = C_a * C_u + C_b;
    return lambda0 + g * g / (4.0 * c_a);
}

double kirchhoff(const QuasilinearProblem& p, double w) {
    if (p.A) return p.A(w);
    if (!p.a) throw std::invalid_argument("kirchhoff: problem has neither A nor a");
    return integrate_a(p.a, w);
}

double kirchhoff_inverse(const QuasilinearProblem& p, double W) {
    if (p.A_inv) return p.A_inv(W);
    double lo = p.range.lo;
    double hi = p.range.hi;
    if (kirchhoff(p, lo) > W || kirchhoff(p, hi) < W) {
        throw std::invalid_argument("kirchhoff_inverse: W outside the range of A on the declared interval");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (kirchhoff(p, mid) < W) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double quasilinear_residual(const SpatialGrid& grid, const QuasilinearProblem& p, const L1Row& row,
                            std::span<const double> history, std::span<const double> u, double t_m) {
    const std::size_t n = grid.interior();
    const double ih2 = 1.0 / (grid.h() * grid.h());
    std::vector<double> hist(n), div(n, 0.0), Au(n);
    history_combination(row, history, n, hist);
    if (p.b) flux_divergence(grid, p, u, t_m, div);
    for (std::size_t k = 0; k < n; ++k) Au[k] = kirchhoff(p, u[k]);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double left = k > 0 ? Au[k - 1] : 0.0;
        const double right = k + 1 < n ? Au[k + 1] : 0.0;
        const double q = -(left - 2.0 * Au[k] + right) * ih2 - div[k];
        const double r = row.kappa_mm * u[k] - hist[k] + q + p.f(grid.x(k), t_m, u[k]);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

namespace {

// Newton in W = A(w) for  -D^2 W + kappa w + f(x,t,w) = rhs,  w = A^{-1}(W).
std::vector<double> solve_kirchhoff_system(const SpatialGrid& grid, const QuasilinearProblem& p, double kappa,
                                           double t, std::span<const double> rhs, std::span<const double> start,
                                           std::size_t* newton_iterations) {
    const std::size_t n = grid.interior();
    const double ih2 = 1.0 / (grid.h() * grid.h());
    const double tol = 1e-11 * (1.0 + max_abs(rhs));

    std::vector<double> W(n), w(n), res(n), trial(n), trial_w(n), trial_res(n);
    for (std::size_t k = 0; k < n; ++k) {
        W[k] = kirchhoff(p, start[k]);
        w[k] = start[k];
    }

    auto residual = [&](std::span<const double> Wv, std::span<const double> wv, std::span<double> out) {
        for (std::size_t k = 0; k < n; ++k) {
            const double left = k > 0 ? Wv[k - 1] : 0.0;
            const double right = k + 1 < n ? Wv[k + 1] : 0.0;
            out[k] = (2.0 * Wv[k] - left - right) * ih2 + kappa * wv[k] + p.f(grid.x(k), t, wv[k]) - rhs[k];
        }
        return max_abs(out);
    };

    double rnorm = residual(W, w, res);
    Tridiagonal J(n);
    bool polished = false;
    for (std::size_t it = 0; it < 50; ++it) {
        if (newton_iterations) *newton_iterations += 1;
        // one extra step past the tolerance is nearly free with quadratic convergence
        if (rnorm <= tol && polished) return w;
        if (rnorm <= tol) polished = true;
        for (std::size_t k = 0; k < n; ++k) {
            J.lower[k] = k > 0 ? -ih2 : 0.0;
            J.upper[k] = k + 1 < n ? -ih2 : 0.0;
            J.diag[k] = 2.0 * ih2 + (kappa + p.df(grid.x(k), t, w[k])) / p.a(w[k]);
        }
        const std::vector<double> delta = solve_tridiagonal(J, res);
        double damping = 1.0;
        double trial_norm = rnorm;
        for (int halvings = 0; halvings <= 20; ++halvings) {
            for (std::size_t k = 0; k < n; ++k) {
                trial[k] = W[k] - damping * delta[k];
                trial_w[k] = kirchhoff_inverse(p, trial[k]);
            }
            trial_norm = residual(trial, trial_w, trial_res);
            if (trial_norm < rnorm || halvings == 20) break;
            damping *= 0.5;
        }
        const double step_size = damping * max_abs(delta);
        if (polished && trial_norm >= rnorm) return w;
        W.swap(trial);
        w.swap(trial_w);
        res.swap(trial_res);
        const double previous = rnorm;
        rnorm = trial_norm;
        if (step_size <= 1e-14 * (1.0 + max_abs(W)) && rnorm >= 0.5 * previous) return w;
    }
    if (rnorm <= tol) return w;
    throw SolverError("quasilinear_step: inner Newton did not converge in 50 iterations");
}

}  // namespace

std::vector<double> quasilinear_step(const SpatialGrid& grid, const QuasilinearProblem& p, const L1Row& row,
                                     std::span<const double> history, double t_m, QuasilinearStepStats* stats) {
    const std::size_t n = grid.interior();
    if (history.size() != row.m * n) throw std::invalid_argument("quasilinear_step: history size mismatch");
    if (!(row.kappa_mm > p.lambda0)) throw SolverError("quasilinear_step: kappa_mm <= lambda0");

    std::vector<double> hist(n);
    history_combination(row, history, n, hist);
    std::vector<double> v(history.end() - static_cast<std::ptrdiff_t>(n), history.end());

    QuasilinearStepStats local;
    QuasilinearStepStats& st = stats ? *stats : local;

    if (!p.b) {
        st.outer_iterations = 1;
        return solve_kirchhoff_system(grid, p, row.kappa_mm, t_m, hist, v, &st.newton_iterations);
    }

    std::vector<double> rhs(n), div(n);
    std::size_t non_decreasing = 0;
    double last = INFINITY;
    for (std::size_t it = 1; it <= 100; ++it) {
        flux_divergence(grid, p, v, t_m, div);
        for (std::size_t k = 0; k < n; ++k) rhs[k] = hist[k] + div[k];
        std::vector<double> w = solve_kirchhoff_system(grid, p, row.kappa_mm, t_m, rhs, v, &st.newton_iterations);
        double dist = 0.0;
        for (std::size_t k = 0; k < n; ++k) dist = std::max(dist, std::abs(w[k] - v[k]));
        st.distances.push_back(dist);
        st.outer_iterations = it;
        v.swap(w);
        if (dist <= 1e-10) return v;
        non_decreasing = dist >= last ? non_decreasing + 1 : 0;
        if (non_decreasing >= 5) throw SolverError("quasilinear_step: fixed-point map is not contracting");
        last = dist;
    }
    return v;
}

QuasilinearSolution solve_quasilinear(const QuasilinearProblem& p, const TemporalMesh& mesh,
                                      const SpatialGrid& grid) {
    if (!p.f || !p.df || !p.a) throw std::invalid_argument("solve_quasilinear: a, f and f_u are required");
    if (!step_condition_ok(mesh, p.alpha, p.step_lambda())) {
        throw SolverError("solve_quasilinear: lambda tau_j^alpha < 1/Gamma(2-alpha) fails on this mesh");
    }
    const std::size_t n = grid.interior();
    QuasilinearSolution sol{SpaceTimeTrajectory(mesh, grid), {}};
    auto& traj = sol.trajectory;
    {
        auto u0 = traj.at(0);
        for (std::size_t k = 0; k < n; ++k) u0[k] = p.u0(grid.x(k));
    }
    sol.steps.resize(mesh.steps());
    for (std::size_t m = 1; m <= mesh.steps(); ++m) {
        const L1Row row = l1_row(mesh, p.alpha, m);
        const std::vector<double> u = quasilinear_step(grid, p, row, traj.history(m), mesh[m], &sol.steps[m - 1]);
        std::copy(u.begin(), u.end(), traj.at(m).begin());
    }
    return sol;
}

}  // namespace fracl1
