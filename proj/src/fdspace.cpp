#include "fracl1/fdspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracl1/error.hpp"
#include "fracl1/ode.hpp"

namespace fracl1 {

namespace {

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

SpatialGrid::SpatialGrid(double x_lo, double x_hi, std::size_t interior)
    : lo_(x_lo), hi_(x_hi), n_(interior), h_((x_hi - x_lo) / static_cast<double>(interior + 1)) {
    if (interior < 1) throw std::invalid_argument("SpatialGrid: need at least one interior node");
    if (!(x_hi > x_lo)) throw std::invalid_argument("SpatialGrid: x_hi must exceed x_lo");
}

Tridiagonal build_Lh(const SpatialGrid& grid, const PdeProblem& p, double t) {
    const std::size_t n = grid.interior();
    const double h = grid.h();
    const double ih2 = 1.0 / (h * h);
    const double ih = 0.5 / h;
    Tridiagonal L(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double x = grid.x(k);
        const double a_minus = p.a(x - 0.5 * h, t);
        const double a_plus = p.a(x + 0.5 * h, t);
        const double bx = p.b(x, t);
        L.lower[k] = k > 0 ? -a_minus * ih2 - bx * ih : 0.0;
        L.upper[k] = k + 1 < n ? -a_plus * ih2 + bx * ih : 0.0;
        L.diag[k] = (a_minus + a_plus) * ih2 + p.c(x, t);
    }
    return L;
}

bool check_h_condition(const SpatialGrid& grid, const PdeProblem& p, std::span<const double> times) {
    std::vector<double> ts(times.begin(), times.end());
    if (ts.empty()) {
        for (int k = 0; k <= 4; ++k) ts.push_back(p.T * k / 4.0);
    }
    double b_max = 0.0;
    double inv_a_max = 0.0;
    const double h = grid.h();
    for (double t : ts) {
        for (std::size_t i = 0; i <= grid.interior() + 1; ++i) {
            const double x = grid.node(i);
            b_max = std::max(b_max, std::abs(p.b(x, t)));
            inv_a_max = std::max(inv_a_max, 1.0 / p.a(x, t));
            if (i <= grid.interior()) inv_a_max = std::max(inv_a_max, 1.0 / p.a(x + 0.5 * h, t));
        }
    }
    return 1.0 / h >= 0.5 * b_max * inv_a_max;
}

void history_combination(const L1Row& row, std::span<const double> history, std::size_t n,
                         std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    double* o = out.data();
    for (std::size_t j = 0; j < row.kappa.size(); ++j) {
        const double k = row.kappa[j];
        const double* u = history.data() + j * n;
        for (std::size_t i = 0; i < n; ++i) o[i] += k * u[i];
    }
}

std::vector<double> semilinear_step(const Tridiagonal& Lh, const L1Row& row, const SchemeDescriptor& scheme,
                                    std::span<const double> history, std::span<const double> g_m,
                                    NewtonTrace* trace) {
    const std::size_t n = Lh.size();
    if (history.size() != row.m * n) throw std::invalid_argument("semilinear_step: history size mismatch");
    if (!(row.kappa_mm > scheme.lambda0)) throw SolverError("semilinear_step: kappa_mm <= lambda0");

    std::vector<double> rhs(n);
    history_combination(row, history, n, rhs);
    if (!g_m.empty()) {
        for (std::size_t i = 0; i < n; ++i) rhs[i] += g_m[i];
    }
    const std::span<const double> w = history.subspan((row.m - 1) * n, n);

    Tridiagonal J = Lh;
    if (scheme.linear_in_v()) {
        for (std::size_t i = 0; i < n; ++i) {
            J.diag[i] += row.kappa_mm + eval_dF_dv(scheme, 0.0, w[i]);
            rhs[i] -= eval_F(scheme, 0.0, w[i]);
        }
        if (trace) trace->iterations = 1;
        return solve_tridiagonal(J, rhs);
    }

    const double tol = 1e-11 * (1.0 + max_abs(rhs));
    std::vector<double> u(w.begin(), w.end());
    std::vector<double> res(n), trial(n);

    auto residual = [&](std::span<const double> v, std::span<double> out) {
        Lh.apply_into(v, out);
        for (std::size_t i = 0; i < n; ++i) out[i] += row.kappa_mm * v[i] + eval_F(scheme, v[i], w[i]) - rhs[i];
        return max_abs(out);
    };

    double rnorm = residual(u, res);
    for (std::size_t it = 0; it < 50; ++it) {
        if (trace) {
            trace->residuals.push_back(rnorm);
            trace->iterations = it;
        }
        if (rnorm <= tol) return u;
        for (std::size_t i = 0; i < n; ++i) J.diag[i] = Lh.diag[i] + row.kappa_mm + eval_dF_dv(scheme, u[i], w[i]);
        const std::vector<double> delta = solve_tridiagonal(J, res);

        double damping = 1.0;
        double trial_norm = 0.0;
        for (int halvings = 0; halvings <= 20; ++halvings) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] - damping * delta[i];
            std::vector<double> trial_res(n);
            trial_norm = residual(trial, trial_res);
            if (trial_norm < rnorm || halvings == 20) {
                res.swap(trial_res);
                break;
            }
            damping *= 0.5;
        }
        const double step_size = damping * max_abs(delta);
        u.swap(trial);
        const double previous = rnorm;
        rnorm = trial_norm;
        // converged to rounding: the update no longer changes the iterate
        if (step_size <= 1e-14 * (1.0 + max_abs(u)) && rnorm >= previous * 0.5) {
            if (trace) trace->residuals.push_back(rnorm);
            return u;
        }
    }
    if (rnorm <= tol) return u;
    throw SolverError("semilinear_step: Newton did not converge in 50 iterations");
}

StepError nodal_error(const SpatialGrid& grid, std::span<const double> values, const SpaceTimeFn& exact, double t) {
    double emax = 0.0;
    double sq = 0.0;
    for (std::size_t k = 0; k < grid.interior(); ++k) {
        const double e = std::abs(exact(grid.x(k), t) - values[k]);
        emax = std::max(emax, e);
        sq += e * e;
    }
    return {t, emax, std::sqrt(grid.h() * sq)};
}

PdeSolution solve_pde(const PdeProblem& p, const TemporalMesh& mesh, const SpatialGrid& grid) {
    if (!step_condition_ok(mesh, p.alpha, p.scheme.lambda0)) {
        throw SolverError("solve_pde: lambda0 tau_j^alpha < 1/Gamma(2-alpha) fails on this mesh");
    }
    if (!check_h_condition(grid, p)) throw SolverError("solve_pde: spatial step violates the h condition");

    const std::size_t n = grid.interior();
    PdeSolution sol{SpaceTimeTrajectory(mesh, grid), {}};
    auto& traj = sol.trajectory;
    {
        auto u0 = traj.at(0);
        for (std::size_t k = 0; k < n; ++k) u0[k] = p.u0(grid.x(k));
    }

    std::vector<double> g(p.g ? n : 0);
    for (std::size_t m = 1; m <= mesh.steps(); ++m) {
        const double t = mesh[m];
        const L1Row row = l1_row(mesh, p.alpha, m);
        const Tridiagonal Lh = build_Lh(grid, p, t);
        for (std::size_t k = 0; k < g.size(); ++k) g[k] = p.g(grid.x(k), t);
        const std::vector<double> u = semilinear_step(Lh, row, p.scheme, traj.history(m), g);
        std::copy(u.begin(), u.end(), traj.at(m).begin());
        if (p.exact) sol.errors.push_back(nodal_error(grid, traj.at(m), p.exact, t));
    }
    return sol;
}

}  // namespace fracl1
