#include "fracl1/ode.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

namespace fracl1 {

bool step_condition_ok(const TemporalMesh& mesh, double alpha, double lambda0) {
    if (lambda0 <= 0.0) return true;
    const double limit = 1.0 / std::tgamma(2.0 - alpha);
    for (std::size_t j = 1; j <= mesh.steps(); ++j) {
        if (!(lambda0 * std::pow(mesh.step(j), alpha) < limit)) return false;
    }
    return true;
}

double solve_step_scalar(double kappa_mm, double lambda0, const SchemeDescriptor& scheme, double w,
                         double rhs) {
    if (!(kappa_mm > lambda0)) {
        throw SolverError("step condition violated: kappa_mm=" + std::to_string(kappa_mm) +
                          " <= lambda0=" + std::to_string(lambda0));
    }
    if (scheme.linear_in_v()) {
        const double f0 = eval_F(scheme, 0.0, w);
        const double slope = kappa_mm + eval_dF_dv(scheme, 0.0, w);
        return (rhs - f0) / slope;
    }

    const auto G = [&](double u) { return kappa_mm * u + eval_F(scheme, u, w) - rhs; };
    const double tol = 1e-12 * (1.0 + std::abs(rhs));

    double lo = w;
    double hi = w;
    double g_start = G(w);
    if (std::abs(g_start) <= tol) return w;

    // geometric bracket expansion away from w
    double step = std::max(1.0, std::abs(w)) * 1e-3;
    const double dir = g_start < 0.0 ? 1.0 : -1.0;
    double prev = w;
    bool bracketed = false;
    for (int k = 0; k < 200; ++k) {
        const double cand = w + dir * step;
        if (!std::isfinite(cand)) break;
        const double gc = G(cand);
        if ((dir > 0.0 && gc >= 0.0) || (dir < 0.0 && gc <= 0.0)) {
            lo = std::min(prev, cand);
            hi = std::max(prev, cand);
            bracketed = true;
            break;
        }
        prev = cand;
        step *= 2.0;
    }
    if (!bracketed) throw SolverError("scalar step: bracket expansion failed after 200 doublings");

    // bisection down to a modest width
    while (hi - lo > 1e-8 * (1.0 + std::abs(lo + hi) * 0.5)) {
        const double mid = 0.5 * (lo + hi);
        if (G(mid) < 0.0) lo = mid; else hi = mid;
    }

    double u = 0.5 * (lo + hi);
    const bool has_derivative = scheme.kind == SchemeKind::Implicit ? static_cast<bool>(scheme.nl.df)
                                                                    : static_cast<bool>(scheme.nl.implicit_part_df);
    for (int it = 0; it < 200; ++it) {
        const double gu = G(u);
        if (std::abs(gu) <= tol) return u;
        if (gu < 0.0) lo = u; else hi = u;
        double next = 0.5 * (lo + hi);
        if (has_derivative) {
            const double slope = kappa_mm + eval_dF_dv(scheme, u, w);
            const double newton = u - gu / slope;
            if (slope > 0.0 && newton > lo && newton < hi) next = newton;
        }
        if (next == u || next <= lo || next >= hi) {
            // bracket exhausted at floating-point resolution
            return std::abs(G(lo)) < std::abs(G(hi)) ? lo : hi;
        }
        u = next;
    }
    return u;
}

Trajectory solve_ode(const ScalarProblem& problem, const TemporalMesh& mesh) {
    const double lambda0 = problem.scheme.lambda0;
    if (!step_condition_ok(mesh, problem.alpha, lambda0)) {
        throw SolverError("solve_ode: lambda0 tau_j^alpha < 1/Gamma(2-alpha) fails on this mesh");
    }
    const std::size_t M = mesh.steps();
    std::vector<double> u(M + 1);
    u[0] = problem.u0;
    for (std::size_t m = 1; m <= M; ++m) {
        const L1Row row = l1_row(mesh, problem.alpha, m);
        const double g = problem.g ? problem.g(mesh[m]) : 0.0;
        const double rhs = row.history_sum(std::span<const double>(u).first(m)) + g;
        u[m] = solve_step_scalar(row.kappa_mm, lambda0, problem.scheme, u[m - 1], rhs);
    }
    return Trajectory{mesh, std::move(u)};
}

double theoretical_bound(double alpha, double sigma, double r, std::size_t M, double t_m,
                         BoundVariant variant, double T) {
    const double nu = 1.0 + sigma - alpha;
    const double r_crit = (2.0 - alpha) / nu;
    const double Md = static_cast<double>(M);
    double e = 0.0;
    if (std::abs(r - r_crit) <= 1e-12 * r_crit) {
        const double t1 = T * std::pow(Md, -r);
        e = std::pow(Md, -(2.0 - alpha)) * std::pow(t_m, alpha - 1.0) * (1.0 + std::log(t_m / t1));
    } else if (r < r_crit) {
        e = std::pow(Md, -nu * r) * std::pow(t_m, alpha - 1.0);
    } else {
        e = std::pow(Md, -(2.0 - alpha)) * std::pow(t_m, sigma - (2.0 - alpha) / r);
    }
    if (variant == BoundVariant::ETilde) {
        e += std::pow(t_m, std::min(sigma, 1.0) + alpha - 1.0 / r) / Md;
    }
    return e;
}

double global_rate(double alpha, double sigma, double r) { return std::min(sigma * r, 2.0 - alpha); }

std::vector<double> solve_linear_recursion(const TemporalMesh& mesh, double alpha, double lambda0,
                                           double lambda1, const std::vector<double>& rhs, double u0) {
    return solve_linear_recursion(L1Cache(mesh, alpha), lambda0, lambda1, rhs, u0);
}

std::vector<double> solve_linear_recursion(const L1Cache& rows, double lambda0, double lambda1,
                                           const std::vector<double>& rhs, double u0) {
    const std::size_t M = rows.steps();
    if (rhs.size() != M + 1) throw std::invalid_argument("solve_linear_recursion: rhs needs M+1 entries");
    std::vector<double> u(M + 1);
    u[0] = u0;
    for (std::size_t m = 1; m <= M; ++m) {
        const L1Row& row = rows.row(m);
        if (!(row.kappa_mm > lambda0)) throw SolverError("solve_linear_recursion: kappa_mm <= lambda0");
        const double s = row.history_sum(std::span<const double>(u).first(m)) + lambda1 * u[m - 1] + rhs[m];
        u[m] = s / (row.kappa_mm - lambda0);
    }
    return u;
}

double stability_barrier(const TemporalMesh& mesh, double alpha, double gamma, std::size_t j) {
    const double tau = mesh.first_step();
    const double t = mesh[j];
    const double ell = gamma == 0.0 ? 1.0 + std::log(t / tau) : 1.0;
    return ell * tau * std::pow(t, alpha - 1.0) * std::pow(tau / t, std::min(0.0, gamma));
}

}  // namespace fracl1
