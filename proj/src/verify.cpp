#include "fracl1/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "fracl1/fdspace.hpp"
#include "fracl1/l1.hpp"
#include "fracl1/mesh.hpp"
#include "fracl1/ode.hpp"
#include "fracl1/schemes.hpp"

namespace fracl1 {

namespace {

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

// Random mesh: graded with random r, or sorted uniform samples on (0, T).
TemporalMesh random_mesh(std::mt19937_64& rng, std::size_t max_steps) {
    std::uniform_int_distribution<std::size_t> steps(1, max_steps);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t M = steps(rng);
    const double T = 0.5 + 2.0 * unit(rng);
    if (unit(rng) < 0.6) return TemporalMesh::graded(M, 1.0 + 5.0 * unit(rng), T);
    std::vector<double> pts(M + 1);
    pts[0] = 0.0;
    for (std::size_t j = 1; j <= M; ++j) pts[j] = pts[j - 1] + 0.05 + unit(rng);
    const double scale = T / pts[M];
    for (double& p : pts) p *= scale;
    pts[M] = T;
    return TemporalMesh::from_points(std::move(pts));
}

double variation(const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi / *lo - 1.0;
}

}  // namespace

bool SuiteResult::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

double SuiteResult::worst_margin() const {
    double w = 0.0;
    for (const auto& c : checks) w = std::max(w, c.threshold > 0.0 ? c.value / c.threshold : c.value);
    return w;
}

SuiteResult verify_l1_identities(std::uint64_t seed, std::size_t trials) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_row_sum = 0.0;
    double worst_linear = 0.0;
    double min_kappa = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < trials; ++k) {
        const TemporalMesh mesh = random_mesh(rng, 256);
        const double alpha = 0.02 + 0.96 * unit(rng);
        std::uniform_int_distribution<std::size_t> pick(1, mesh.steps());
        const std::size_t m = pick(rng);
        const L1Row row = l1_row(mesh, alpha, m);

        double sum = 0.0;
        for (double kj : row.kappa) {
            sum += kj;
            min_kappa = std::min(min_kappa, kj);
        }
        if (m == 1) min_kappa = std::min(min_kappa, row.kappa_mm);
        worst_row_sum = std::max(worst_row_sum, std::abs(row.kappa_mm - sum) / row.kappa_mm);

        std::vector<double> v(m + 1);
        const double slope = 0.5 + unit(rng);
        for (std::size_t j = 0; j <= m; ++j) v[j] = slope * mesh[j];
        const double exact = slope * caputo_power(alpha, 1.0, mesh[m]);
        worst_linear = std::max(worst_linear, std::abs(apply_l1(row, v) - exact) / std::abs(exact));
    }
    SuiteResult s{"l1-identities", {}};
    s.checks.push_back({"row-sum identity (relative)", worst_row_sum <= 1e-12, worst_row_sum, 1e-12,
                        fmt("%.0f random (mesh, alpha, m) triples", static_cast<double>(trials))});
    s.checks.push_back({"exactness on linear data (relative)", worst_linear <= 1e-12, worst_linear, 1e-12, ""});
    s.checks.push_back({"history coefficients positive", min_kappa > 0.0, min_kappa > 0.0 ? 0.0 : 1.0, 0.0,
                        fmt("min kappa = %.3e", min_kappa)});
    return s;
}

SuiteResult verify_comparison(std::uint64_t seed, std::size_t trials) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < trials; ++k) {
        const TemporalMesh mesh = random_mesh(rng, 200);
        const double alpha = 0.02 + 0.96 * unit(rng);
        double max_tau_alpha = 0.0;
        for (std::size_t j = 1; j <= mesh.steps(); ++j) {
            max_tau_alpha = std::max(max_tau_alpha, std::pow(mesh.step(j), alpha));
        }
        // lambda0 tau_j^alpha < 1/Gamma(2-alpha) with a margin
        const double lambda0 = 0.99 * unit(rng) / (std::tgamma(2.0 - alpha) * max_tau_alpha);
        const double lambda1 = 2.0 * unit(rng);
        std::vector<double> rhs(mesh.steps() + 1, 0.0);
        for (std::size_t j = 1; j < rhs.size(); ++j) rhs[j] = unit(rng) < 0.2 ? 0.0 : -unit(rng);
        const double u0 = unit(rng) < 0.2 ? 0.0 : -unit(rng);
        const auto v = solve_linear_recursion(mesh, alpha, lambda0, lambda1, rhs, u0);
        worst = std::max(worst, *std::max_element(v.begin(), v.end()));
    }
    SuiteResult s{"comparison", {}};
    s.checks.push_back({"max V^m over non-positive data", worst <= 1e-12, worst, 1e-12,
                        fmt("%.0f randomized trials", static_cast<double>(trials))});
    return s;
}

SuiteResult verify_stability(double alpha, const std::vector<std::size_t>& Ms) {
    const std::vector<double> gammas = {-1.0, -0.2, 0.0, 0.3, alpha};
    const std::vector<double> lambdas = {0.0, 0.5};
    const std::vector<double> gradings = {1.0, 2.0, 5.0};

    SuiteResult s{"stability", {}};
    for (double r : gradings) {
        // sup ratio per (gamma, lambda0, lambda1) and M
        std::vector<std::vector<double>> sup(gammas.size() * 4);
        for (std::size_t M : Ms) {
            const TemporalMesh mesh = TemporalMesh::graded(M, r);
            const L1Cache rows(mesh, alpha);
            const double tau = mesh.first_step();
            for (std::size_t g = 0; g < gammas.size(); ++g) {
                std::vector<double> rhs(M + 1, 0.0), barrier(M + 1, 0.0);
                for (std::size_t j = 1; j <= M; ++j) {
                    rhs[j] = std::pow(tau / mesh[j], gammas[g] + 1.0);
                    barrier[j] = stability_barrier(mesh, alpha, gammas[g], j);
                }
                for (std::size_t l = 0; l < 4; ++l) {
                    const auto u = solve_linear_recursion(rows, lambdas[l / 2], lambdas[l % 2], rhs);
                    double best = 0.0;
                    for (std::size_t j = 1; j <= M; ++j) best = std::max(best, u[j] / barrier[j]);
                    sup[g * 4 + l].push_back(best);
                }
            }
        }
        for (std::size_t g = 0; g < gammas.size(); ++g) {
            for (std::size_t l = 0; l < 4; ++l) {
                const auto& v = sup[g * 4 + l];
                const double var = variation(v);
                const bool finite = std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
                std::ostringstream name;
                name << "r=" << r << " gamma=" << gammas[g] << " lambda0=" << lambdas[l / 2]
                     << " lambda1=" << lambdas[l % 2];
                s.checks.push_back({name.str(), finite && var < 0.5, var, 0.5,
                                    fmt("sup ratio %.4g .. %.4g", *std::min_element(v.begin(), v.end()),
                                        *std::max_element(v.begin(), v.end()))});
            }
        }
    }
    return s;
}

SuiteResult verify_truncation(const std::vector<std::size_t>& Ms) {
    const std::vector<double> alphas = {0.3, 0.5, 0.7};
    const std::vector<double> sigmas = {0.4, 0.8, 1.5};
    const std::vector<double> gradings = {1.0, 2.0, 4.0};
    SuiteResult s{"truncation", {}};
    double worst_linear = 0.0;
    for (double alpha : alphas) {
        for (double r : gradings) {
            std::vector<std::vector<double>> sup(sigmas.size());
            for (std::size_t M : Ms) {
                const TemporalMesh mesh = TemporalMesh::graded(M, r);
                const L1Cache rows(mesh, alpha);
                for (std::size_t k = 0; k < sigmas.size(); ++k) {
                    double best = 0.0;
                    for (const auto& p : truncation_profile(mesh, rows, sigmas[k])) best = std::max(best, p.ratio);
                    sup[k].push_back(best);
                }
                for (const auto& p : truncation_profile(mesh, rows, 1.0)) {
                    worst_linear = std::max(worst_linear, std::abs(p.residual));
                }
            }
            for (std::size_t k = 0; k < sigmas.size(); ++k) {
                const double var = variation(sup[k]);
                std::ostringstream name;
                name << "alpha=" << alpha << " sigma=" << sigmas[k] << " r=" << r;
                s.checks.push_back({name.str(), var < 0.5, var, 0.5,
                                    fmt("sup ratio %.4g .. %.4g", *std::min_element(sup[k].begin(), sup[k].end()),
                                        *std::max_element(sup[k].begin(), sup[k].end()))});
            }
        }
    }
    s.checks.push_back({"sigma=1 truncation vanishes", worst_linear <= 1e-12, worst_linear, 1e-12, ""});
    return s;
}

SuiteResult verify_fd_structure(std::uint64_t seed, std::size_t trials) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t admitted = 0;
    std::size_t violations = 0;
    for (std::size_t k = 0; k < trials; ++k) {
        PdeProblem p;
        const double a0 = 0.1 + unit(rng);
        const double a1 = a0 * 0.9 * unit(rng);
        const double b0 = 40.0 * (unit(rng) - 0.5);
        const double c0 = unit(rng) < 0.3 ? 0.0 : 5.0 * unit(rng);
        const double w = 1.0 + 6.0 * unit(rng);
        p.a = [=](double x, double t) { return a0 + a1 * std::sin(w * x + t); };
        p.b = [=](double x, double t) { return b0 * std::cos(w * x - t); };
        p.c = [=](double x, double) { return c0 * x * x; };
        std::uniform_int_distribution<std::size_t> nodes(1, 200);
        const SpatialGrid grid(0.0, 1.0, nodes(rng));
        if (!check_h_condition(grid, p)) continue;
        ++admitted;
        for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const Tridiagonal L = build_Lh(grid, p, t);
            const std::size_t n = L.size();
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) {
                const double lo = i > 0 ? L.lower[i] : 0.0;
                const double up = i + 1 < n ? L.upper[i] : 0.0;
                // weak dominance everywhere, strict in the rows touching the boundary
                const bool boundary_row = i == 0 || i + 1 == n;
                const double slack = 1e-12 * L.diag[i];
                ok = lo <= 0.0 && up <= 0.0 && L.diag[i] > 0.0 &&
                     (boundary_row ? L.diag[i] > -lo - up : L.diag[i] >= -lo - up - slack);
            }
            // the matrix actually factorised at each step carries kappa_mm > 0 on the diagonal
            ok = ok && L.is_m_matrix(1e-6 * L.diag[0]);
            if (!ok) ++violations;
        }
    }
    SuiteResult s{"fd-structure", {}};
    s.checks.push_back({"M-matrix whenever the h condition holds", violations == 0 && admitted > 0,
                        static_cast<double>(violations), 0.0,
                        fmt("%.0f admitted operators", static_cast<double>(admitted))});
    return s;
}

SuiteResult verify_scheme_conditions(std::size_t samples) {
    const Interval range{-1.5, 1.5};
    const double slack = 1e-6;
    SuiteResult s{"scheme-conditions", {}};
    for (SchemeKind kind : {SchemeKind::Implicit, SchemeKind::ConvexSplitting, SchemeKind::IMEX1,
                            SchemeKind::IMEX2Newton, SchemeKind::StabilizedIMEX}) {
        const SchemeDescriptor d = make_scheme(kind, Nonlinearity::allen_cahn(), range);
        const double L_emp = check_A1(d, range, samples);
        const A2Sample a2 = check_A2(d, range, samples);
        const std::string k(to_string(kind));
        s.checks.push_back({k + " A1 L", L_emp <= d.L + slack, L_emp, d.L + slack, fmt("q = %.0f", d.q)});
        s.checks.push_back({k + " A2 lambda0", -a2.min_slope_v <= d.lambda0 + slack, -a2.min_slope_v,
                            d.lambda0 + slack, ""});
        s.checks.push_back({k + " A2 lambda1", a2.max_lipschitz_w <= d.lambda1 + slack, a2.max_lipschitz_w,
                            d.lambda1 + slack, ""});
    }
    return s;
}

std::vector<SuiteResult> run_verification(std::uint64_t seed) {
    return {verify_l1_identities(seed), verify_comparison(seed + 1), verify_stability(), verify_truncation(),
            verify_fd_structure(seed + 2), verify_scheme_conditions()};
}

}  // namespace fracl1
