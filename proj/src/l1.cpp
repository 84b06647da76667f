#include "fracl1/l1.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace fracl1 {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
}

// Mean over [t_{j-1}, t_j] of (t_m - s)^{-alpha}, times Gamma(1-alpha)^{-1} is applied by the caller.
// x = t_m - t_{j-1}, d = tau_j, y = t_m - t_j.
double interval_mean(double x, double d, double y, double beta, bool last) {
    if (last) return std::pow(d, beta - 1.0) / beta;
    const double q = d / x;
    if (q < 0.5) {
        // x^beta - (x-d)^beta without cancellation for small d/x
        return -std::pow(x, beta) * std::expm1(beta * std::log1p(-q)) / (beta * d);
    }
    return (std::pow(x, beta) - std::pow(y, beta)) / (beta * d);
}

// 3-point Gauss-Legendre on [0,1]
constexpr std::array<double, 3> kGaussNodes = {0.1127016653792583, 0.5, 0.8872983346207417};
constexpr std::array<double, 3> kGaussWeights = {0.2777777777777778, 0.4444444444444444, 0.2777777777777778};

// Integral of alpha (t_m - s)^{-alpha-1} against the hat function centred at t_j.
// Only used when the hat support is tiny compared to its distance from t_m.
double hat_integral(double tm, double left, double mid, double right, double alpha) {
    double acc = 0.0;
    const double dl = mid - left;
    const double dr = right - mid;
    for (std::size_t k = 0; k < kGaussNodes.size(); ++k) {
        const double xi = kGaussNodes[k];
        const double sl = left + dl * xi;
        const double sr = mid + dr * xi;
        acc += kGaussWeights[k] * (dl * xi * std::pow(tm - sl, -alpha - 1.0) +
                                   dr * (1.0 - xi) * std::pow(tm - sr, -alpha - 1.0));
    }
    return alpha * acc;
}

}  // namespace

std::string_view gamma_backend() { return "std::tgamma"; }

double L1Row::history_sum(std::span<const double> history) const {
    double s = 0.0;
    for (std::size_t j = 0; j < kappa.size(); ++j) s += kappa[j] * history[j];
    return s;
}

L1Row l1_row(const TemporalMesh& mesh, double alpha, std::size_t m) {
    check_alpha(alpha);
    if (m < 1 || m > mesh.steps()) throw std::invalid_argument("l1_row: step index out of range");

    const double beta = 1.0 - alpha;
    const double inv_gamma1 = 1.0 / std::tgamma(beta);  // 1/Gamma(1-alpha)
    const double tm = mesh[m];

    L1Row row;
    row.m = m;
    row.alpha = alpha;
    row.kappa.resize(m);

    // means[j-1] = mean of the kernel over interval j, j = 1..m
    std::vector<double> means(m);
    for (std::size_t j = 1; j <= m; ++j) {
        const double x = tm - mesh[j - 1];
        const double y = tm - mesh[j];
        means[j - 1] = interval_mean(x, mesh.step(j), y, beta, j == m) * inv_gamma1;
    }

    row.kappa_mm = std::pow(mesh.step(m), -alpha) / std::tgamma(2.0 - alpha);
    row.kappa[0] = means[0];
    for (std::size_t j = 1; j < m; ++j) {
        const double width = mesh[j + 1] - mesh[j - 1];
        const double gap = tm - mesh[j + 1];
        if (width < 1e-6 * gap) {
            // difference of two nearly equal means; integrate directly to keep kappa > 0
            row.kappa[j] = hat_integral(tm, mesh[j - 1], mesh[j], mesh[j + 1], alpha) * inv_gamma1;
        } else {
            row.kappa[j] = means[j] - means[j - 1];
        }
    }
    return row;
}

double apply_l1(const L1Row& row, std::span<const double> history) {
    if (history.size() != row.m + 1) throw std::invalid_argument("apply_l1: history length must be m+1");
    return row.kappa_mm * history[row.m] - row.history_sum(history);
}

double apply_l1_direct(const TemporalMesh& mesh, double alpha, std::size_t m,
                       std::span<const double> history) {
    check_alpha(alpha);
    if (history.size() != m + 1) throw std::invalid_argument("apply_l1_direct: history length must be m+1");
    const double beta = 1.0 - alpha;
    const double tm = mesh[m];
    double s = 0.0;
    for (std::size_t j = 1; j <= m; ++j) {
        const double upper = std::pow(tm - mesh[j - 1], beta);
        const double lower = j == m ? 0.0 : std::pow(tm - mesh[j], beta);
        s += (history[j] - history[j - 1]) / mesh.step(j) * (upper - lower) / beta;
    }
    return s / std::tgamma(beta);
}

L1Cache::L1Cache(const TemporalMesh& mesh, double alpha) : alpha_(alpha) {
    rows_.reserve(mesh.steps());
    for (std::size_t m = 1; m <= mesh.steps(); ++m) rows_.push_back(l1_row(mesh, alpha, m));
}

double caputo_power(double alpha, double sigma, double t) {
    check_alpha(alpha);
    if (!(sigma > 0.0)) throw std::invalid_argument("caputo_power: sigma must be positive");
    if (t < 0.0) throw std::invalid_argument("caputo_power: t must be non-negative");
    const double c = std::tgamma(sigma + 1.0) / std::tgamma(sigma - alpha + 1.0);
    if (t == 0.0) return sigma > alpha ? 0.0 : (sigma == alpha ? c : INFINITY);
    return c * std::pow(t, sigma - alpha);
}

double truncation_gamma(double alpha, double sigma, double r) {
    return std::min(alpha, (2.0 - alpha) / r + alpha - sigma - 1.0);
}

std::vector<TruncationPoint> truncation_profile(const TemporalMesh& mesh, double alpha, double sigma) {
    return truncation_profile(mesh, L1Cache(mesh, alpha), sigma);
}

std::vector<TruncationPoint> truncation_profile(const TemporalMesh& mesh, const L1Cache& rows, double sigma) {
    const std::size_t M = mesh.steps();
    if (rows.steps() != M) throw std::invalid_argument("truncation_profile: cache does not match mesh");
    const double alpha = rows.alpha();
    const double gamma = truncation_gamma(alpha, sigma, mesh.grading());
    const double tau = mesh.first_step();

    std::vector<double> u(M + 1);
    for (std::size_t j = 0; j <= M; ++j) u[j] = std::pow(mesh[j], sigma);

    std::vector<TruncationPoint> out;
    out.reserve(M);
    for (std::size_t m = 1; m <= M; ++m) {
        const L1Row& row = rows.row(m);
        const double discrete = apply_l1(row, std::span<const double>(u).first(m + 1));
        const double residual = discrete - caputo_power(alpha, sigma, mesh[m]);
        const double bound = std::pow(tau, sigma - alpha) * std::pow(tau / mesh[m], gamma + 1.0);
        out.push_back({m, mesh[m], residual, bound, std::abs(residual) / bound});
    }
    return out;
}

}  // namespace fracl1
