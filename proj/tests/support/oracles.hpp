#pragma once

// Reference computations used only by tests: they share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace oracle {

/**
 * Tanh-sinh quadrature of f over [lo, hi]. The integrand receives the distance
 * to both endpoints as well, so that endpoint singularities can be evaluated
 * without cancellation: f(x, x - lo, hi - x).
 */
inline double tanh_sinh(const std::function<double(double, double, double)>& f, double lo, double hi,
                        double step = 1.0 / 64.0, double t_max = 6.5) {
    const double half = 0.5 * (hi - lo);
    const double c = 0.5 * std::numbers::pi;
    double acc = 0.0;
    const long K = static_cast<long>(t_max / step);
    for (long k = -K; k <= K; ++k) {
        const double t = static_cast<double>(k) * step;
        const double u = c * std::sinh(t);
        const double cu = std::cosh(u);
        if (!std::isfinite(cu * cu)) continue;
        const double w = c * std::cosh(t) / (cu * cu);
        // 1 + tanh(u) and 1 - tanh(u) in a cancellation-free form
        const double left = 2.0 / (1.0 + std::exp(-2.0 * u));
        const double right = 2.0 / (1.0 + std::exp(2.0 * u));
        const double dl = half * left;
        const double dr = half * right;
        if (dl <= 0.0 || dr <= 0.0) continue;
        acc += w * f(lo + dl, dl, dr);
    }
    return acc * half * step;
}

/// (1/Gamma(1-alpha)) int_0^{t_m} (t_m - s)^{-alpha} (V^I)'(s) ds for the piecewise-linear interpolant.
inline double l1_by_quadrature(std::span<const double> t, double alpha, std::size_t m, std::span<const double> v) {
    double acc = 0.0;
    const double tm = t[m];
    for (std::size_t j = 1; j <= m; ++j) {
        const double slope = (v[j] - v[j - 1]) / (t[j] - t[j - 1]);
        // integrate in d = t_m - s so the singular end is d = 0
        const double d_lo = tm - t[j];
        const double d_hi = tm - t[j - 1];
        // d = y^k with k(1 - alpha) >= 1 leaves a bounded integrand; without it the mass
        // below the smallest representable node is visible for alpha near 1
        const double k = std::max(1.0, std::ceil(1.0 / (1.0 - alpha)));
        const double y_lo = std::pow(d_lo, 1.0 / k);
        const double y_hi = std::pow(d_hi, 1.0 / k);
        const double integral = tanh_sinh(
            [&](double, double from_lo, double) {
                const double y = y_lo + from_lo;
                return k * std::pow(y, k * (1.0 - alpha) - 1.0);
            },
            y_lo, y_hi);
        acc += slope * integral;
    }
    return acc / std::tgamma(1.0 - alpha);
}

/// Gaussian elimination with partial pivoting on a dense row-major matrix.
inline std::vector<double> dense_solve(std::vector<double> A, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(A[i * n + k]) > std::abs(A[p * n + k])) p = i;
        }
        if (A[p * n + k] == 0.0) throw std::runtime_error("dense_solve: singular");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A[k * n + j], A[p * n + j]);
            std::swap(b[k], b[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = A[i * n + k] / A[k * n + k];
            for (std::size_t j = k; j < n; ++j) A[i * n + j] -= f * A[k * n + j];
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= A[i * n + j] * x[j];
        x[i] = s / A[i * n + i];
    }
    return x;
}

}  // namespace oracle
