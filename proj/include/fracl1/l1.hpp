#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fracl1/mesh.hpp"

namespace fracl1 {

/// Which gamma implementation the library was built against.
std::string_view gamma_backend();

/**
 * One row of the L1 discrete Caputo operator in coefficient form:
 *
 *   delta^alpha V^m = kappa_mm V^m - sum_{j<m} kappa[j] V^j,
 *
 * with kappa_mm = tau_m^{-alpha} / Gamma(2 - alpha) and kappa[j] > 0.
 */
struct L1Row {
    std::size_t m = 0;
    double alpha = 0.5;
    double kappa_mm = 0.0;
    std::vector<double> kappa;  // kappa_{m,0..m-1}

    /// sum_{j<m} kappa[j] * history[j]; history must hold at least m values.
    double history_sum(std::span<const double> history) const;
};

/// Throws std::invalid_argument for alpha outside (0,1) or m outside [1, M].
L1Row l1_row(const TemporalMesh& mesh, double alpha, std::size_t m);

/// kappa_mm V^m - sum kappa_{m,j} V^j; `history` must contain exactly V^0..V^m.
double apply_l1(const L1Row& row, std::span<const double> history);

/// Direct evaluation of the L1 sum over difference quotients (the defining form,
/// without the coefficient rearrangement). Used as an independent route in tests.
double apply_l1_direct(const TemporalMesh& mesh, double alpha, std::size_t m,
                       std::span<const double> history);

/// Precomputed triangular table of all rows 1..M of one mesh, for sweeps that
/// reuse the same mesh many times.
class L1Cache {
public:
    L1Cache(const TemporalMesh& mesh, double alpha);

    double alpha() const { return alpha_; }
    std::size_t steps() const { return rows_.size(); }
    const L1Row& row(std::size_t m) const { return rows_[m - 1]; }

private:
    std::vector<L1Row> rows_;
    double alpha_;
};

/// Exact Caputo derivative of t^sigma: Gamma(sigma+1)/Gamma(sigma-alpha+1) t^{sigma-alpha}.
double caputo_power(double alpha, double sigma, double t);

/// Truncation error exponent gamma = min{alpha, (2-alpha)/r + alpha - sigma - 1}.
double truncation_gamma(double alpha, double sigma, double r);

struct TruncationPoint {
    std::size_t m;
    double t;
    double residual;  // r^m = delta^alpha u(t_m) - caputo u(t_m)
    double bound;     // tau^{sigma-alpha} (tau/t_m)^{gamma+1}
    double ratio;     // |r^m| / bound
};

/// Truncation errors of the L1 operator for u(t) = t^sigma at every mesh point.
std::vector<TruncationPoint> truncation_profile(const TemporalMesh& mesh, double alpha, double sigma);
/// Same, reusing precomputed rows of `mesh` (cache must have been built from it).
std::vector<TruncationPoint> truncation_profile(const TemporalMesh& mesh, const L1Cache& rows, double sigma);

}  // namespace fracl1
