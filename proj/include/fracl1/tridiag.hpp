#pragma once

#include <span>
#include <vector>

namespace fracl1 {

/// Tridiagonal matrix stored by diagonals; lower[0] and upper[n-1] are unused (zero).
struct Tridiagonal {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    explicit Tridiagonal(std::size_t n = 0) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}

    std::size_t size() const { return diag.size(); }

    std::vector<double> apply(std::span<const double> x) const;
    void apply_into(std::span<const double> x, std::span<double> out) const;

    /// Off-diagonals <= 0 and strict row diagonal dominance of (this + shift * I).
    bool is_m_matrix(double shift = 0.0) const;
};

/// Thomas algorithm without pivoting. Throws SolverError on a zero or non-finite pivot.
std::vector<double> solve_tridiagonal(const Tridiagonal& A, std::span<const double> rhs);

}  // namespace fracl1
