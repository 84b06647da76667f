#include "fracl1/tridiag.hpp"

#include <cmath>
#include <stdexcept>

#include "fracl1/error.hpp"

namespace fracl1 {

std::vector<double> Tridiagonal::apply(std::span<const double> x) const {
    std::vector<double> out(size());
    apply_into(x, out);
    return out;
}

void Tridiagonal::apply_into(std::span<const double> x, std::span<double> out) const {
    const std::size_t n = size();
    if (x.size() != n || out.size() != n) throw std::invalid_argument("Tridiagonal::apply: size mismatch");
    if (n == 0) return;
    if (n == 1) {
        out[0] = diag[0] * x[0];
        return;
    }
    out[0] = diag[0] * x[0] + upper[0] * x[1];
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = lower[i] * x[i - 1] + diag[i] * x[i] + upper[i] * x[i + 1];
    out[n - 1] = lower[n - 1] * x[n - 2] + diag[n - 1] * x[n - 1];
}

bool Tridiagonal::is_m_matrix(double shift) const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = i > 0 ? lower[i] : 0.0;
        const double up = i + 1 < n ? upper[i] : 0.0;
        if (lo > 0.0 || up > 0.0) return false;
        if (!(diag[i] + shift > -lo - up)) return false;
    }
    return true;
}

std::vector<double> solve_tridiagonal(const Tridiagonal& A, std::span<const double> rhs) {
    const std::size_t n = A.size();
    if (rhs.size() != n) throw std::invalid_argument("solve_tridiagonal: size mismatch");
    std::vector<double> c(n), d(n), x(n);
    if (n == 0) return x;

    double pivot = A.diag[0];
    if (pivot == 0.0 || !std::isfinite(pivot)) throw SolverError("solve_tridiagonal: singular system");
    c[0] = A.upper[0] / pivot;
    d[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = A.diag[i] - A.lower[i] * c[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot)) throw SolverError("solve_tridiagonal: singular system");
        c[i] = i + 1 < n ? A.upper[i] / pivot : 0.0;
        d[i] = (rhs[i] - A.lower[i] * d[i - 1]) / pivot;
    }
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

}  // namespace fracl1
