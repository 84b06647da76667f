#include "fracl1/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fracl1 {

TemporalMesh TemporalMesh::graded(std::size_t M, double r, double T) {
    if (M < 1) throw std::invalid_argument("graded mesh: M must be >= 1");
    if (!(r >= 1.0) || !std::isfinite(r)) throw std::invalid_argument("graded mesh: r must be >= 1");
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("graded mesh: T must be > 0");

    std::vector<double> pts(M + 1);
    const double inv_m = 1.0 / static_cast<double>(M);
    for (std::size_t j = 0; j < M; ++j) {
        const double s = static_cast<double>(j) * inv_m;
        pts[j] = T * std::pow(s, r);
    }
    pts[M] = T;
    return TemporalMesh(std::move(pts), r);
}

TemporalMesh TemporalMesh::from_points(std::vector<double> points, double r) {
    if (points.size() < 2) throw std::invalid_argument("mesh needs at least two points");
    if (!(r >= 1.0)) throw std::invalid_argument("mesh grading exponent must be >= 1");
    if (points.front() != 0.0) throw std::invalid_argument("mesh must start at t_0 = 0");
    for (std::size_t j = 1; j < points.size(); ++j) {
        if (!std::isfinite(points[j]) || !(points[j] > points[j - 1])) {
            throw std::invalid_argument("mesh points must be strictly increasing (violated at j=" +
                                        std::to_string(j) + ")");
        }
    }
    return TemporalMesh(std::move(points), r);
}

TemporalMesh build_graded(std::size_t M, double r, double T) { return TemporalMesh::graded(M, r, T); }

double quasi_graded_constant(const TemporalMesh& mesh, double r) {
    const double tau = mesh.first_step();
    const double tau_pow = std::pow(tau, 1.0 / r);
    double worst = 0.0;
    for (std::size_t j = 1; j <= mesh.steps(); ++j) {
        const double scale = tau_pow * std::pow(mesh[j], 1.0 - 1.0 / r);
        worst = std::max(worst, mesh.step(j) / scale);
    }
    return worst;
}

double min_local_ratio(const TemporalMesh& mesh) {
    double c = 1.0;
    for (std::size_t j = 2; j <= mesh.steps(); ++j) c = std::min(c, mesh[j - 1] / mesh[j]);
    return c;
}

bool is_nested_refinement(const TemporalMesh& coarse, const TemporalMesh& fine) {
    if (fine.steps() != 2 * coarse.steps()) return false;
    for (std::size_t m = 0; m <= coarse.steps(); ++m) {
        const double a = coarse[m];
        const double b = fine[2 * m];
        if (std::abs(a - b) > 1e-13 * std::max(std::abs(a), std::abs(b))) return false;
    }
    return true;
}

}  // namespace fracl1
