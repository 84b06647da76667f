#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace fracl1 {

/**
 * Temporal mesh 0 = t_0 < t_1 < ... < t_M = T.
 *
 * Stored as an explicit point list so that user-supplied quasi-graded meshes
 * are handled the same way as the standard graded grid t_j = T (j/M)^r.
 * Validation happens at construction; the object is immutable afterwards.
 */
class TemporalMesh {
public:
    /// Standard graded mesh t_j = T (j/M)^r with t_M pinned to T.
    static TemporalMesh graded(std::size_t M, double r, double T = 1.0);

    /// Arbitrary mesh. `r` is the grading exponent the mesh is meant to follow
    /// (used by quasi_graded_constant); points must start at 0 and increase.
    static TemporalMesh from_points(std::vector<double> points, double r = 1.0);

    std::size_t steps() const { return points_.size() - 1; }
    double grading() const { return r_; }
    double horizon() const { return points_.back(); }

    double operator[](std::size_t j) const { return points_[j]; }
    double t(std::size_t j) const { return points_[j]; }
    /// tau_j = t_j - t_{j-1}, j >= 1.
    double step(std::size_t j) const { return points_[j] - points_[j - 1]; }
    /// tau = t_1.
    double first_step() const { return points_[1]; }

    std::span<const double> points() const { return points_; }

private:
    TemporalMesh(std::vector<double> points, double r) : points_(std::move(points)), r_(r) {}

    std::vector<double> points_;
    double r_;
};

/// Builds the standard graded mesh; throws std::invalid_argument for M < 1, r < 1, T <= 0.
TemporalMesh build_graded(std::size_t M, double r, double T = 1.0);

/// max_j tau_j / (tau^{1/r} t_j^{1-1/r}).
double quasi_graded_constant(const TemporalMesh& mesh, double r);
inline double quasi_graded_constant(const TemporalMesh& mesh) {
    return quasi_graded_constant(mesh, mesh.grading());
}

/// min_{j>=2} t_{j-1}/t_j (the constant c in t_{j-1} >= c t_j). Returns 1 for M < 2.
double min_local_ratio(const TemporalMesh& mesh);

/// True iff fine has twice the steps and contains every coarse point
/// (relative tolerance 1e-13), i.e. coarse t_m == fine t_{2m}.
bool is_nested_refinement(const TemporalMesh& coarse, const TemporalMesh& fine);

}  // namespace fracl1
