#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fracl1/fdspace.hpp"
#include "fracl1/ode.hpp"
#include "fracl1/schemes.hpp"

namespace fracl1 {

/// Built-in problem ids: "test-a" (scalar), "test-b" (semilinear PDE),
/// "fisher-kolmogorov" (quasilinear PDE, no exact solution), "smooth-linear" (linear PDE).
const std::vector<std::string>& problem_catalog();

struct StudyConfig {
    std::string problem = "test-a";
    SchemeKind scheme = SchemeKind::Implicit;
    double alpha = 0.4;
    double sigma = 0.8;
    double r = 0.0;           // <= 0: use (2 - alpha) / sigma
    std::size_t M = 512;      // first rung of the ladder
    std::size_t levels = 5;   // rungs M, 2M, ..., 2^{levels-1} M
    std::size_t N = 2048;     // interior spatial nodes (PDE problems)
    std::uint64_t seed = 0;

    double grading() const;
    std::vector<std::size_t> ladder() const;
};

/// Throws std::invalid_argument on unknown problems or out-of-range parameters.
void validate(const StudyConfig& config);

/// Throws SolverError if any rung of the ladder violates the step condition
/// or (PDE problems) the spatial mesh condition.
void check_study_conditions(const StudyConfig& config);

struct ErrorRow {
    std::size_t m = 0;
    double t = 0.0;
    double error_l2 = 0.0;
    double error_max = 0.0;
    double bound_E = 0.0;
    double bound_E_tilde = 0.0;
    double ratio = 0.0;  // error_max over the bound that applies to the scheme (E for q = 2, E~ for q = 1)
};

struct LevelReport {
    std::size_t M = 0;
    std::vector<ErrorRow> rows;
    double max_error = 0.0;  // max over rows of error_max
};

struct RateRow {
    std::size_t M = 0;
    double error = 0.0;
    double rate = 0.0;  // log2(e(M)/e(2M)); NaN on the last rung
};

struct ErrorReport {
    StudyConfig config;
    bool double_mesh = false;  // errors are |U_M - U_2M| rather than against an exact solution
    std::vector<LevelReport> levels;
    std::vector<RateRow> rates;
};

/// Pairwise rates over a doubling ladder. Throws if consecutive M do not double.
std::vector<RateRow> rate_table(const std::vector<std::size_t>& Ms, const std::vector<double>& errors);

/// Fills rows from per-step errors (index m-1), adding bound columns.
LevelReport make_level(const StudyConfig& config, const TemporalMesh& mesh, const std::vector<double>& error_max,
                       const std::vector<double>& error_l2);

/**
 * Runs every rung (as independent tasks), computes errors against the exact
 * solution, or against the next-finer rung for problems without one, and
 * assembles the rate table.
 */
ErrorReport run_convergence(const StudyConfig& config);

struct DoubleMeshError {
    std::vector<double> t;         // shared times t_1..t_M of the coarse mesh
    std::vector<double> max_norm;  // max_k |U_M^m - U_2M^{2m}|
    std::vector<double> l2;        // sqrt(h sum_k ...), equals max_norm for scalar problems
    double max_error = 0.0;
};

/// Throws std::invalid_argument unless `fine` is a nested refinement of `coarse`
/// on the same spatial grid.
DoubleMeshError double_mesh_error(const Trajectory& coarse, const Trajectory& fine);
DoubleMeshError double_mesh_error(const SpaceTimeTrajectory& coarse, const SpaceTimeTrajectory& fine);

/// printf("%.17g"); "nan"/"inf" for non-finite values.
std::string format_double(double v);

/// Per-row table: M,m,t_m,error_L2,error_max,bound_E,bound_E_tilde,ratio.
void write_csv(const ErrorReport& report, std::ostream& out);
/// M,error,rate.
void write_rates_csv(const ErrorReport& report, std::ostream& out);
/// M,t_m,error,bound triples for log-log plots; bound is the one used for `ratio`.
void write_plotdata(const ErrorReport& report, std::ostream& out);

/// File variants; throw std::runtime_error on I/O failure.
void emit_csv(const ErrorReport& report, const std::string& path);
void emit_rates_csv(const ErrorReport& report, const std::string& path);
void emit_plotdata(const ErrorReport& report, const std::string& path);

/// Parses write_csv output back into levels (max_error recomputed).
std::vector<LevelReport> parse_csv(std::istream& in);
std::vector<LevelReport> read_csv(const std::string& path);

}  // namespace fracl1
