#include "fracl1/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fracl1/error.hpp"
#include "fracl1/problems.hpp"
#include "fracl1/quasilinear.hpp"

namespace fracl1 {

namespace {

bool is_scalar(const std::string& id) { return id == "test-a"; }
bool is_quasilinear(const std::string& id) { return id == "fisher-kolmogorov"; }

PdeProblem pde_problem(const StudyConfig& c) {
    if (c.problem == "test-b") return problems::test_b(c.alpha, c.sigma, c.scheme);
    return problems::smooth_linear(c.alpha);
}

SpatialGrid pde_grid(const StudyConfig& c) {
    if (c.problem == "test-b") return problems::test_b_grid(c.N);
    if (is_quasilinear(c.problem)) return problems::fisher_kolmogorov_grid(c.N);
    return problems::smooth_linear_grid(c.N);
}

struct RungErrors {
    std::vector<double> max_norm;
    std::vector<double> l2;
};

RungErrors solve_exact_rung(const StudyConfig& c, std::size_t M) {
    const TemporalMesh mesh = TemporalMesh::graded(M, c.grading());
    RungErrors out;
    if (is_scalar(c.problem)) {
        const ScalarProblem p = problems::test_a(c.alpha, c.sigma, c.scheme);
        const Trajectory traj = solve_ode(p, mesh);
        for (std::size_t m = 1; m <= M; ++m) {
            const double e = std::abs(traj.values[m] - p.exact(mesh[m]));
            out.max_norm.push_back(e);
            out.l2.push_back(e);
        }
        return out;
    }
    const PdeSolution sol = solve_pde(pde_problem(c), mesh, pde_grid(c));
    for (const StepError& e : sol.errors) {
        out.max_norm.push_back(e.max_norm);
        out.l2.push_back(e.l2);
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace

const std::vector<std::string>& problem_catalog() {
    static const std::vector<std::string> ids = {"test-a", "test-b", "fisher-kolmogorov", "smooth-linear"};
    return ids;
}

double StudyConfig::grading() const { return r > 0.0 ? r : (2.0 - alpha) / sigma; }

std::vector<std::size_t> StudyConfig::ladder() const {
    std::vector<std::size_t> Ms;
    for (std::size_t k = 0; k < levels; ++k) Ms.push_back(M << k);
    return Ms;
}

void validate(const StudyConfig& c) {
    const auto& ids = problem_catalog();
    if (std::find(ids.begin(), ids.end(), c.problem) == ids.end()) {
        throw std::invalid_argument("unknown problem '" + c.problem + "'");
    }
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (!(c.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    if (!(c.grading() >= 1.0)) throw std::invalid_argument("grading r must be >= 1");
    if (c.M < 1) throw std::invalid_argument("M must be >= 1");
    if (c.levels < 1 || c.levels > 30) throw std::invalid_argument("levels must lie in [1, 30]");
    if (!is_scalar(c.problem) && c.N < 1) throw std::invalid_argument("N must be >= 1");
    if (is_quasilinear(c.problem) && c.scheme != SchemeKind::Implicit) {
        throw std::invalid_argument("fisher-kolmogorov is solved with the implicit scheme only");
    }
}

void check_study_conditions(const StudyConfig& c) {
    validate(c);
    std::vector<std::size_t> Ms = c.ladder();
    if (is_quasilinear(c.problem)) Ms.push_back(2 * Ms.back());
    double lambda = 0.0;
    if (is_scalar(c.problem)) {
        lambda = problems::test_a(c.alpha, c.sigma, c.scheme).scheme.lambda0;
    } else if (is_quasilinear(c.problem)) {
        lambda = problems::fisher_kolmogorov(c.alpha).step_lambda();
    } else {
        const PdeProblem p = pde_problem(c);
        lambda = p.scheme.lambda0;
        if (!check_h_condition(pde_grid(c), p)) throw SolverError("spatial grid violates the h condition");
    }
    for (std::size_t M : Ms) {
        if (!step_condition_ok(TemporalMesh::graded(M, c.grading()), c.alpha, lambda)) {
            throw SolverError("step condition fails for M = " + std::to_string(M));
        }
    }
}

std::vector<RateRow> rate_table(const std::vector<std::size_t>& Ms, const std::vector<double>& errors) {
    if (Ms.size() != errors.size()) throw std::invalid_argument("rate_table: size mismatch");
    std::vector<RateRow> out;
    for (std::size_t k = 0; k < Ms.size(); ++k) {
        double rate = std::nan("");
        if (k + 1 < Ms.size()) {
            if (Ms[k + 1] != 2 * Ms[k]) throw std::invalid_argument("rate_table: ladder must double");
            rate = std::log2(errors[k] / errors[k + 1]);
        }
        out.push_back({Ms[k], errors[k], rate});
    }
    return out;
}

LevelReport make_level(const StudyConfig& c, const TemporalMesh& mesh, const std::vector<double>& error_max,
                       const std::vector<double>& error_l2) {
    const std::size_t M = mesh.steps();
    if (error_max.size() != M || error_l2.size() != M) throw std::invalid_argument("make_level: need M errors");
    const double r = c.grading();
    // bounds are stated for the problem's scheme order; test-a uses f = 0 (no consistency error)
    const bool first_order = make_scheme(c.scheme, Nonlinearity::allen_cahn(), Interval{-1.5, 1.5}).q == 1 &&
                             !is_scalar(c.problem) && !is_quasilinear(c.problem);
    LevelReport level;
    level.M = M;
    for (std::size_t m = 1; m <= M; ++m) {
        ErrorRow row;
        row.m = m;
        row.t = mesh[m];
        row.error_l2 = error_l2[m - 1];
        row.error_max = error_max[m - 1];
        row.bound_E = theoretical_bound(c.alpha, c.sigma, r, M, row.t, BoundVariant::E);
        row.bound_E_tilde = theoretical_bound(c.alpha, c.sigma, r, M, row.t, BoundVariant::ETilde);
        row.ratio = row.error_max / (first_order ? row.bound_E_tilde : row.bound_E);
        level.max_error = std::max(level.max_error, row.error_max);
        level.rows.push_back(row);
    }
    return level;
}

ErrorReport run_convergence(const StudyConfig& c) {
    check_study_conditions(c);
    ErrorReport report;
    report.config = c;
    const std::vector<std::size_t> Ms = c.ladder();

    if (!is_quasilinear(c.problem)) {
        std::vector<std::future<RungErrors>> tasks;
        for (std::size_t M : Ms) tasks.push_back(std::async(std::launch::async, solve_exact_rung, c, M));
        for (std::size_t k = 0; k < Ms.size(); ++k) {
            const RungErrors e = tasks[k].get();
            report.levels.push_back(make_level(c, TemporalMesh::graded(Ms[k], c.grading()), e.max_norm, e.l2));
        }
    } else {
        report.double_mesh = true;
        std::vector<std::size_t> solves = Ms;
        solves.push_back(2 * Ms.back());
        const QuasilinearProblem p = problems::fisher_kolmogorov(c.alpha);
        const SpatialGrid grid = pde_grid(c);
        std::vector<std::future<SpaceTimeTrajectory>> tasks;
        for (std::size_t M : solves) {
            tasks.push_back(std::async(std::launch::async, [&p, &grid, &c, M] {
                return solve_quasilinear(p, TemporalMesh::graded(M, c.grading()), grid).trajectory;
            }));
        }
        std::vector<SpaceTimeTrajectory> trajs;
        for (auto& t : tasks) trajs.push_back(t.get());
        for (std::size_t k = 0; k < Ms.size(); ++k) {
            const DoubleMeshError d = double_mesh_error(trajs[k], trajs[k + 1]);
            report.levels.push_back(make_level(c, trajs[k].mesh(), d.max_norm, d.l2));
        }
    }

    std::vector<double> errs;
    for (const auto& level : report.levels) errs.push_back(level.max_error);
    report.rates = rate_table(Ms, errs);
    return report;
}

DoubleMeshError double_mesh_error(const Trajectory& coarse, const Trajectory& fine) {
    if (!is_nested_refinement(coarse.mesh, fine.mesh)) {
        throw std::invalid_argument("double_mesh_error: fine mesh is not a nested refinement of the coarse mesh");
    }
    DoubleMeshError d;
    for (std::size_t m = 1; m <= coarse.mesh.steps(); ++m) {
        const double e = std::abs(coarse.values[m] - fine.values[2 * m]);
        d.t.push_back(coarse.mesh[m]);
        d.max_norm.push_back(e);
        d.l2.push_back(e);
        d.max_error = std::max(d.max_error, e);
    }
    return d;
}

DoubleMeshError double_mesh_error(const SpaceTimeTrajectory& coarse, const SpaceTimeTrajectory& fine) {
    if (!is_nested_refinement(coarse.mesh(), fine.mesh())) {
        throw std::invalid_argument("double_mesh_error: fine mesh is not a nested refinement of the coarse mesh");
    }
    const SpatialGrid& a = coarse.grid();
    const SpatialGrid& b = fine.grid();
    if (a.interior() != b.interior() || a.x_lo() != b.x_lo() || a.x_hi() != b.x_hi()) {
        throw std::invalid_argument("double_mesh_error: spatial grids differ");
    }
    DoubleMeshError d;
    const double h = a.h();
    for (std::size_t m = 1; m <= coarse.steps(); ++m) {
        const auto u = coarse.at(m);
        const auto v = fine.at(2 * m);
        double emax = 0.0;
        double sq = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            const double e = std::abs(u[k] - v[k]);
            emax = std::max(emax, e);
            sq += e * e;
        }
        d.t.push_back(coarse.mesh()[m]);
        d.max_norm.push_back(emax);
        d.l2.push_back(std::sqrt(h * sq));
        d.max_error = std::max(d.max_error, emax);
    }
    return d;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const ErrorReport& report, std::ostream& out) {
    out << "M,m,t_m,error_L2,error_max,bound_E,bound_E_tilde,ratio\n";
    for (const auto& level : report.levels) {
        for (const auto& r : level.rows) {
            out << level.M << ',' << r.m << ',' << format_double(r.t) << ',' << format_double(r.error_l2) << ','
                << format_double(r.error_max) << ',' << format_double(r.bound_E) << ','
                << format_double(r.bound_E_tilde) << ',' << format_double(r.ratio) << '\n';
        }
    }
}

void write_rates_csv(const ErrorReport& report, std::ostream& out) {
    out << "M,error,rate\n";
    for (const auto& r : report.rates) {
        out << r.M << ',' << format_double(r.error) << ',' << format_double(r.rate) << '\n';
    }
}

void write_plotdata(const ErrorReport& report, std::ostream& out) {
    out << "M,t_m,error,bound\n";
    for (const auto& level : report.levels) {
        for (const auto& r : level.rows) {
            const double bound = r.ratio != 0.0 ? r.error_max / r.ratio : r.bound_E;
            out << level.M << ',' << format_double(r.t) << ',' << format_double(r.error_max) << ','
                << format_double(bound) << '\n';
        }
    }
}

void emit_csv(const ErrorReport& report, const std::string& path) {
    std::ostringstream s;
    write_csv(report, s);
    write_text(path, s.str());
}

void emit_rates_csv(const ErrorReport& report, const std::string& path) {
    std::ostringstream s;
    write_rates_csv(report, s);
    write_text(path, s.str());
}

void emit_plotdata(const ErrorReport& report, const std::string& path) {
    std::ostringstream s;
    write_plotdata(report, s);
    write_text(path, s.str());
}

std::vector<LevelReport> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("M,m,t_m", 0) != 0) {
        throw std::runtime_error("parse_csv: missing header");
    }
    std::vector<LevelReport> levels;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() != 8) throw std::runtime_error("parse_csv: expected 8 fields in '" + line + "'");
        const std::size_t M = std::stoull(f[0]);
        if (levels.empty() || levels.back().M != M) levels.push_back(LevelReport{M, {}, 0.0});
        ErrorRow r;
        r.m = std::stoull(f[1]);
        r.t = std::strtod(f[2].c_str(), nullptr);
        r.error_l2 = std::strtod(f[3].c_str(), nullptr);
        r.error_max = std::strtod(f[4].c_str(), nullptr);
        r.bound_E = std::strtod(f[5].c_str(), nullptr);
        r.bound_E_tilde = std::strtod(f[6].c_str(), nullptr);
        r.ratio = std::strtod(f[7].c_str(), nullptr);
        levels.back().max_error = std::max(levels.back().max_error, r.error_max);
        levels.back().rows.push_back(r);
    }
    return levels;
}

std::vector<LevelReport> read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    return parse_csv(f);
}

}  // namespace fracl1
