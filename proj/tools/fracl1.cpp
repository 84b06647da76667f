#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fracl1/config.hpp"
#include "fracl1/harness.hpp"
#include "fracl1/l1.hpp"
#include "fracl1/problems.hpp"
#include "fracl1/quasilinear.hpp"
#include "fracl1/verify.hpp"

using namespace fracl1;

namespace {

struct Options {
    StudyConfig study;
    std::string scheme = "implicit";
    std::string out = "-";
    std::string rates_out;
    std::string plot_out;
    std::string config;
    std::string suite = "all";
};

void add_common(CLI::App* cmd, Options& o, bool spatial) {
    cmd->add_option("--alpha", o.study.alpha, "fractional order in (0,1)")->capture_default_str();
    cmd->add_option("--sigma", o.study.sigma, "initial-layer exponent of the exact solution")->capture_default_str();
    cmd->add_option("--r", o.study.r, "mesh grading (<= 0: (2-alpha)/sigma)")->capture_default_str();
    cmd->add_option("--M", o.study.M, "time steps (first rung for convergence)")->capture_default_str();
    cmd->add_option("--scheme", o.scheme, "implicit | convex-splitting | imex1 | imex2 | stabilized")
        ->capture_default_str();
    cmd->add_option("--problem", o.study.problem, "built-in problem id")->capture_default_str();
    cmd->add_option("--out", o.out, "output CSV path ('-' for stdout)")->capture_default_str();
    cmd->add_option("--seed", o.study.seed, "RNG seed")->capture_default_str();
    if (spatial) cmd->add_option("--N", o.study.N, "interior spatial nodes")->capture_default_str();
}

void emit(const std::string& path, const std::string& text) {
    if (path == "-" || path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

int run_solve_ode(Options& o) {
    o.study.problem = "test-a";
    o.study.scheme = parse_scheme_kind(o.scheme);
    o.study.levels = 1;
    check_study_conditions(o.study);
    const ScalarProblem p = problems::test_a(o.study.alpha, o.study.sigma, o.study.scheme);
    const TemporalMesh mesh = TemporalMesh::graded(o.study.M, o.study.grading());
    const Trajectory traj = solve_ode(p, mesh);
    std::ostringstream s;
    s << "m,t_m,U_m,u_exact,error,bound_E,bound_E_tilde\n";
    for (std::size_t m = 0; m <= mesh.steps(); ++m) {
        const double t = mesh[m];
        const double exact = p.exact(t);
        const double bE = m == 0 ? 0.0 : theoretical_bound(p.alpha, o.study.sigma, o.study.grading(), mesh.steps(), t);
        const double bT = m == 0 ? 0.0
                                 : theoretical_bound(p.alpha, o.study.sigma, o.study.grading(), mesh.steps(), t,
                                                     BoundVariant::ETilde);
        s << m << ',' << format_double(t) << ',' << format_double(traj.values[m]) << ',' << format_double(exact)
          << ',' << format_double(std::abs(traj.values[m] - exact)) << ',' << format_double(bE) << ','
          << format_double(bT) << '\n';
    }
    emit(o.out, s.str());
    return 0;
}

int run_solve_pde(Options& o) {
    if (o.study.problem == "test-a") o.study.problem = "test-b";
    if (o.study.problem != "test-b" && o.study.problem != "smooth-linear") {
        throw std::invalid_argument("solve-pde supports test-b and smooth-linear");
    }
    o.study.scheme = parse_scheme_kind(o.scheme);
    o.study.levels = 1;
    const ErrorReport report = run_convergence(o.study);
    std::ostringstream s;
    write_csv(report, s);
    emit(o.out, s.str());
    std::fprintf(stderr, "max nodal error %s\n", format_double(report.levels.front().max_error).c_str());
    return 0;
}

int run_solve_quasilinear(Options& o) {
    o.study.problem = "fisher-kolmogorov";
    o.study.scheme = SchemeKind::Implicit;
    o.study.sigma = o.study.alpha;
    o.study.levels = 1;
    const ErrorReport report = run_convergence(o.study);
    std::ostringstream s;
    write_csv(report, s);
    emit(o.out, s.str());
    std::fprintf(stderr, "max double-mesh error %s\n", format_double(report.levels.front().max_error).c_str());
    return 0;
}

int run_convergence_cmd(Options& o, const CLI::App& cmd) {
    if (!o.config.empty()) {
        StudyConfig file = load_study_config(o.config);
        // explicit flags override the file
        if (cmd.count("--alpha")) file.alpha = o.study.alpha;
        if (cmd.count("--sigma")) file.sigma = o.study.sigma;
        if (cmd.count("--r")) file.r = o.study.r;
        if (cmd.count("--M")) file.M = o.study.M;
        if (cmd.count("--N")) file.N = o.study.N;
        if (cmd.count("--levels")) file.levels = o.study.levels;
        if (cmd.count("--problem")) file.problem = o.study.problem;
        if (cmd.count("--seed")) file.seed = o.study.seed;
        if (cmd.count("--scheme")) file.scheme = parse_scheme_kind(o.scheme);
        o.study = file;
    } else {
        o.study.scheme = parse_scheme_kind(o.scheme);
        if (o.study.problem == "fisher-kolmogorov" && !cmd.count("--sigma")) o.study.sigma = o.study.alpha;
    }
    const ErrorReport report = run_convergence(o.study);
    std::ostringstream rates;
    write_rates_csv(report, rates);
    std::cout << rates.str();
    if (!o.out.empty() && o.out != "-") emit_csv(report, o.out);
    if (!o.rates_out.empty()) emit_rates_csv(report, o.rates_out);
    if (!o.plot_out.empty()) emit_plotdata(report, o.plot_out);
    return 0;
}

int run_verify(Options& o) {
    std::vector<SuiteResult> suites;
    const auto seed = o.study.seed;
    if (o.suite == "all") {
        suites = run_verification(seed);
    } else if (o.suite == "l1") {
        suites.push_back(verify_l1_identities(seed));
    } else if (o.suite == "comparison") {
        suites.push_back(verify_comparison(seed));
    } else if (o.suite == "stability") {
        suites.push_back(verify_stability(o.study.alpha));
    } else if (o.suite == "truncation") {
        suites.push_back(verify_truncation());
    } else if (o.suite == "fd") {
        suites.push_back(verify_fd_structure(seed));
    } else if (o.suite == "schemes") {
        suites.push_back(verify_scheme_conditions());
    } else {
        throw std::invalid_argument("unknown suite '" + o.suite + "'");
    }
    bool ok = true;
    std::ostringstream csv;
    csv << "suite,check,pass,value,threshold\n";
    for (const auto& s : suites) {
        std::printf("%s %s\n", s.pass() ? "PASS" : "FAIL", s.suite.c_str());
        for (const auto& c : s.checks) {
            if (!c.pass) {
                std::printf("  FAIL %s: %s > %s %s\n", c.name.c_str(), format_double(c.value).c_str(),
                            format_double(c.threshold).c_str(), c.detail.c_str());
            }
            csv << s.suite << ",\"" << c.name << "\"," << (c.pass ? 1 : 0) << ',' << format_double(c.value) << ','
                << format_double(c.threshold) << '\n';
        }
        ok = ok && s.pass();
    }
    if (!o.out.empty() && o.out != "-") emit(o.out, csv.str());
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Caputo L1 solvers on graded meshes"};
    app.require_subcommand(0, 1);
    bool version = false;
    app.add_flag("--version", version, "print version and build information");

    Options o;
    auto* ode = app.add_subcommand("solve-ode", "scalar problem d^alpha u = g (test-a); per-step profile CSV");
    add_common(ode, o, false);

    auto* pde = app.add_subcommand("solve-pde", "semilinear PDE (test-b, smooth-linear); per-step error CSV");
    add_common(pde, o, true);

    auto* quasi = app.add_subcommand("solve-quasilinear", "Fisher-Kolmogorov problem; double-mesh error CSV");
    add_common(quasi, o, true);

    auto* conv = app.add_subcommand("convergence", "M-ladder study; prints the rate table");
    add_common(conv, o, true);
    conv->add_option("--levels", o.study.levels, "number of rungs M, 2M, ...")->capture_default_str();
    conv->add_option("--config", o.config, "TOML (or JSON) study config");
    conv->add_option("--rates-out", o.rates_out, "rate table CSV");
    conv->add_option("--plot-out", o.plot_out, "(M, t_m, error, bound) plot data");

    auto* ver = app.add_subcommand("verify", "property suites; nonzero exit on failure");
    ver->add_option("--seed", o.study.seed, "RNG seed")->capture_default_str();
    ver->add_option("--alpha", o.study.alpha, "alpha for the stability suite")->capture_default_str();
    ver->add_option("--suite", o.suite, "all | l1 | comparison | stability | truncation | fd | schemes")
        ->capture_default_str();
    ver->add_option("--out", o.out, "per-check CSV");

    CLI11_PARSE(app, argc, argv);

    if (version) {
        std::printf("fracl1 0.1.0 (gamma: %s)\n", std::string(gamma_backend()).c_str());
        return 0;
    }
    try {
        if (*ode) return run_solve_ode(o);
        if (*pde) return run_solve_pde(o);
        if (*quasi) return run_solve_quasilinear(o);
        if (*conv) return run_convergence_cmd(o, *conv);
        if (*ver) return run_verify(o);
        std::cout << app.help();
        return 0;
    } catch (const SolverError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
