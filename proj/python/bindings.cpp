#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fracl1/error.hpp"
#include "fracl1/harness.hpp"
#include "fracl1/l1.hpp"
#include "fracl1/mesh.hpp"
#include "fracl1/ode.hpp"
#include "fracl1/problems.hpp"
#include "fracl1/verify.hpp"

namespace py = pybind11;
using namespace fracl1;

namespace {

py::dict suite_to_dict(const SuiteResult& s) {
    py::list checks;
    for (const auto& c : s.checks) {
        py::dict d;
        d["name"] = c.name;
        d["pass"] = c.pass;
        d["value"] = c.value;
        d["threshold"] = c.threshold;
        d["detail"] = c.detail;
        checks.append(d);
    }
    py::dict out;
    out["suite"] = s.suite;
    out["pass"] = s.pass();
    out["checks"] = checks;
    return out;
}

StudyConfig make_config(const std::string& problem, const std::string& scheme, double alpha, double sigma, double r,
                        std::size_t M, std::size_t levels, std::size_t N, std::uint64_t seed) {
    StudyConfig c;
    c.problem = problem;
    c.scheme = parse_scheme_kind(scheme);
    c.alpha = alpha;
    c.sigma = sigma;
    c.r = r;
    c.M = M;
    c.levels = levels;
    c.N = N;
    c.seed = seed;
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Caputo L1 discretisation on graded meshes";
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    py::class_<TemporalMesh>(m, "TemporalMesh")
        .def_static("graded", &TemporalMesh::graded, py::arg("M"), py::arg("r"), py::arg("T") = 1.0)
        .def_static("from_points", &TemporalMesh::from_points, py::arg("points"), py::arg("r") = 1.0)
        .def_property_readonly("steps", &TemporalMesh::steps)
        .def_property_readonly("grading", &TemporalMesh::grading)
        .def_property_readonly("horizon", &TemporalMesh::horizon)
        .def_property_readonly("points",
                               [](const TemporalMesh& t) {
                                   auto p = t.points();
                                   return std::vector<double>(p.begin(), p.end());
                               })
        .def("__len__", [](const TemporalMesh& t) { return t.steps() + 1; })
        .def("__getitem__", [](const TemporalMesh& t, std::size_t j) {
            if (j > t.steps()) throw py::index_error();
            return t[j];
        });

    m.def("quasi_graded_constant", py::overload_cast<const TemporalMesh&>(&quasi_graded_constant), py::arg("mesh"));
    m.def("is_nested_refinement", &is_nested_refinement, py::arg("coarse"), py::arg("fine"));

    py::class_<L1Row>(m, "L1Row")
        .def_readonly("m", &L1Row::m)
        .def_readonly("alpha", &L1Row::alpha)
        .def_readonly("kappa_mm", &L1Row::kappa_mm)
        .def_readonly("kappa", &L1Row::kappa);
    m.def("l1_row", &l1_row, py::arg("mesh"), py::arg("alpha"), py::arg("m"));
    m.def(
        "apply_l1",
        [](const TemporalMesh& mesh, double alpha, std::size_t step, const std::vector<double>& history) {
            if (history.size() < step + 1) throw py::value_error("history needs m + 1 values");
            return apply_l1(l1_row(mesh, alpha, step), history);
        },
        py::arg("mesh"), py::arg("alpha"), py::arg("m"), py::arg("history"));
    m.def("caputo_power", &caputo_power, py::arg("alpha"), py::arg("sigma"), py::arg("t"));
    m.def("truncation_gamma", &truncation_gamma, py::arg("alpha"), py::arg("sigma"), py::arg("r"));
    m.def("global_rate", &global_rate, py::arg("alpha"), py::arg("sigma"), py::arg("r"));
    m.def(
        "theoretical_bound",
        [](double alpha, double sigma, double r, std::size_t M, double t, bool tilde) {
            return theoretical_bound(alpha, sigma, r, M, t, tilde ? BoundVariant::ETilde : BoundVariant::E);
        },
        py::arg("alpha"), py::arg("sigma"), py::arg("r"), py::arg("M"), py::arg("t"), py::arg("tilde") = false);
    m.def("step_condition_ok", &step_condition_ok, py::arg("mesh"), py::arg("alpha"), py::arg("lambda0"));

    m.def(
        "solve_linear_recursion",
        [](const TemporalMesh& mesh, double alpha, double lambda0, double lambda1, const std::vector<double>& rhs,
           double u0) { return solve_linear_recursion(mesh, alpha, lambda0, lambda1, rhs, u0); },
        py::arg("mesh"), py::arg("alpha"), py::arg("lambda0"), py::arg("lambda1"), py::arg("rhs"),
        py::arg("u0") = 0.0);
    m.def(
        "solve_ode",
        [](const TemporalMesh& mesh, double alpha, const std::function<double(double)>& g, const std::string& scheme) {
            // f = 0 problem with a user source
            ScalarProblem p = problems::test_a(alpha, 1.0, parse_scheme_kind(scheme));
            p.g = g;
            p.exact = nullptr;
            return solve_ode(p, mesh).values;
        },
        py::arg("mesh"), py::arg("alpha"), py::arg("g"), py::arg("scheme") = "implicit",
        "Solves d^alpha u = g(t), u(0) = 0; returns U^0..U^M.");
    m.def(
        "solve_test_a",
        [](double alpha, double sigma, std::size_t M, double r) {
            const ScalarProblem p = problems::test_a(alpha, sigma);
            const TemporalMesh mesh = TemporalMesh::graded(M, r);
            const Trajectory traj = solve_ode(p, mesh);
            std::vector<double> exact;
            for (std::size_t j = 0; j <= M; ++j) exact.push_back(p.exact(mesh[j]));
            auto pts = mesh.points();
            return py::make_tuple(std::vector<double>(pts.begin(), pts.end()), traj.values, exact);
        },
        py::arg("alpha"), py::arg("sigma"), py::arg("M"), py::arg("r"), "Returns (t, U, u_exact).");

    m.def("problem_catalog", &problem_catalog);
    m.def(
        "run_convergence",
        [](const std::string& problem, const std::string& scheme, double alpha, double sigma, double r, std::size_t M,
           std::size_t levels, std::size_t N, std::uint64_t seed) {
            const StudyConfig config = make_config(problem, scheme, alpha, sigma, r, M, levels, N, seed);
            ErrorReport report;
            {
                py::gil_scoped_release release;
                report = run_convergence(config);
            }
            py::list rates;
            for (const auto& row : report.rates) {
                py::dict d;
                d["M"] = row.M;
                d["error"] = row.error;
                d["rate"] = row.rate;
                rates.append(d);
            }
            std::ostringstream csv;
            write_csv(report, csv);
            py::dict out;
            out["double_mesh"] = report.double_mesh;
            out["rates"] = rates;
            out["csv"] = csv.str();
            return out;
        },
        py::arg("problem") = "test-a", py::arg("scheme") = "implicit", py::arg("alpha") = 0.4,
        py::arg("sigma") = 0.8, py::arg("r") = 0.0, py::arg("M") = 64, py::arg("levels") = 3, py::arg("N") = 64,
        py::arg("seed") = 0);

    m.def(
        "verify",
        [](const std::string& suite, std::uint64_t seed) {
            std::vector<SuiteResult> s;
            {
                py::gil_scoped_release release;
                if (suite == "all") s = run_verification(seed);
                else if (suite == "l1") s.push_back(verify_l1_identities(seed));
                else if (suite == "comparison") s.push_back(verify_comparison(seed));
                else if (suite == "stability") s.push_back(verify_stability());
                else if (suite == "truncation") s.push_back(verify_truncation());
                else if (suite == "fd") s.push_back(verify_fd_structure(seed));
                else if (suite == "schemes") s.push_back(verify_scheme_conditions());
                else throw std::invalid_argument("unknown suite '" + suite + "'");
            }
            py::list out;
            for (const auto& r : s) out.append(suite_to_dict(r));
            return out;
        },
        py::arg("suite") = "all", py::arg("seed") = 0);

    m.def("format_double", &format_double, py::arg("value"));
    m.attr("gamma_backend") = std::string(gamma_backend());
}
