#include <cmath>

#include "doctest.h"
#include "fracl1/fdspace.hpp"
#include "fracl1/problems.hpp"
#include "fracl1/quasilinear.hpp"

using namespace fracl1;

TEST_CASE("Kirchhoff transform of a = 1 + u") {
    const auto p = problems::fisher_kolmogorov(0.5);
    CHECK(kirchhoff(p, 0.0) == 0.0);
    CHECK(kirchhoff(p, 0.4) == doctest::Approx(0.48));
    for (double w : {-0.5, 0.0, 0.1, 0.25, 2.0}) {
        CHECK(kirchhoff_inverse(p, kirchhoff(p, w)) == doctest::Approx(w).epsilon(1e-12));
    }
    // analytic inverse -1 + sqrt(1 + 2W)
    CHECK(kirchhoff_inverse(p, 1.5) == doctest::Approx(1.0));
}

TEST_CASE("numeric Kirchhoff transform") {
    QuasilinearProblem p;
    p.a = [](double u) { return 2.0 + std::sin(u); };
    p.range = Interval{-2.0, 2.0};
    for (double w : {-1.5, -0.2, 0.0, 0.7, 1.9}) {
        const double exact = 2.0 * w + 1.0 - std::cos(w);
        CHECK(kirchhoff(p, w) == doctest::Approx(exact).epsilon(1e-12));
        CHECK(kirchhoff_inverse(p, kirchhoff(p, w)) == doctest::Approx(w).epsilon(1e-12));
    }
    CHECK_THROWS_AS(kirchhoff_inverse(p, 100.0), std::invalid_argument);

    QuasilinearProblem id;
    id.a = [](double) { return 1.0; };
    CHECK(kirchhoff(id, 0.3) == doctest::Approx(0.3));
}

TEST_CASE("a = 1, b = 0 reduces to the semilinear implicit scheme") {
    const double alpha = 0.6;
    const auto mesh = TemporalMesh::graded(24, 2.0);
    const SpatialGrid grid(0.0, 1.0, 63);
    auto source = [](double x, double t) { return std::sin(3.0 * x) * (1.0 + t); };
    auto init = [](double x) { return 0.5 * std::sin(3.141592653589793 * x); };

    PdeProblem semi;
    semi.alpha = alpha;
    semi.scheme = make_scheme(SchemeKind::Implicit, Nonlinearity::allen_cahn(), Interval{-1.5, 1.5});
    semi.g = source;
    semi.u0 = init;

    QuasilinearProblem quasi;
    quasi.alpha = alpha;
    quasi.a = [](double) { return 1.0; };
    quasi.A = [](double u) { return u; };
    quasi.A_inv = [](double W) { return W; };
    quasi.f = [source](double x, double t, double u) { return u * u * u - u - source(x, t); };
    quasi.df = [](double, double, double u) { return 3 * u * u - 1; };
    quasi.u0 = init;
    quasi.lambda0 = 1.0;

    const auto a = solve_pde(semi, mesh, grid).trajectory;
    const auto b = solve_quasilinear(quasi, mesh, grid);
    for (std::size_t m = 0; m <= mesh.steps(); ++m) {
        for (std::size_t k = 0; k < grid.interior(); ++k) CHECK(std::abs(a.at(m)[k] - b.trajectory.at(m)[k]) <= 1e-11);
    }
    for (const auto& s : b.steps) CHECK(s.outer_iterations == 1);
}

TEST_CASE("stationary state is preserved") {
    // choose f so that u0 solves the discrete stationary problem exactly
    const SpatialGrid grid(0.0, 1.0, 127);
    const double h = grid.h();
    auto p = problems::fisher_kolmogorov(0.5);
    auto u0 = p.u0;
    auto A = p.A;
    p.f = [=](double x, double, double u) {
        const double q = (A(u0(x + h)) - 2 * A(u0(x)) + A(u0(x - h))) / (h * h);
        return (u - u0(x)) + q;
    };
    p.df = [](double, double, double) { return 1.0; };
    const auto sol = solve_quasilinear(p, TemporalMesh::graded(32, 3.0), grid);
    for (std::size_t m = 0; m <= 32; ++m) {
        for (std::size_t k = 0; k < grid.interior(); ++k) {
            CHECK(std::abs(sol.trajectory.at(m)[k] - u0(grid.x(k))) <= 1e-9);
        }
    }
}

TEST_CASE("Fisher-Kolmogorov step residual") {
    const auto p = problems::fisher_kolmogorov(0.3);
    const auto mesh = TemporalMesh::graded(64, (2.0 - 0.3) / 0.3);
    const SpatialGrid grid = problems::fisher_kolmogorov_grid(255);
    const auto sol = solve_quasilinear(p, mesh, grid);
    for (std::size_t m : {1u, 2u, 30u, 64u}) {
        const auto row = l1_row(mesh, p.alpha, m);
        CHECK(quasilinear_residual(grid, p, row, sol.trajectory.history(m), sol.trajectory.at(m), mesh[m]) <= 1e-9);
        CHECK(sol.steps[m - 1].outer_iterations == 1);
    }
    // the solution stays inside the declared range [0, 1/4]
    for (std::size_t m = 0; m <= 64; ++m)
        for (double v : sol.trajectory.at(m)) CHECK((v >= 0.0 && v <= 0.25));
}

TEST_CASE("fixed point with a convective flux contracts") {
    auto p = problems::fisher_kolmogorov(0.5);
    p.b = [](double, double, double u) { return 0.5 * u * u; };
    p.C_b = 0.25;  // |b_u| = |u| <= 1/4
    const auto mesh = TemporalMesh::graded(16, 3.0);
    const SpatialGrid grid(0.0, 1.0, 63);
    const auto sol = solve_quasilinear(p, mesh, grid);
    for (const auto& s : sol.steps) {
        CHECK(s.outer_iterations >= 2);
        CHECK(s.distances.back() <= 1e-10);
        for (std::size_t k = 1; k < s.distances.size(); ++k) {
            if (s.distances[k - 1] > 1e-13) CHECK(s.distances[k] < s.distances[k - 1]);
        }
    }
    for (std::size_t m : {1u, 16u}) {
        const auto row = l1_row(mesh, p.alpha, m);
        CHECK(quasilinear_residual(grid, p, row, sol.trajectory.history(m), sol.trajectory.at(m), mesh[m]) <= 1e-8);
    }
}

TEST_CASE("step condition with lambda is enforced") {
    auto p = problems::fisher_kolmogorov(0.5);
    p.lambda0 = 100.0;
    CHECK(p.step_lambda() == doctest::Approx(100.25));
    CHECK_THROWS_AS(solve_quasilinear(p, TemporalMesh::graded(2, 1.0), SpatialGrid(0, 1, 7)), SolverError);
}
