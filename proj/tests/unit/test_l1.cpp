#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fracl1/l1.hpp"
#include "oracles.hpp"

using fracl1::TemporalMesh;

namespace {

std::vector<double> sample(const TemporalMesh& mesh, std::size_t m, double (*u)(double)) {
    std::vector<double> v(m + 1);
    for (std::size_t j = 0; j <= m; ++j) v[j] = u(mesh[j]);
    return v;
}

}  // namespace

TEST_CASE("kappa_mm on a unit step equals 1/Gamma(3/2)") {
    const auto row = fracl1::l1_row(TemporalMesh::graded(1, 1.0), 0.5, 1);
    CHECK(row.kappa_mm == doctest::Approx(2.0 / std::sqrt(std::numbers::pi)).epsilon(1e-15));
    CHECK(row.kappa_mm == doctest::Approx(1.12837917).epsilon(1e-8));
}

TEST_CASE("two-step uniform row: closed form against quadrature") {
    const auto mesh = TemporalMesh::graded(2, 1.0);  // tau = 0.5
    const auto row = fracl1::l1_row(mesh, 0.5, 2);
    REQUIRE(row.kappa.size() == 2);
    CHECK(std::abs(row.kappa_mm - (row.kappa[0] + row.kappa[1])) <= 1e-13 * row.kappa_mm);
    // kappa_{2,0} is the mean of the kernel over the first interval
    const double mean0 = oracle::tanh_sinh([](double, double from_lo, double) { return std::pow(0.5 + from_lo, -0.5); },
                                           0.5, 1.0) /
                         0.5 / std::tgamma(0.5);
    CHECK(row.kappa[0] == doctest::Approx(mean0).epsilon(1e-12));
}

TEST_CASE("constant history is annihilated") {
    for (double r : {1.0, 2.0, 5.0}) {
        const auto mesh = TemporalMesh::graded(64, r);
        for (std::size_t m : {1u, 7u, 64u}) {
            const auto row = fracl1::l1_row(mesh, 0.3, m);
            std::vector<double> v(m + 1, -3.25);
            CHECK(std::abs(fracl1::apply_l1(row, v)) <= 1e-12 * 3.25 * row.kappa_mm);
        }
    }
}

TEST_CASE("linear data reproduce the Caputo derivative of t") {
    const auto mesh = TemporalMesh::graded(40, 2.5);
    for (double alpha : {0.1, 0.5, 0.9}) {
        for (std::size_t m = 1; m <= 40; ++m) {
            const auto v = sample(mesh, m, [](double t) { return t; });
            const double exact = std::pow(mesh[m], 1.0 - alpha) / std::tgamma(2.0 - alpha);
            CHECK(fracl1::apply_l1(fracl1::l1_row(mesh, alpha, m), v) == doctest::Approx(exact).epsilon(1e-12));
        }
    }
}

TEST_CASE("zero history gives zero") {
    const auto mesh = TemporalMesh::graded(10, 2.0);
    const auto row = fracl1::l1_row(mesh, 0.4, 10);
    CHECK(fracl1::apply_l1(row, std::vector<double>(11, 0.0)) == 0.0);
}

TEST_CASE("t^2 on a uniform four-step mesh matches quadrature") {
    const auto mesh = TemporalMesh::graded(4, 1.0);
    for (std::size_t m = 1; m <= 4; ++m) {
        const auto v = sample(mesh, m, [](double t) { return t * t; });
        const double ref = oracle::l1_by_quadrature(mesh.points(), 0.3, m, v);
        CHECK(std::abs(fracl1::apply_l1(fracl1::l1_row(mesh, 0.3, m), v) - ref) <= 1e-10);
    }
}

TEST_CASE("random piecewise-linear histories agree with quadrature on small meshes") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t M = 1 + static_cast<std::size_t>(unit(rng) * 32.0) % 32;
        const auto mesh = TemporalMesh::graded(M, 1.0 + 4.0 * unit(rng), 0.5 + unit(rng));
        const double alpha = 0.05 + 0.9 * unit(rng);
        const std::size_t m = 1 + static_cast<std::size_t>(unit(rng) * M) % M;
        std::vector<double> v(m + 1);
        for (double& x : v) x = 2.0 * unit(rng) - 1.0;
        const double ref = oracle::l1_by_quadrature(mesh.points(), alpha, m, v);
        const double got = fracl1::apply_l1(fracl1::l1_row(mesh, alpha, m), v);
        // relative to the same integral of |(V^I)'|, which is never close to zero
        std::vector<double> total(m + 1, 0.0);
        for (std::size_t j = 1; j <= m; ++j) total[j] = total[j - 1] + std::abs(v[j] - v[j - 1]);
        const double scale = oracle::l1_by_quadrature(mesh.points(), alpha, m, total);
        worst = std::max(worst, std::abs(got - ref) / scale);
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("coefficient form agrees with the difference-quotient form") {
    const auto mesh = TemporalMesh::graded(200, 3.0);
    std::vector<double> v(201);
    for (std::size_t j = 0; j <= 200; ++j) v[j] = std::sin(3.0 * mesh[j]) + std::pow(mesh[j], 0.4);
    for (std::size_t m : {1u, 2u, 50u, 200u}) {
        const std::span<const double> h(v.data(), m + 1);
        const double a = fracl1::apply_l1(fracl1::l1_row(mesh, 0.6, m), h);
        const double b = fracl1::apply_l1_direct(mesh, 0.6, m, h);
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("coefficients stay positive on strongly graded meshes") {
    for (std::size_t M : {256u, 4096u}) {
        const auto mesh = TemporalMesh::graded(M, 5.0);
        for (std::size_t m : {std::size_t{2}, M / 2, M}) {
            const auto row = fracl1::l1_row(mesh, 0.7, m);
            double sum = 0.0;
            for (double k : row.kappa) {
                CHECK(k > 0.0);
                sum += k;
            }
            CHECK(std::abs(sum - row.kappa_mm) <= 1e-12 * row.kappa_mm);
        }
    }
}

TEST_CASE("cache rows equal on-demand rows") {
    const auto mesh = TemporalMesh::graded(30, 2.0);
    const fracl1::L1Cache cache(mesh, 0.45);
    REQUIRE(cache.steps() == 30);
    for (std::size_t m = 1; m <= 30; ++m) {
        const auto row = fracl1::l1_row(mesh, 0.45, m);
        CHECK(cache.row(m).kappa_mm == row.kappa_mm);
        CHECK(cache.row(m).kappa == row.kappa);
    }
}

TEST_CASE("argument validation") {
    const auto mesh = TemporalMesh::graded(4, 1.0);
    CHECK_THROWS_AS(fracl1::l1_row(mesh, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(fracl1::l1_row(mesh, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(fracl1::l1_row(mesh, 0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(fracl1::l1_row(mesh, 0.5, 5), std::invalid_argument);
    const auto row = fracl1::l1_row(mesh, 0.5, 3);
    CHECK_THROWS_AS(fracl1::apply_l1(row, std::vector<double>(3, 0.0)), std::invalid_argument);
}

TEST_CASE("Caputo derivative of powers") {
    CHECK(fracl1::caputo_power(0.4, 0.8, 1.0) == doctest::Approx(std::tgamma(1.8) / std::tgamma(1.4)).epsilon(1e-14));
    CHECK(fracl1::caputo_power(0.4, 0.8, 1.0) == doctest::Approx(1.04973).epsilon(1e-5));
    CHECK(fracl1::caputo_power(0.3, 1.0, 0.7) ==
          doctest::Approx(std::pow(0.7, 0.7) / std::tgamma(1.7)).epsilon(1e-14));
    CHECK(fracl1::caputo_power(0.3, 0.8, 0.0) == 0.0);
    CHECK_THROWS_AS(fracl1::caputo_power(0.3, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("truncation profile") {
    SUBCASE("vanishes for linear u") {
        for (const auto& p : fracl1::truncation_profile(TemporalMesh::graded(128, 3.0), 0.6, 1.0)) {
            CHECK(std::abs(p.residual) <= 1e-12);
        }
    }
    SUBCASE("bound at m = 1 is tau^(sigma - alpha)") {
        const auto mesh = TemporalMesh::graded(64, 2.0);
        const auto prof = fracl1::truncation_profile(mesh, 0.4, 0.8);
        CHECK(prof.front().bound == doctest::Approx(std::pow(mesh.first_step(), 0.4)).epsilon(1e-14));
        // at m = 1 the ratio is a pure function of alpha and sigma
        const double c = std::abs(1.0 / std::tgamma(1.6) - std::tgamma(1.8) / std::tgamma(1.4));
        CHECK(prof.front().ratio == doctest::Approx(c).epsilon(1e-10));
    }
    SUBCASE("sup ratio is stable across refinement") {
        double lo = 1e300, hi = 0.0;
        for (std::size_t M : {256u, 1024u, 4096u}) {
            double best = 0.0;
            for (const auto& p : fracl1::truncation_profile(TemporalMesh::graded(M, 2.0), 0.4, 0.8)) {
                best = std::max(best, p.ratio);
            }
            lo = std::min(lo, best);
            hi = std::max(hi, best);
        }
        CHECK(hi / lo < 1.5);
    }
}

TEST_CASE("truncation exponent") {
    CHECK(fracl1::truncation_gamma(0.4, 0.8, 2.0) == doctest::Approx(-0.6));
    CHECK(fracl1::truncation_gamma(0.4, 0.4, 1.0) == doctest::Approx(0.4));
    CHECK(fracl1::truncation_gamma(0.4, 0.8, 1.0) == doctest::Approx(0.2));
}

TEST_CASE("gamma backend is reported") { CHECK_FALSE(fracl1::gamma_backend().empty()); }
