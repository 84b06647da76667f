#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "fracl1/schemes.hpp"

using namespace fracl1;

namespace {

const Interval kRange{-1.5, 1.5};

SchemeDescriptor ac(SchemeKind kind, Interval range = kRange) { return make_scheme(kind, Nonlinearity::allen_cahn(), range); }

}  // namespace

TEST_CASE("F evaluation for each kind") {
    CHECK(eval_F(ac(SchemeKind::IMEX2Newton), 0.5, 0.5) == doctest::Approx(-0.375));
    CHECK(eval_F(ac(SchemeKind::ConvexSplitting), 1.0, 1.0) == 0.0);
    CHECK(eval_F(ac(SchemeKind::IMEX1), 2.0, 0.5) == doctest::Approx(-0.375));
    CHECK(eval_F(ac(SchemeKind::IMEX1), -7.0, 0.5) == doctest::Approx(-0.375));
    CHECK(eval_F(ac(SchemeKind::Implicit), 2.0, 0.5) == doctest::Approx(6.0));
    CHECK(eval_F(ac(SchemeKind::ConvexSplitting), 2.0, 0.5) == doctest::Approx(7.5));
    const auto st = make_scheme(SchemeKind::StabilizedIMEX, Nonlinearity::allen_cahn(), kRange, 3.0);
    CHECK(eval_F(st, 1.0, 0.5) == doctest::Approx(-0.375 + 1.5));
    // IMEX2: f(w) + (v - w) f'(w) with f'(0.5) = -0.25
    CHECK(eval_F(ac(SchemeKind::IMEX2Newton), 1.0, 0.5) == doctest::Approx(-0.375 - 0.125));
}

TEST_CASE("dF/dv matches a finite difference") {
    for (SchemeKind k : {SchemeKind::Implicit, SchemeKind::ConvexSplitting, SchemeKind::IMEX1, SchemeKind::IMEX2Newton,
                         SchemeKind::StabilizedIMEX}) {
        const auto s = ac(k);
        for (double v : {-1.2, 0.1, 0.9}) {
            const double h = 1e-6;
            const double fd = (eval_F(s, v + h, 0.3) - eval_F(s, v - h, 0.3)) / (2 * h);
            CHECK(eval_dF_dv(s, v, 0.3) == doctest::Approx(fd).epsilon(1e-7));
        }
    }
}

TEST_CASE("declared constants for Allen-Cahn on [-1.5, 1.5]") {
    const auto im = ac(SchemeKind::Implicit);
    CHECK(im.L == 0.0);
    CHECK(im.lambda1 == 0.0);
    CHECK(im.lambda0 == doctest::Approx(1.0));
    CHECK(im.q == 2);

    const auto cs = ac(SchemeKind::ConvexSplitting);
    CHECK(cs.q == 1);
    CHECK(cs.L == doctest::Approx(1.0));
    CHECK(cs.lambda0 == 0.0);
    CHECK(cs.lambda1 == doctest::Approx(1.0));

    const auto e1 = ac(SchemeKind::IMEX1);
    CHECK(e1.q == 1);
    CHECK(e1.L == doctest::Approx(5.75));
    CHECK(e1.lambda0 == 0.0);
    CHECK(e1.lambda1 == doctest::Approx(5.75));

    const auto e2 = ac(SchemeKind::IMEX2Newton);
    CHECK(e2.q == 2);
    CHECK(e2.L == doctest::Approx(4.5));
    CHECK(e2.lambda0 == doctest::Approx(1.0));
    CHECK(e2.lambda1 == doctest::Approx(2 * 5.75 + 2 * 4.5 * 3.0));

    const auto st = ac(SchemeKind::StabilizedIMEX);
    CHECK(st.S == doctest::Approx(5.75));
    CHECK(st.lambda0 == 0.0);
}

TEST_CASE("A1 samples") {
    CHECK(check_A1(ac(SchemeKind::Implicit), kRange, 10000) == 0.0);
    const Interval unit{-1.0, 1.0};
    CHECK(check_A1(ac(SchemeKind::ConvexSplitting, unit), unit, 10000) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(check_A1(ac(SchemeKind::IMEX2Newton, unit), unit, 10000) <= 3.0);
}

TEST_CASE("A2 samples") {
    const A2Sample im = check_A2(ac(SchemeKind::Implicit), kRange, 10000);
    CHECK(-im.min_slope_v <= 1.0 + 1e-9);
    CHECK(-im.min_slope_v >= 0.99);
    const A2Sample e1 = check_A2(ac(SchemeKind::IMEX1), kRange, 10000);
    CHECK(e1.min_slope_v == 0.0);
    const A2Sample cs = check_A2(ac(SchemeKind::ConvexSplitting), kRange, 10000);
    CHECK(cs.max_lipschitz_w == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sampled constants never exceed the declared ones") {
    for (SchemeKind k : {SchemeKind::Implicit, SchemeKind::ConvexSplitting, SchemeKind::IMEX1, SchemeKind::IMEX2Newton,
                         SchemeKind::StabilizedIMEX}) {
        for (Interval r : {kRange, Interval{-0.5, 1.5}, Interval{0.0, 1.0}}) {
            const auto s = ac(k, r);
            const A2Sample a2 = check_A2(s, r, 10000);
            CHECK(check_A1(s, r, 10000) <= s.L * (1 + 1e-9) + 1e-12);
            CHECK(a2.min_slope_v + s.lambda0 >= -1e-9);
            CHECK(a2.max_lipschitz_w <= s.lambda1 * (1 + 1e-6) + 1e-12);
        }
    }
}

TEST_CASE("sampled derivative bounds for a user nonlinearity") {
    Nonlinearity nl;
    nl.name = "sine";
    nl.f = [](double u) { return std::sin(u); };
    nl.df = [](double u) { return std::cos(u); };
    nl.d2f = [](double u) { return -std::sin(u); };
    const auto b = derivative_bounds(nl, Interval{0.0, 3.0});
    CHECK(b.max_df == doctest::Approx(1.0));
    CHECK(b.min_df == doctest::Approx(std::cos(3.0)).epsilon(1e-6));
    CHECK(b.max_abs_d2f == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(make_scheme(SchemeKind::ConvexSplitting, nl, Interval{0.0, 3.0}), std::invalid_argument);
}

TEST_CASE("scheme names round-trip") {
    for (const char* n : {"implicit", "convex-splitting", "imex1", "imex2", "stabilized"}) {
        CHECK(to_string(parse_scheme_kind(n)) == n);
    }
    CHECK_THROWS_AS(parse_scheme_kind("rk4"), std::invalid_argument);
}
