#include "fracl1/problems.hpp"

#include <cmath>
#include <numbers>

#include "fracl1/l1.hpp"

namespace fracl1::problems {

using std::numbers::pi;

ScalarProblem test_a(double alpha, double sigma, SchemeKind kind) {
    ScalarProblem p;
    p.alpha = alpha;
    p.scheme = make_scheme(kind, Nonlinearity::zero(), Interval{-0.5, 1.5});
    p.g = [alpha, sigma](double t) { return caputo_power(alpha, sigma, t); };
    p.u0 = 0.0;
    p.T = 1.0;
    p.exact = [sigma](double t) { return std::pow(t, sigma); };
    return p;
}

double test_b_source(double alpha, double sigma, double x, double t) {
    const double phi = x * x / pi;
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    const double ts = std::pow(t, sigma);
    const double u = ts * s;
    const double u_xx = ts * (c * 2.0 / pi - s * 4.0 * x * x / (pi * pi));
    return caputo_power(alpha, sigma, t) * s - u_xx + u * u * u - u;
}

PdeProblem test_b(double alpha, double sigma, SchemeKind kind) {
    PdeProblem p;
    p.alpha = alpha;
    // exact solution takes values in [0, 1]
    p.scheme = make_scheme(kind, Nonlinearity::allen_cahn(), Interval{-0.5, 1.5});
    p.g = [alpha, sigma](double x, double t) { return test_b_source(alpha, sigma, x, t); };
    p.u0 = [](double) { return 0.0; };
    p.T = 1.0;
    p.exact = [sigma](double x, double t) { return std::pow(t, sigma) * std::sin(x * x / pi); };
    return p;
}

SpatialGrid test_b_grid(std::size_t interior) { return SpatialGrid(0.0, pi, interior); }

QuasilinearProblem fisher_kolmogorov(double alpha) {
    QuasilinearProblem p;
    p.alpha = alpha;
    p.a = [](double u) { return 1.0 + u; };
    p.A = [](double u) { return u + 0.5 * u * u; };
    p.A_inv = [](double W) { return 2.0 * W / (1.0 + std::sqrt(1.0 + 2.0 * W)); };
    p.f = [](double, double, double u) { return u * (1.0 - u); };
    p.df = [](double, double, double u) { return 1.0 - 2.0 * u; };
    p.u0 = [](double x) { return x * (1.0 - x); };
    p.T = 1.0;
    // u stays in [0, 1/4]
    p.range = Interval{0.0, 0.25};
    p.c_a = 1.0;
    p.c_a_max = 1.25;
    p.C_a = 1.0;
    p.C_b = 0.0;
    p.C_u = 1.0;
    p.lambda0 = 0.0;
    return p;
}

SpatialGrid fisher_kolmogorov_grid(std::size_t interior) { return SpatialGrid(0.0, 1.0, interior); }

PdeProblem smooth_linear(double alpha) {
    PdeProblem p;
    p.alpha = alpha;
    p.a = [](double x, double) { return 1.0 + x; };
    p.b = [](double, double) { return 1.0; };
    p.c = [](double, double) { return 1.0; };
    p.scheme = make_scheme(SchemeKind::Implicit, Nonlinearity::zero(), Interval{-1.0, 1.0});
    p.g = [alpha](double x, double t) {
        const double s = std::sin(pi * x);
        return caputo_power(alpha, 1.0, t) * s + t * ((1.0 + x) * pi * pi + 1.0) * s;
    };
    p.u0 = [](double) { return 0.0; };
    p.T = 1.0;
    p.exact = [](double x, double t) { return t * std::sin(pi * x); };
    return p;
}

SpatialGrid smooth_linear_grid(std::size_t interior) { return SpatialGrid(0.0, 1.0, interior); }

}  // namespace fracl1::problems
