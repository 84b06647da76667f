#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace fracl1 {

using ScalarFn = std::function<double(double)>;

/// Closed interval used as the declared solution range.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double diameter() const { return hi - lo; }
};

/// Extrema of f' and |f''| over an interval.
struct DerivativeBounds {
    double min_df;
    double max_df;
    double max_abs_d2f;
};

/**
 * Scalar nonlinearity f(u) with optional derivatives.
 *
 * A convex/concave split f = implicit_part + explicit_part enables the
 * convex-splitting discretisation. `bounds` may supply exact derivative
 * extrema; otherwise they are sampled.
 */
struct Nonlinearity {
    std::string name;
    ScalarFn f;
    ScalarFn df;
    ScalarFn d2f;
    ScalarFn implicit_part;
    ScalarFn implicit_part_df;
    ScalarFn explicit_part;
    ScalarFn explicit_part_df;
    std::function<DerivativeBounds(Interval)> bounds;

    static Nonlinearity zero();
    /// f(u) = u^3 - u
    static Nonlinearity allen_cahn();
    /// f(u) = k u
    static Nonlinearity linear(double k);
    /// f(u) = u^3
    static Nonlinearity cubic();
};

/// Derivative extrema over `range`; exact when `nl.bounds` is set, otherwise a
/// dense sample (20001 points) of f' and f''.
DerivativeBounds derivative_bounds(const Nonlinearity& nl, Interval range);

enum class SchemeKind { Implicit, ConvexSplitting, IMEX1, IMEX2Newton, StabilizedIMEX };

std::string_view to_string(SchemeKind kind);
/// Accepts "implicit" | "convex-splitting" | "imex1" | "imex2" | "stabilized".
SchemeKind parse_scheme_kind(std::string_view name);

/**
 * A discretisation F(v, w) of f(u), with v standing for U^m and w for U^{m-1}.
 *
 *   Implicit         F = f(v)
 *   ConvexSplitting  F = f_impl(v) + f_expl(w)      (v^3 - w for Allen-Cahn)
 *   IMEX1            F = f(w)
 *   IMEX2Newton      F = f(w) + (v - w) f'(w)
 *   StabilizedIMEX   F = f(w) + S (v - w)
 *
 * q, L are the consistency constants (|F(v,w) - f(v)| <= L |v-w|^q);
 * lambda0, lambda1 the one-sided Lipschitz constants in v and the Lipschitz
 * constant in w, all on the declared range.
 */
struct SchemeDescriptor {
    SchemeKind kind = SchemeKind::Implicit;
    Nonlinearity nl;
    Interval range;
    int q = 1;
    double L = 0.0;
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    double S = 0.0;

    /// F(v,w) = F(0,w) + v * dF_dv(w) for these kinds.
    bool linear_in_v() const {
        return kind == SchemeKind::IMEX1 || kind == SchemeKind::IMEX2Newton ||
               kind == SchemeKind::StabilizedIMEX;
    }
};

/// Builds a descriptor and computes (q, L, lambda0, lambda1) over `range`.
/// `S` is only used by StabilizedIMEX; default is sup|f'| over the range.
/// Throws std::invalid_argument if the kind needs a derivative or split that `nl` lacks.
SchemeDescriptor make_scheme(SchemeKind kind, Nonlinearity nl, Interval range,
                             std::optional<double> S = std::nullopt);

double eval_F(const SchemeDescriptor& scheme, double v, double w);
/// Partial derivative of F in v.
double eval_dF_dv(const SchemeDescriptor& scheme, double v, double w);

/// max |F(v,w) - f(v)| / |v-w|^q over a square sample grid of about `n_samples`
/// (v,w) pairs on `range`, skipping v == w.
double check_A1(const SchemeDescriptor& scheme, Interval range, std::size_t n_samples);

struct A2Sample {
    double min_slope_v;    // min over samples of (F(v2,w)-F(v1,w))/(v2-v1)
    double max_lipschitz_w;  // max over samples of |F(v,w2)-F(v,w1)|/|w2-w1|
};

/// Finite-difference proxies for the A2 constants over a square grid of about
/// `n_samples` points.
A2Sample check_A2(const SchemeDescriptor& scheme, Interval range, std::size_t n_samples);

}  // namespace fracl1
