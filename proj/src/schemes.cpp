#include "fracl1/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fracl1 {

namespace {

constexpr std::size_t kBoundSamples = 20001;

template <class Fn>
std::pair<double, double> sampled_extrema(const Fn& fn, Interval range) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < kBoundSamples; ++i) {
        const double u = range.lo + range.diameter() * static_cast<double>(i) / (kBoundSamples - 1);
        const double v = fn(u);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

std::size_t grid_side(std::size_t n_samples) {
    return std::max<std::size_t>(2, static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n_samples)))));
}

double grid_point(Interval range, std::size_t i, std::size_t n) {
    return range.lo + range.diameter() * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

Nonlinearity Nonlinearity::zero() {
    Nonlinearity nl;
    nl.name = "zero";
    nl.f = [](double) { return 0.0; };
    nl.df = [](double) { return 0.0; };
    nl.d2f = [](double) { return 0.0; };
    nl.implicit_part = nl.f;
    nl.implicit_part_df = nl.df;
    nl.explicit_part = nl.f;
    nl.explicit_part_df = nl.df;
    nl.bounds = [](Interval) { return DerivativeBounds{0.0, 0.0, 0.0}; };
    return nl;
}

Nonlinearity Nonlinearity::allen_cahn() {
    Nonlinearity nl;
    nl.name = "allen-cahn";
    nl.f = [](double u) { return u * u * u - u; };
    nl.df = [](double u) { return 3.0 * u * u - 1.0; };
    nl.d2f = [](double u) { return 6.0 * u; };
    nl.implicit_part = [](double u) { return u * u * u; };
    nl.implicit_part_df = [](double u) { return 3.0 * u * u; };
    nl.explicit_part = [](double u) { return -u; };
    nl.explicit_part_df = [](double) { return -1.0; };
    nl.bounds = [](Interval r) {
        const double max_sq = std::max(r.lo * r.lo, r.hi * r.hi);
        const double min_sq = (r.lo <= 0.0 && r.hi >= 0.0) ? 0.0 : std::min(r.lo * r.lo, r.hi * r.hi);
        return DerivativeBounds{3.0 * min_sq - 1.0, 3.0 * max_sq - 1.0,
                                6.0 * std::max(std::abs(r.lo), std::abs(r.hi))};
    };
    return nl;
}

Nonlinearity Nonlinearity::linear(double k) {
    Nonlinearity nl;
    nl.name = "linear";
    nl.f = [k](double u) { return k * u; };
    nl.df = [k](double) { return k; };
    nl.d2f = [](double) { return 0.0; };
    nl.bounds = [k](Interval) { return DerivativeBounds{k, k, 0.0}; };
    return nl;
}

Nonlinearity Nonlinearity::cubic() {
    Nonlinearity nl;
    nl.name = "cubic";
    nl.f = [](double u) { return u * u * u; };
    nl.df = [](double u) { return 3.0 * u * u; };
    nl.d2f = [](double u) { return 6.0 * u; };
    nl.bounds = [](Interval r) {
        const double max_sq = std::max(r.lo * r.lo, r.hi * r.hi);
        const double min_sq = (r.lo <= 0.0 && r.hi >= 0.0) ? 0.0 : std::min(r.lo * r.lo, r.hi * r.hi);
        return DerivativeBounds{3.0 * min_sq, 3.0 * max_sq, 6.0 * std::max(std::abs(r.lo), std::abs(r.hi))};
    };
    return nl;
}

DerivativeBounds derivative_bounds(const Nonlinearity& nl, Interval range) {
    if (nl.bounds) return nl.bounds(range);
    if (!nl.df) throw std::invalid_argument("derivative_bounds: nonlinearity '" + nl.name + "' has no f'");
    const auto [lo, hi] = sampled_extrema(nl.df, range);
    double d2 = 0.0;
    if (nl.d2f) {
        const auto [l2, h2] = sampled_extrema(nl.d2f, range);
        d2 = std::max(std::abs(l2), std::abs(h2));
    }
    return {lo, hi, d2};
}

std::string_view to_string(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::Implicit: return "implicit";
        case SchemeKind::ConvexSplitting: return "convex-splitting";
        case SchemeKind::IMEX1: return "imex1";
        case SchemeKind::IMEX2Newton: return "imex2";
        case SchemeKind::StabilizedIMEX: return "stabilized";
    }
    return "unknown";
}

SchemeKind parse_scheme_kind(std::string_view name) {
    for (auto k : {SchemeKind::Implicit, SchemeKind::ConvexSplitting, SchemeKind::IMEX1,
                   SchemeKind::IMEX2Newton, SchemeKind::StabilizedIMEX}) {
        if (to_string(k) == name) return k;
    }
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

SchemeDescriptor make_scheme(SchemeKind kind, Nonlinearity nl, Interval range, std::optional<double> S) {
    if (!(range.hi >= range.lo) || !std::isfinite(range.lo) || !std::isfinite(range.hi)) {
        throw std::invalid_argument("make_scheme: solution range must be bounded");
    }
    if (!nl.f) throw std::invalid_argument("make_scheme: nonlinearity has no f");

    SchemeDescriptor s;
    s.kind = kind;
    s.range = range;

    switch (kind) {
        case SchemeKind::Implicit: {
            const auto b = derivative_bounds(nl, range);
            // no consistency error, so the q = 2 (sharper) error bound applies
            s.q = 2;
            s.L = 0.0;
            s.lambda0 = std::max(0.0, -b.min_df);
            s.lambda1 = 0.0;
            break;
        }
        case SchemeKind::ConvexSplitting: {
            if (!nl.implicit_part || !nl.explicit_part || !nl.implicit_part_df || !nl.explicit_part_df) {
                throw std::invalid_argument("convex-splitting needs an implicit/explicit split of f");
            }
            const auto [ilo, ihi] = sampled_extrema(nl.implicit_part_df, range);
            const auto [elo, ehi] = sampled_extrema(nl.explicit_part_df, range);
            const double e_lip = std::max(std::abs(elo), std::abs(ehi));
            (void)ihi;
            s.q = 1;
            s.L = e_lip;
            s.lambda0 = std::max(0.0, -ilo);
            s.lambda1 = e_lip;
            break;
        }
        case SchemeKind::IMEX1: {
            const auto b = derivative_bounds(nl, range);
            const double lip = std::max(std::abs(b.min_df), std::abs(b.max_df));
            s.q = 1;
            s.L = lip;
            s.lambda0 = 0.0;
            s.lambda1 = lip;
            break;
        }
        case SchemeKind::IMEX2Newton: {
            if (!nl.df || !nl.d2f) throw std::invalid_argument("imex2 needs f' and f''");
            const auto b = derivative_bounds(nl, range);
            const double lip = std::max(std::abs(b.min_df), std::abs(b.max_df));
            s.q = 2;
            s.L = 0.5 * b.max_abs_d2f;
            s.lambda0 = std::max(0.0, -b.min_df);
            s.lambda1 = 2.0 * lip + 2.0 * s.L * range.diameter();
            break;
        }
        case SchemeKind::StabilizedIMEX: {
            const auto b = derivative_bounds(nl, range);
            const double stab = S.value_or(std::max(std::abs(b.min_df), std::abs(b.max_df)));
            if (!(stab >= 0.0)) throw std::invalid_argument("stabilized: S must be >= 0");
            // F - f(v) = (S - f'(xi)) (v - w) and dF/dw = f'(w) - S
            const double lip = std::max(std::abs(stab - b.min_df), std::abs(b.max_df - stab));
            s.S = stab;
            s.q = 1;
            s.L = lip;
            s.lambda0 = 0.0;
            s.lambda1 = lip;
            break;
        }
    }
    s.nl = std::move(nl);
    return s;
}

double eval_F(const SchemeDescriptor& s, double v, double w) {
    switch (s.kind) {
        case SchemeKind::Implicit: return s.nl.f(v);
        case SchemeKind::ConvexSplitting: return s.nl.implicit_part(v) + s.nl.explicit_part(w);
        case SchemeKind::IMEX1: return s.nl.f(w);
        case SchemeKind::IMEX2Newton:
            if (!s.nl.df) throw std::invalid_argument("imex2 needs f'");
            return s.nl.f(w) + (v - w) * s.nl.df(w);
        case SchemeKind::StabilizedIMEX: return s.nl.f(w) + s.S * (v - w);
    }
    return 0.0;
}

double eval_dF_dv(const SchemeDescriptor& s, double v, double w) {
    switch (s.kind) {
        case SchemeKind::Implicit:
            if (!s.nl.df) throw std::invalid_argument("implicit Newton solve needs f'");
            return s.nl.df(v);
        case SchemeKind::ConvexSplitting: return s.nl.implicit_part_df(v);
        case SchemeKind::IMEX1: return 0.0;
        case SchemeKind::IMEX2Newton: return s.nl.df(w);
        case SchemeKind::StabilizedIMEX: return s.S;
    }
    return 0.0;
}

double check_A1(const SchemeDescriptor& s, Interval range, std::size_t n_samples) {
    const std::size_t n = grid_side(n_samples);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = grid_point(range, i, n);
        const double fv = s.nl.f(v);
        for (std::size_t k = 0; k < n; ++k) {
            const double w = grid_point(range, k, n);
            if (v == w) continue;
            const double gap = std::pow(std::abs(v - w), s.q);
            worst = std::max(worst, std::abs(eval_F(s, v, w) - fv) / gap);
        }
    }
    return worst;
}

A2Sample check_A2(const SchemeDescriptor& s, Interval range, std::size_t n_samples) {
    const std::size_t n = grid_side(n_samples);
    A2Sample out{std::numeric_limits<double>::infinity(), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double w = grid_point(range, i, n);
        for (std::size_t k = 1; k < n; ++k) {
            const double v0 = grid_point(range, k - 1, n);
            const double v1 = grid_point(range, k, n);
            out.min_slope_v = std::min(out.min_slope_v, (eval_F(s, v1, w) - eval_F(s, v0, w)) / (v1 - v0));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double v = grid_point(range, i, n);
        for (std::size_t k = 1; k < n; ++k) {
            const double w0 = grid_point(range, k - 1, n);
            const double w1 = grid_point(range, k, n);
            out.max_lipschitz_w =
                std::max(out.max_lipschitz_w, std::abs(eval_F(s, v, w1) - eval_F(s, v, w0)) / (w1 - w0));
        }
    }
    return out;
}

}  // namespace fracl1
