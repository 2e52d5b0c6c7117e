#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "impact/dominance.hpp"
#include "impact/errors.hpp"
#include "impact/piecewise_linear.hpp"
#include "impact/verdict.hpp"

namespace impact {

enum class GlobalMeasureKind {
    GiniArea,        // integral of I_Z over [0, T]
    CurveLength,     // arclength of the non-normalized Lorenz curve minus T
    PowerIntegral,   // integral of Z^p, p > 1
    TheilGeneralized,
    TheilClassical,
    CVSquared
};

/// Area under the non-normalized Lorenz curve (generalized Gini).
inline double gini_area(const PiecewiseLinear& z) {
    double acc = 0.0;
    for (const auto& s : z.integral().segments()) {
        const double dx = s.x1 - s.x0;
        acc += dx * (s.value0 + dx * (s.slope / 2.0 + dx * s.half_curv / 3.0));
    }
    return acc;
}

namespace detail {

// antiderivative of sqrt(1 + u^2)
inline double arclen_antideriv(double u) {
    return 0.5 * (u * std::sqrt(1.0 + u * u) + std::asinh(u));
}

// antiderivative of u ln u, extended by 0 at u = 0
inline double xlnx_antideriv(double u) {
    if (u <= 0.0) return 0.0;
    return 0.25 * u * u * (2.0 * std::log(u) - 1.0);
}

}  // namespace detail

/// L(Z) = integral of sqrt(1 + Z(s)^2) ds - T, exact per linear segment.
inline double curve_length(const PiecewiseLinear& z) {
    double acc = 0.0;
    const auto& ks = z.knots();
    for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
        const double dx = ks[i + 1].x - ks[i].x;
        const double m = (ks[i + 1].y - ks[i].y) / dx;
        if (m == 0.0)
            acc += dx * std::sqrt(1.0 + ks[i].y * ks[i].y);
        else
            acc += (detail::arclen_antideriv(ks[i + 1].y) - detail::arclen_antideriv(ks[i].y)) / m;
    }
    return acc - z.domain_end();
}

/// integral of Z^p over [0, T], exact per segment for any p > 1.
inline double power_integral(const PiecewiseLinear& z, double p) {
    require(p > 1.0, errc::bad_exponent, "power integral needs p > 1");
    double acc = 0.0;
    const auto& ks = z.knots();
    for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
        const double dx = ks[i + 1].x - ks[i].x;
        const double m = (ks[i + 1].y - ks[i].y) / dx;
        if (m == 0.0)
            acc += dx * std::pow(ks[i].y, p);
        else
            acc += (std::pow(ks[i + 1].y, p + 1.0) - std::pow(ks[i].y, p + 1.0)) / (m * (p + 1.0));
    }
    return acc;
}

/// Th_g(Z) = integral of Z ln(Z), with the 0 * ln 0 = 0 convention.
inline double theil_generalized(const PiecewiseLinear& z) {
    double acc = 0.0;
    const auto& ks = z.knots();
    for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
        const double dx = ks[i + 1].x - ks[i].x;
        const double m = (ks[i + 1].y - ks[i].y) / dx;
        if (m == 0.0)
            acc += ks[i].y > 0.0 ? dx * ks[i].y * std::log(ks[i].y) : 0.0;
        else
            acc += (detail::xlnx_antideriv(ks[i + 1].y) - detail::xlnx_antideriv(ks[i].y)) / m;
    }
    return acc;
}

/// Th(Z) = (1/T) integral of (Z/mu) ln(Z/mu); computed on the rescaled
/// function directly, so the Th_g identity remains a real cross-check.
inline double theil_classical(const PiecewiseLinear& z) {
    const double T = z.domain_end();
    const double mu = z.integral().total() / T;
    require(mu > 0.0, errc::zero_mean, "classical Theil needs a positive mean");
    return theil_generalized(scaled(z, 1.0 / mu)) / T;
}

/// Squared coefficient of variation, sigma^2 / mu^2 with the standard
/// (1/T-normalized) moments.
inline double cv_squared(const PiecewiseLinear& z) {
    const double T = z.domain_end();
    const double mu = z.integral().total() / T;
    require(mu > 0.0, errc::zero_mean, "CV^2 needs a positive mean");
    const double second = power_integral(z, 2.0) / T;
    return (second - mu * mu) / (mu * mu);
}

inline double eval_global(GlobalMeasureKind k, const PiecewiseLinear& z, double p = 2.0) {
    switch (k) {
        case GlobalMeasureKind::GiniArea: return gini_area(z);
        case GlobalMeasureKind::CurveLength: return curve_length(z);
        case GlobalMeasureKind::PowerIntegral: return power_integral(z, p);
        case GlobalMeasureKind::TheilGeneralized: return theil_generalized(z);
        case GlobalMeasureKind::TheilClassical: return theil_classical(z);
        case GlobalMeasureKind::CVSquared: return cv_squared(z);
    }
    fail(errc::internal, "unhandled global measure kind");
}

inline const char* global_measure_name(GlobalMeasureKind k) {
    switch (k) {
        case GlobalMeasureKind::GiniArea: return "gini_area";
        case GlobalMeasureKind::CurveLength: return "curve_length";
        case GlobalMeasureKind::PowerIntegral: return "power_integral";
        case GlobalMeasureKind::TheilGeneralized: return "theil_generalized";
        case GlobalMeasureKind::TheilClassical: return "theil_classical";
        case GlobalMeasureKind::CVSquared: return "cv_squared";
    }
    return "?";
}

/// Checks strict growth of a global measure across verified -<(!=) pairs,
/// including the corollary's equal-mean (pure concentration) split.
inline AxiomVerdict check_global_monotone(GlobalMeasureKind kind,
                                          const std::vector<std::pair<PiecewiseLinear, PiecewiseLinear>>& pairs,
                                          double p = 2.0, double eps = 1e-12) {
    AxiomVerdict v;
    v.axiom = std::string("global_monotone:") + global_measure_name(kind);
    v.outcome = Outcome::holds_on_family;
    int equal_mean = 0;
    for (const auto& [z, y] : pairs) {
        const DominanceVerdict d = dominates_nn(z, y);
        require(d.relation == DomRelation::LessNeq, errc::not_dominated_pair,
                "pair is not strictly dominated");
        const double mz = eval_global(kind, z, p);
        const double my = eval_global(kind, y, p);
        const double t = z.domain_end();
        if (std::abs(z.integral().total() - y.integral().total()) <= eps * (1.0 + t)) ++equal_mean;
        if (!(my > mz + eps)) {
            v.outcome = Outcome::violated;
            Witness w;
            w.description = "m(Z) did not strictly increase";
            w.functions = {z, y};
            w.params["m(Z)"] = mz;
            w.params["m(Y)"] = my;
            v.witnesses.push_back(std::move(w));
        }
    }
    v.notes = std::to_string(pairs.size()) + " dominated pairs, " + std::to_string(equal_mean) +
              " with equal means";
    return v;
}

}  // namespace impact
