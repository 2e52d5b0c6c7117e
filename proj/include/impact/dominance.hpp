#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "impact/errors.hpp"
#include "impact/measures.hpp"
#include "impact/piecewise_linear.hpp"

namespace impact {

// ---------------------------------------------------------------------------
// Non-normalized dominance
// ---------------------------------------------------------------------------

enum class DomRelation {
    Equal,         // identical functions
    Less,          // I_Z <= I_Y certified, strict difference below the guard band
    LessNeq,       // I_Z <= I_Y everywhere and Z != Y certified
    Greater,
    GreaterNeq,
    Incomparable,  // both signs witnessed
    Undetermined   // an extremum of I_Y - I_Z sits inside the epsilon band
};

inline const char* dom_relation_name(DomRelation r) {
    switch (r) {
        case DomRelation::Equal: return "Equal";
        case DomRelation::Less: return "Less";
        case DomRelation::LessNeq: return "LessNeq";
        case DomRelation::Greater: return "Greater";
        case DomRelation::GreaterNeq: return "GreaterNeq";
        case DomRelation::Incomparable: return "Incomparable";
        case DomRelation::Undetermined: return "Undetermined";
    }
    return "?";
}

struct DominancePoint {
    double x = 0.0;
    double iz = 0.0;
    double iy = 0.0;
};

struct DominanceVerdict {
    DomRelation relation = DomRelation::Undetermined;
    std::vector<DominancePoint> witnesses;  // argmin / argmax of I_Y - I_Z
    double min_gap = 0.0;                   // global min of I_Y - I_Z
    double max_gap = 0.0;                   // global max of I_Y - I_Z
};

namespace detail {

struct GapExtrema {
    double min = 0.0, max = 0.0;
    double argmin = 0.0, argmax = 0.0;
    bool identical = true;
};

/// Exact extrema of D = I_Y - I_Z over [0, T]: D is quadratic on each merged
/// segment, so only endpoints and interior stationary points matter.
inline GapExtrema gap_extrema(const PiecewiseLinear& z, const PiecewiseLinear& y) {
    const std::vector<double> xs = merged_positions(z, y);
    GapExtrema g;
    double d = 0.0;  // D at the running position, accumulated exactly per segment
    g.min = g.max = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double u = xs[i], v = xs[i + 1];
        const double zu = z(u), zv = z(v), yu = y(u), yv = y(v);
        if (zu != yu || zv != yv) g.identical = false;
        const double len = v - u;
        const double s0 = yu - zu;                       // D'(u)
        const double curv = ((yv - yu) - (zv - zu)) / len;  // D'' on the segment
        const auto consider = [&](double t) {
            const double val = d + t * (s0 + 0.5 * curv * t);
            if (val < g.min) { g.min = val; g.argmin = u + t; }
            if (val > g.max) { g.max = val; g.argmax = u + t; }
        };
        if (curv != 0.0) {
            const double t_star = -s0 / curv;
            if (t_star > 0.0 && t_star < len) consider(t_star);
        }
        consider(len);
        d += len * (s0 + 0.5 * curv * len);
    }
    return g;
}

}  // namespace detail

/// The non-normalized dominance order: Z -< Y iff I_Z <= I_Y on [0, T].
/// Verdicts come from exact sign analysis of the piecewise-quadratic
/// difference; extrema inside the epsilon band yield Undetermined.
inline DominanceVerdict dominates_nn(const PiecewiseLinear& z, const PiecewiseLinear& y,
                                     double eps = 1e-12) {
    detail::require_same_domain(z, y);
    const detail::GapExtrema g = detail::gap_extrema(z, y);
    DominanceVerdict v;
    v.min_gap = g.min;
    v.max_gap = g.max;
    const IntegralCurve iz = z.integral(), iy = y.integral();
    v.witnesses.push_back({g.argmin, iz(g.argmin), iy(g.argmin)});
    v.witnesses.push_back({g.argmax, iz(g.argmax), iy(g.argmax)});

    if (g.identical) {
        v.relation = DomRelation::Equal;
        return v;
    }
    const bool neg_clean = g.min < -eps;   // strictly below somewhere
    const bool pos_clean = g.max > eps;    // strictly above somewhere
    const bool neg_free = g.min >= 0.0;    // certified never below
    const bool pos_free = g.max <= 0.0;    // certified never above
    if (neg_clean && pos_clean)
        v.relation = DomRelation::Incomparable;
    else if (neg_free && pos_clean)
        v.relation = DomRelation::LessNeq;
    else if (pos_free && neg_clean)
        v.relation = DomRelation::GreaterNeq;
    else if (neg_free && !pos_clean)
        v.relation = DomRelation::Less;   // dominated, difference below the band
    else if (pos_free && !neg_clean)
        v.relation = DomRelation::Greater;
    else
        v.relation = DomRelation::Undetermined;  // an extremum inside (-eps, 0) or (0, eps)
    return v;
}

/// Classical Lorenz dominance: compare after normalizing both totals to 1.
inline DominanceVerdict dominates_lorenz(const PiecewiseLinear& z, const PiecewiseLinear& y,
                                         double eps = 1e-12) {
    detail::require_same_domain(z, y);
    const double tz = z.integral().total();
    const double ty = y.integral().total();
    require(tz > 0.0 && ty > 0.0, errc::zero_total, "Lorenz dominance needs positive totals");
    return dominates_nn(scaled(z, 1.0 / tz), scaled(y, 1.0 / ty), eps);
}

/// n + 1 points of the normalized concave Lorenz curve of Z.
inline std::vector<std::pair<double, double>> lorenz_points(const PiecewiseLinear& z, int n) {
    require(n >= 2, errc::out_of_domain, "need at least two panels");
    const IntegralCurve iz = z.integral();
    require(iz.total() > 0.0, errc::zero_total, "Lorenz curve of the zero function");
    const double T = z.domain_end();
    std::vector<std::pair<double, double>> pts;
    pts.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double f = static_cast<double>(i) / n;
        pts.emplace_back(f, iz(std::min(f * T, T)) / iz.total());
    }
    pts.front() = {0.0, 0.0};
    pts.back() = {1.0, 1.0};
    return pts;
}

// ---------------------------------------------------------------------------
// Transitions (FNT analysis)
// ---------------------------------------------------------------------------

struct Transition {
    double t = 0.0;
    int kind = 0;  // Definition-3 cases (i)..(v) as 1..5
};

struct TransitionReport {
    std::vector<Transition> transitions;
    double x1 = 0.0;   // first transition point; T when the functions are never equal
    bool fnt = true;   // always true for piecewise-linear pairs
};

namespace detail {

/// Maximal intervals where Z - Y vanishes, computed exactly from the merged
/// linear segments; isolated zeros appear as degenerate intervals.
inline std::vector<std::pair<double, double>> zero_intervals(const PiecewiseLinear& z,
                                                             const PiecewiseLinear& y,
                                                             double tol) {
    const std::vector<double> xs = merged_positions(z, y);
    std::vector<std::pair<double, double>> iv;
    const auto push = [&](double a, double b) {
        if (!iv.empty() && iv.back().second >= a) iv.back().second = b;
        else iv.emplace_back(a, b);
    };
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double u = xs[i], v = xs[i + 1];
        double du = z(u) - y(u), dv = z(v) - y(v);
        if (std::abs(du) <= tol) du = 0.0;
        if (std::abs(dv) <= tol) dv = 0.0;
        if (du == 0.0 && dv == 0.0) push(u, v);
        else if (du == 0.0) push(u, u);
        else if (dv == 0.0) push(v, v);
        else if ((du > 0.0) != (dv > 0.0)) {
            const double r = u + (v - u) * du / (du - dv);
            push(r, r);
        }
    }
    return iv;
}

}  // namespace detail

/// All transition points of the pair (Z, Y) with their Definition-3 kinds,
/// and the first transition point x1.
inline TransitionReport transitions(const PiecewiseLinear& z, const PiecewiseLinear& y,
                                    double tol = 1e-12) {
    detail::require_same_domain(z, y);
    require(!pl_equal(z, y), errc::identical_functions, "Z and Y coincide");
    const double T = z.domain_end();
    const auto iv = detail::zero_intervals(z, y, tol);

    TransitionReport rep;
    if (iv.empty()) {  // never equal anywhere
        rep.x1 = T;
        return rep;
    }
    for (std::size_t i = 0; i < iv.size(); ++i) {
        const auto [a, b] = iv[i];
        if (a == b) {
            if (a == 0.0)
                rep.transitions.push_back({0.0, 4});        // equal at 0, nonzero just after
            else if (a == T) {
                // kind (v) applies only when T is the very first equality point
                if (i == 0) rep.transitions.push_back({T, 5});
            } else
                rep.transitions.push_back({a, 1});          // isolated crossing/touch
        } else {
            if (a > 0.0) rep.transitions.push_back({a, 2});  // nonzero then zero
            if (b < T) rep.transitions.push_back({b, 3});    // zero then nonzero
        }
    }
    std::sort(rep.transitions.begin(), rep.transitions.end(),
              [](const Transition& a, const Transition& b) { return a.t < b.t; });
    rep.x1 = rep.transitions.empty() ? T : rep.transitions.front().t;
    return rep;
}

// ---------------------------------------------------------------------------
// Theorem-3 classification of a dominated pair
// ---------------------------------------------------------------------------

struct ClassificationResult {
    enum class Case { EqualThenBelow, BelowFromStart };
    Case kind = Case::BelowFromStart;
    double a = 0.0;        // end of the maximal initial equality interval
    double b = 0.0;        // end of the strict interval that follows
    bool strict_at_b = false;  // whether Z < Y holds at b itself
};

/// For Z -<(!=) Y: either Z < Y from the start (up to b), or Z = Y on [0, a]
/// followed by Z < Y on ]a, b]. Endpoints are exact segment-algebra roots.
inline ClassificationResult classify(const PiecewiseLinear& z, const PiecewiseLinear& y,
                                     double eps = 1e-12) {
    const DominanceVerdict v = dominates_nn(z, y, eps);
    require(v.relation == DomRelation::LessNeq, errc::not_dominated,
            "classification needs Z strictly dominated by Y");
    const double T = z.domain_end();
    const auto iv = detail::zero_intervals(z, y, eps);

    ClassificationResult r;
    const bool equal_at_0 = !iv.empty() && iv.front().first == 0.0;
    if (!equal_at_0) {
        r.kind = ClassificationResult::Case::BelowFromStart;
        r.a = 0.0;
        if (iv.empty()) {
            r.b = T;
            r.strict_at_b = true;
        } else {
            r.b = iv.front().first;
            r.strict_at_b = false;
        }
        return r;
    }
    r.kind = ClassificationResult::Case::EqualThenBelow;
    r.a = iv.front().second;  // maximal initial equality interval [0, a]
    if (iv.size() >= 2) {
        r.b = iv[1].first;
        r.strict_at_b = false;
    } else {
        r.b = T;
        r.strict_at_b = true;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Impact-concentration construction
// ---------------------------------------------------------------------------

/// Builds Y* with mu(Y*) = mu(Z), Z -< Y* <= Y and Z -<_L Y*, by truncating
/// Y: keep Y on [0, s], descend linearly to zero at t, zero afterwards. The
/// papers' postconditions are the contract; the construction itself is ours
/// so the result stays piecewise linear.
inline PiecewiseLinear construct_intermediate(const PiecewiseLinear& z, const PiecewiseLinear& y,
                                              int grid = 4096) {
    detail::require_same_domain(z, y);
    require(z.strictly_decreasing(), errc::not_strictly_decreasing,
            "construction requires strictly decreasing Z");
    require(z.positive_on_interior() && y.positive_on_interior(), errc::not_dominated,
            "construction requires Z, Y in U0");
    const DominanceVerdict v = dominates_nn(z, y);
    require(v.relation == DomRelation::LessNeq, errc::not_dominated,
            "construction requires Z strictly dominated by Y");

    const double T = z.domain_end();
    const IntegralCurve iz = z.integral(), iy = y.integral();
    const double target = iz.total();
    if (std::abs(iy.total() - target) <= 1e-12 * (1.0 + target)) return y;

    // s_max solves I_Y(s) = I_Z(T); exists in (0, T) because I_Y(T) > target.
    double lo = 0.0, hi = T;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (iy(mid) < target ? lo : hi) = mid;
    }
    const double s_max = 0.5 * (lo + hi);

    const auto sandwich_ok = [&](const PiecewiseLinear& cand) {
        const IntegralCurve ic = cand.integral();
        for (int i = 0; i <= grid; ++i) {
            const double x = T * static_cast<double>(i) / grid;
            const double a = iz(x), m = ic(x), b = iy(x);
            const double tol = 1e-9 * (1.0 + std::abs(b));
            if (m < a - tol || m > b + tol) return false;
        }
        return true;
    };

    // Walk s toward s_max until the ramp fits below Y and the I-sandwich holds.
    for (int k = 1; k <= 48; ++k) {
        const double s = s_max * (1.0 - std::ldexp(1.0, -k));
        if (s <= 0.0) continue;
        const double ys = y(s);
        if (ys <= 0.0) continue;
        const double t = s + 2.0 * (target - iy(s)) / ys;
        if (t <= s || t > T) continue;

        std::vector<Knot> pts;
        for (const Knot& kn : y.knots())
            if (kn.x < s) pts.push_back(kn);
        pts.push_back({s, ys});
        pts.push_back({t, 0.0});
        if (t < T) pts.push_back({T, 0.0});
        PiecewiseLinear cand = PiecewiseLinear::from_points(std::move(pts));

        // ramp must stay below Y (the prefix coincides with Y by construction)
        bool below = true;
        for (const Knot& kn : y.knots())
            if (kn.x > s && kn.x < t && cand(kn.x) > y(kn.x) + 1e-12) below = false;
        if (!below) continue;
        if (sandwich_ok(cand)) return cand;
    }
    fail(errc::construction_failed, "no truncation satisfied the I-ordering");
}

// ---------------------------------------------------------------------------
// Everywhere-comparison record (Theorem 5 / Proposition 1 flags)
// ---------------------------------------------------------------------------

struct EverywhereComparison {
    bool pointwise_less = false;       // Z < Y on [0, T)            (exact)
    bool mu_leq_everywhere = false;    // mu_th(Z) <= mu_th(Y) all th (exact via Prop. 1)
    bool nn_dominated = false;         // Z -< Y                     (exact)
    bool h_bundle_all_less = false;    // h_th(Z) < h_th(Y) all th   (grid)
    bool percentile_all_less = false;  // P_th(Z) < P_th(Y) all th   (grid)
    bool z0_less = false;              // Z(0) < Y(0)
};

inline EverywhereComparison compare_everywhere(const PiecewiseLinear& z, const PiecewiseLinear& y,
                                               int grid = 257, double eps = 1e-12) {
    detail::require_same_domain(z, y);
    EverywhereComparison r;
    const double T = z.domain_end();

    r.z0_less = z.value_at_start() < y.value_at_start() - eps;

    r.pointwise_less = true;
    for (double x : detail::merged_positions(z, y)) {
        if (x >= T) break;
        if (z(x) >= y(x) - eps) { r.pointwise_less = false; break; }
    }
    if (z(T) > y(T) + eps) r.pointwise_less = false;

    const DominanceVerdict dv = dominates_nn(z, y, eps);
    r.nn_dominated = dv.relation == DomRelation::Equal || dv.relation == DomRelation::Less ||
                     dv.relation == DomRelation::LessNeq;
    r.mu_leq_everywhere = r.nn_dominated && z.value_at_start() <= y.value_at_start();

    // h-bundle over a compactified theta grid restricted to common admissibility
    const double lo = std::max({z.value_at_end() / T, y.value_at_end() / T, 1e-9});
    r.h_bundle_all_less = true;
    for (int i = 0; i < grid; ++i) {
        const double t = static_cast<double>(i) / grid;
        const double theta = lo + t / (1.0 - t + 1e-15);
        if (h_measure(z, theta) >= h_measure(y, theta) - eps) {
            r.h_bundle_all_less = false;
            break;
        }
    }

    r.percentile_all_less = true;
    for (int i = 0; i < grid; ++i) {
        const double x = T * static_cast<double>(i) / grid;
        if (z(x) >= y(x) - eps) { r.percentile_all_less = false; break; }
    }
    return r;
}

}  // namespace impact
