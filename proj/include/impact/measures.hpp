#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "impact/errors.hpp"
#include "impact/piecewise_linear.hpp"
#include "impact/quadrature.hpp"

namespace impact {

// ---------------------------------------------------------------------------
// Measure kinds
// ---------------------------------------------------------------------------

enum class MeasureTag {
    H,                 // h_theta: Z(x) = theta * x
    Kosmulski,         // Z(x) = theta * x^p
    G,                 // I_Z(x) = theta * x^2
    R,                 // sqrt(I_Z(h_theta))
    A,                 // R^2 / h
    TruncatedAverage,  // mu_theta
    TruncatedTotal,    // I_theta
    Percentile,        // Z(theta * T), theta in (0, 1)
    MaxValue,          // Z(0)
    AvgOfAvgs          // (1/T) * integral of mu_theta over [0, T]
};

struct MeasureKind {
    MeasureTag tag = MeasureTag::H;
    double theta = 1.0;
    double p = 1.0;  // Kosmulski exponent

    static MeasureKind h(double theta = 1.0) { return {MeasureTag::H, theta, 1.0}; }
    static MeasureKind kosmulski(double theta, double p) { return {MeasureTag::Kosmulski, theta, p}; }
    static MeasureKind g(double theta = 1.0) { return {MeasureTag::G, theta, 1.0}; }
    static MeasureKind r(double theta = 1.0) { return {MeasureTag::R, theta, 1.0}; }
    static MeasureKind a() { return {MeasureTag::A, 1.0, 1.0}; }
    static MeasureKind truncated_average(double theta) { return {MeasureTag::TruncatedAverage, theta, 1.0}; }
    static MeasureKind truncated_total(double theta) { return {MeasureTag::TruncatedTotal, theta, 1.0}; }
    static MeasureKind percentile(double theta) { return {MeasureTag::Percentile, theta, 1.0}; }
    static MeasureKind max_value() { return {MeasureTag::MaxValue, 1.0, 1.0}; }
    static MeasureKind avg_of_avgs() { return {MeasureTag::AvgOfAvgs, 1.0, 1.0}; }

    std::string name() const {
        std::ostringstream os;
        switch (tag) {
            case MeasureTag::H: os << "h:" << theta; break;
            case MeasureTag::Kosmulski: os << "kos:" << theta << ":" << p; break;
            case MeasureTag::G: os << "g:" << theta; break;
            case MeasureTag::R: os << "r:" << theta; break;
            case MeasureTag::A: os << "a"; break;
            case MeasureTag::TruncatedAverage: os << "mu:" << theta; break;
            case MeasureTag::TruncatedTotal: os << "total:" << theta; break;
            case MeasureTag::Percentile: os << "pct:" << theta; break;
            case MeasureTag::MaxValue: os << "max"; break;
            case MeasureTag::AvgOfAvgs: os << "avgavg"; break;
        }
        return os.str();
    }
};

// ---------------------------------------------------------------------------
// Pointwise roots: h_theta and the Kosmulski generalization
// ---------------------------------------------------------------------------

/// Unique x in [0, T] with Z(x) = theta * x^p. Exists iff Z(T) <= theta * T^p;
/// otherwise the index is not defined and undefined_measure is raised.
/// p = 1 is solved exactly per segment; p != 1 by bracketed bisection.
inline double h_measure(const PiecewiseLinear& z, double theta = 1.0, double p = 1.0) {
    require(theta > 0.0, errc::out_of_domain, "theta must be positive");
    require(p > 0.0, errc::bad_exponent, "Kosmulski exponent must be positive");
    const double T = z.domain_end();
    if (z.value_at_end() > theta * std::pow(T, p))
        fail(errc::undefined_measure,
             "h-index does not exist: Z(T) > theta*T^p for " + std::to_string(theta));

    const auto rhs = [&](double x) { return theta * std::pow(x, p); };
    const auto& ks = z.knots();
    if (ks.front().y <= 0.0) return 0.0;  // Z == 0
    for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
        const double d0 = ks[i].y - rhs(ks[i].x);
        const double d1 = ks[i + 1].y - rhs(ks[i + 1].x);
        if (d0 == 0.0) return ks[i].x;
        if (d1 > 0.0) continue;
        // sign change inside [x_i, x_{i+1}]
        if (p == 1.0) {
            const double m = z.segment_slope(i);
            // y_i + m (x - x_i) = theta x
            return (ks[i].y - m * ks[i].x) / (theta - m);
        }
        double lo = ks[i].x, hi = ks[i + 1].x;
        const double m = z.segment_slope(i);
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double d = ks[i].y + m * (mid - ks[i].x) - rhs(mid);
            (d > 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }
    return T;  // equality holds exactly at the endpoint
}

/// Unique positive root of I_Z(x) = theta * x^2; 0 for the zero function.
/// Exists iff I_Z(T) <= theta * T^2. Solved by exact per-segment quadratics.
inline double g_measure(const PiecewiseLinear& z, double theta = 1.0) {
    require(theta > 0.0, errc::out_of_domain, "theta must be positive");
    const double T = z.domain_end();
    const IntegralCurve iz = z.integral();
    if (iz.total() > theta * T * T)
        fail(errc::undefined_measure, "g-index does not exist: I_Z(T) > theta*T^2");
    if (z.value_at_start() <= 0.0) return 0.0;  // Z == 0

    // D(x) = I_Z(x) - theta x^2 is strictly concave, D(0) = 0, D'(0) = Z(0) > 0.
    for (const auto& s : iz.segments()) {
        const double d1 = s.eval(s.x1) - theta * s.x1 * s.x1;
        if (d1 > 0.0) continue;
        // root inside (x0, x1]: A t^2 + B t + C = 0 with t = x - x0
        const double A = s.half_curv - theta;
        const double B = s.slope - 2.0 * theta * s.x0;
        const double C = s.value0 - theta * s.x0 * s.x0;
        const double disc = B * B - 4.0 * A * C;
        const double sq = std::sqrt(std::max(disc, 0.0));
        // A < 0 always; D falls through zero at the larger root of the pair
        const double t1 = (-B + sq) / (2.0 * A);
        const double t2 = (-B - sq) / (2.0 * A);
        const double lo = -1e-12 * (1.0 + s.x1);
        const double hi = (s.x1 - s.x0) * (1.0 + 1e-12) + 1e-300;
        double best = -1.0;
        for (double t : {t1, t2}) {
            if (t >= lo && t <= hi) {
                // keep the descending crossing: D'(x) <= 0 there
                const double dprime = 2.0 * A * t + B;
                if (dprime <= 1e-9 * (1.0 + std::abs(B))) best = std::max(best, t);
            }
        }
        if (best < 0.0) best = std::max(std::min(std::max(t1, t2), hi), 0.0);
        return std::min(s.x0 + std::max(best, 0.0), T);
    }
    return T;
}

/// R_theta(Z) = sqrt(integral of Z over [0, h_theta(Z)]).
inline double r_index(const PiecewiseLinear& z, double theta = 1.0) {
    const double h = h_measure(z, theta);
    return std::sqrt(z.integral()(h));
}

/// A_Z = (1/h) * integral of Z over [0, h]; undefined when h = 0.
inline double a_index(const PiecewiseLinear& z) {
    const double h = h_measure(z, 1.0);
    require(h > 0.0, errc::undefined_measure, "A-index needs h > 0");
    return z.integral()(h) / h;
}

inline double truncated_average(const PiecewiseLinear& z, double theta) {
    return average_curve(z, theta);
}

inline double truncated_total(const PiecewiseLinear& z, double theta) {
    require(theta > 0.0 && theta <= z.domain_end(), errc::out_of_domain,
            "truncated total needs theta in (0, T]");
    return z.integral()(theta);
}

/// P_theta(Z) = Z(theta * T) with theta a fraction in (0, 1).
inline double percentile(const PiecewiseLinear& z, double theta) {
    require(theta > 0.0 && theta < 1.0, errc::out_of_domain, "percentile needs theta in (0, 1)");
    return z(theta * z.domain_end());
}

/// Mean of the strong impact curve: (1/T) * integral of mu_theta(Z) d theta.
/// The average curve of a PL function is not PL, so this one is numeric.
inline double avg_of_avgs(const PiecewiseLinear& z) {
    const double T = z.domain_end();
    const IntegralCurve iz = z.integral();
    const double v = adaptive_simpson(
        [&](double th) { return average_curve(z, iz, th); }, 0.0, T, 1e-10);
    return v / T;
}

inline double eval_measure(const MeasureKind& k, const PiecewiseLinear& z) {
    switch (k.tag) {
        case MeasureTag::H: return h_measure(z, k.theta);
        case MeasureTag::Kosmulski: return h_measure(z, k.theta, k.p);
        case MeasureTag::G: return g_measure(z, k.theta);
        case MeasureTag::R: return r_index(z, k.theta);
        case MeasureTag::A: return a_index(z);
        case MeasureTag::TruncatedAverage: return truncated_average(z, k.theta);
        case MeasureTag::TruncatedTotal: return truncated_total(z, k.theta);
        case MeasureTag::Percentile: return percentile(z, k.theta);
        case MeasureTag::MaxValue: return z.value_at_start();
        case MeasureTag::AvgOfAvgs: return avg_of_avgs(z);
    }
    fail(errc::internal, "unhandled measure tag");
}

// ---------------------------------------------------------------------------
// Localization intervals C(m_Z) = [c, T], D(m_Z) = [d, T]
// ---------------------------------------------------------------------------

/// c and d are the infima of the windows on which (III.1), resp. (III.2),
/// hold. Empty intervals (the A-index) are flagged explicitly; a missing d
/// with d_empty == false means the value is not pinned down by the theory.
struct LocalizationResult {
    std::optional<double> c;
    std::optional<double> d;
    bool c_empty = false;
    bool d_empty = false;
    std::string note;
};

namespace detail {

/// Left endpoint of the maximal interval [a, x] on which Z is constant at
/// level Z(x); returns x itself when no plateau ends at x.
inline double plateau_left(const PiecewiseLinear& z, double x) {
    const double level = z(x);
    const auto& ks = z.knots();
    double a = x;
    for (std::size_t i = ks.size() - 1; i-- > 0;) {
        if (ks[i].x >= x) continue;
        const double right = std::min(ks[i + 1].x, x);
        if (z(ks[i].x) == level && z(right) == level)
            a = ks[i].x;
        else
            break;
    }
    return a;
}

}  // namespace detail

inline LocalizationResult localization(const MeasureKind& k, const PiecewiseLinear& z) {
    LocalizationResult r;
    const bool strict = z.strictly_decreasing();
    switch (k.tag) {
        case MeasureTag::H:
        case MeasureTag::Kosmulski: {
            const double m = h_measure(z, k.theta, k.p);
            r.c = m;
            r.d = strict ? m : detail::plateau_left(z, m);
            return r;
        }
        case MeasureTag::G: {
            const double g = g_measure(z, k.theta);
            r.c = g;
            if (strict)
                r.d = g;
            else
                r.note = "d not pinned down for plateaus";
            return r;
        }
        case MeasureTag::R: {
            const double h = h_measure(z, k.theta);
            r.c = h;
            if (strict)
                r.d = h;
            else
                r.note = "d not pinned down for plateaus";
            return r;
        }
        case MeasureTag::TruncatedAverage:
        case MeasureTag::TruncatedTotal: {
            require(k.theta > 0.0 && k.theta <= z.domain_end(), errc::out_of_domain,
                    "theta outside (0, T]");
            r.c = k.theta;
            if (strict)
                r.d = k.theta;
            else
                r.note = "d not pinned down for plateaus";
            return r;
        }
        case MeasureTag::Percentile: {
            require(k.theta > 0.0 && k.theta < 1.0, errc::out_of_domain, "theta outside (0, 1)");
            const double a = k.theta * z.domain_end();
            r.c = a;
            if (strict)
                r.d = a;
            else
                r.note = "d not pinned down for plateaus";
            return r;
        }
        case MeasureTag::A:
            h_measure(z, 1.0);  // raises when the A-index itself is undefined
            r.c_empty = r.d_empty = true;
            r.note = "C(A_Z) = D(A_Z) = empty";
            return r;
        case MeasureTag::MaxValue:
            r.c = 0.0;
            r.d = 0.0;
            r.note = "every window works; infimum 0 not attained as a window";
            return r;
        case MeasureTag::AvgOfAvgs:
            fail(errc::inapplicable_measure, "no localization result for the average of averages");
    }
    fail(errc::internal, "unhandled measure tag");
}

// ---------------------------------------------------------------------------
// Discrete measures
// ---------------------------------------------------------------------------

struct DiscreteMeasures {
    double h = 0.0;
    double g = 0.0;
    double r = 0.0;
    std::optional<double> a;  // undefined when h = 0

    std::vector<double> counts;  // kept for the truncated family

    /// Sum of the first theta counts (zero-padded beyond the length).
    double total(std::size_t theta) const {
        require(theta >= 1, errc::out_of_domain, "theta must be >= 1");
        double s = 0.0;
        for (std::size_t i = 0; i < theta && i < counts.size(); ++i) s += counts[i];
        return s;
    }

    double mu(std::size_t theta) const { return total(theta) / static_cast<double>(theta); }
};

/// h = max{r : z_r >= r}; g = max{r : sum of first r >= r^2} with zero
/// padding allowed past the array end; r and a from the h-core.
inline DiscreteMeasures discrete_measures(const DiscreteProfile& p) {
    DiscreteMeasures out;
    out.counts = p.counts();
    const std::size_t n = p.size();
    std::size_t h = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (p.at_rank(i) >= static_cast<double>(i)) h = i;
    double core = 0.0;
    for (std::size_t i = 0; i < h; ++i) core += p.counts()[i];
    out.h = static_cast<double>(h);
    out.r = std::sqrt(core);
    if (h > 0) out.a = core / static_cast<double>(h);

    std::size_t g = 0;
    double acc = 0.0;
    for (std::size_t r = 1;; ++r) {
        if (r <= n) acc += p.counts()[r - 1];
        const double rr = static_cast<double>(r) * static_cast<double>(r);
        if (acc >= rr) g = r;
        if (r >= n && rr > acc) break;  // padded sum is final and r^2 has passed it
    }
    out.g = static_cast<double>(g);
    return out;
}

}  // namespace impact
