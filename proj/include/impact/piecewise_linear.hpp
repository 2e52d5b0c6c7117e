#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "impact/errors.hpp"

namespace impact {

struct Knot {
    double x = 0.0;
    double y = 0.0;
};

inline bool operator==(const Knot& a, const Knot& b) { return a.x == b.x && a.y == b.y; }

/// The piecewise-quadratic cumulative curve x -> integral of Z over [0, x]
/// (the non-normalized Lorenz curve of Z). Continuously differentiable with
/// derivative Z; concavely increasing for decreasing Z.
class IntegralCurve {
public:
    struct Segment {
        double x0 = 0.0;        // segment start
        double value0 = 0.0;    // I(x0)
        double slope = 0.0;     // Z(x0)
        double half_curv = 0.0; // half the slope of Z on the segment
        double x1 = 0.0;        // segment end

        double eval(double x) const {
            const double dx = x - x0;
            return value0 + dx * (slope + half_curv * dx);
        }
        double derivative(double x) const { return slope + 2.0 * half_curv * (x - x0); }
    };

    IntegralCurve() = default;
    explicit IntegralCurve(std::vector<Segment> segs) : segments_(std::move(segs)) {
        require(!segments_.empty(), errc::internal, "integral curve without segments");
        total_ = segments_.back().eval(segments_.back().x1);
    }

    double domain_end() const { return segments_.back().x1; }
    double total() const { return total_; }
    const std::vector<Segment>& segments() const { return segments_; }

    double operator()(double x) const {
        require(x >= 0.0 && x <= domain_end(), errc::out_of_domain,
                "integral curve evaluated outside [0, T]");
        return segment_at(x).eval(x);
    }

    /// Derivative of the curve, i.e. the underlying rank-frequency value.
    double derivative(double x) const {
        require(x >= 0.0 && x <= domain_end(), errc::out_of_domain,
                "integral curve evaluated outside [0, T]");
        return segment_at(x).derivative(x);
    }

private:
    const Segment& segment_at(double x) const {
        auto it = std::upper_bound(segments_.begin(), segments_.end(), x,
                                   [](double v, const Segment& s) { return v < s.x0; });
        if (it != segments_.begin()) --it;
        return *it;
    }

    std::vector<Segment> segments_;
    double total_ = 0.0;
};

/// A continuous decreasing rank-frequency function Z on [0, T], represented
/// exactly by its knots. This is the universal carrier: knot abscissae are
/// strictly increasing from 0 to T, ordinates are non-negative and
/// non-increasing, and values in between are linear interpolations.
class PiecewiseLinear {
public:
    static PiecewiseLinear from_points(std::vector<Knot> pts) {
        require(!pts.empty(), errc::empty_input, "no knots given");
        require(pts.size() >= 2, errc::empty_input, "need at least two knots");
        require(pts.front().x == 0.0, errc::non_monotone_abscissae, "first abscissa must be 0");
        for (std::size_t i = 0; i < pts.size(); ++i) {
            require(pts[i].y >= 0.0, errc::negative_value,
                    "ordinate " + std::to_string(pts[i].y) + " is negative");
            if (i > 0) {
                require(pts[i].x > pts[i - 1].x, errc::non_monotone_abscissae,
                        "abscissae must be strictly increasing");
                require(pts[i].y <= pts[i - 1].y, errc::non_decreasing_ordinates,
                        "ordinates must be non-increasing");
            }
        }
        require(pts.back().x > 0.0, errc::non_monotone_abscissae, "domain endpoint must be > 0");
        return PiecewiseLinear(std::move(pts));
    }

    /// Constant function c on [0, T].
    static PiecewiseLinear constant(double c, double T) {
        return from_points({{0.0, c}, {T, c}});
    }

    /// The zero function on [0, T].
    static PiecewiseLinear zero(double T) { return constant(0.0, T); }

    /// The line S * (1 - x/T) from (0, S) down to (T, 0).
    static PiecewiseLinear linear_family(double T, double S) {
        return from_points({{0.0, S}, {T, 0.0}});
    }

    double domain_end() const { return knots_.back().x; }
    const std::vector<Knot>& knots() const { return knots_; }
    double value_at_start() const { return knots_.front().y; }
    double value_at_end() const { return knots_.back().y; }

    double operator()(double x) const {
        require(x >= 0.0 && x <= domain_end(), errc::out_of_domain,
                "argument " + std::to_string(x) + " outside [0, " +
                    std::to_string(domain_end()) + "]");
        const std::size_t i = segment_index(x);
        const Knot& a = knots_[i];
        const Knot& b = knots_[i + 1];
        if (x == a.x) return a.y;
        if (x == b.x) return b.y;
        const double t = (x - a.x) / (b.x - a.x);
        return a.y + t * (b.y - a.y);
    }

    std::size_t segment_count() const { return knots_.size() - 1; }

    double segment_slope(std::size_t i) const {
        const Knot& a = knots_[i];
        const Knot& b = knots_[i + 1];
        return (b.y - a.y) / (b.x - a.x);
    }

    bool is_zero() const {
        return std::all_of(knots_.begin(), knots_.end(), [](const Knot& k) { return k.y == 0.0; });
    }

    /// Membership in Z: strictly decreasing on every segment.
    bool strictly_decreasing() const {
        for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
            if (knots_[i + 1].y >= knots_[i].y) return false;
        return true;
    }

    /// Membership in U0: Z > 0 on [0, T).
    bool positive_on_interior() const {
        // the ordinate just before T is the minimum over [0, T)
        return knots_[knots_.size() - 2].y > 0.0;
    }

    IntegralCurve integral() const {
        std::vector<IntegralCurve::Segment> segs;
        segs.reserve(segment_count());
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
            const Knot& a = knots_[i];
            const Knot& b = knots_[i + 1];
            const double slope = (b.y - a.y) / (b.x - a.x);
            segs.push_back({a.x, acc, a.y, slope / 2.0, b.x});
            const double dx = b.x - a.x;
            acc += dx * (a.y + 0.5 * slope * dx);
        }
        return IntegralCurve(std::move(segs));
    }

private:
    explicit PiecewiseLinear(std::vector<Knot> pts) : knots_(std::move(pts)) {}

    std::size_t segment_index(double x) const {
        auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                                   [](double v, const Knot& k) { return v < k.x; });
        std::size_t i = static_cast<std::size_t>(it - knots_.begin());
        if (i > 0) --i;
        if (i + 1 >= knots_.size()) i = knots_.size() - 2;
        return i;
    }

    std::vector<Knot> knots_;
};

/// A decreasing array of counts z_1 >= z_2 >= ... >= z_T >= 0, the discrete
/// profile behind the continuous model.
class DiscreteProfile {
public:
    static DiscreteProfile from_counts(std::vector<double> raw) {
        require(!raw.empty(), errc::empty_input, "no counts given");
        for (double v : raw)
            require(v >= 0.0, errc::negative_value, "count " + std::to_string(v) + " is negative");
        std::stable_sort(raw.begin(), raw.end(), std::greater<double>());
        return DiscreteProfile(std::move(raw));
    }

    std::size_t size() const { return counts_.size(); }
    double at_rank(std::size_t r) const {  // 1-based rank
        require(r >= 1 && r <= counts_.size(), errc::bad_index, "rank out of range");
        return counts_[r - 1];
    }
    const std::vector<double>& counts() const { return counts_; }

    bool operator==(const DiscreteProfile& o) const { return counts_ == o.counts_; }

private:
    explicit DiscreteProfile(std::vector<double> c) : counts_(std::move(c)) {}
    std::vector<double> counts_;
};

/// Embedding convention: knots (i-1, z_i) for i = 1..T plus a terminal knot
/// (T, z_T), so Z(0) = z_1 and the last segment is constant. Totals of the
/// embedding intentionally differ from the discrete sums.
inline PiecewiseLinear to_continuous(const DiscreteProfile& p) {
    std::vector<Knot> pts;
    pts.reserve(p.size() + 1);
    for (std::size_t i = 0; i < p.size(); ++i)
        pts.push_back({static_cast<double>(i), p.counts()[i]});
    pts.push_back({static_cast<double>(p.size()), p.counts().back()});
    return PiecewiseLinear::from_points(std::move(pts));
}

inline PiecewiseLinear pl_from_points(std::vector<Knot> pts) {
    return PiecewiseLinear::from_points(std::move(pts));
}

/// mu_theta(Z) = I_Z(theta)/theta for theta > 0, and Z(0) at theta = 0.
inline double average_curve(const PiecewiseLinear& z, double theta) {
    require(theta >= 0.0 && theta <= z.domain_end(), errc::out_of_domain,
            "average curve argument outside [0, T]");
    if (theta == 0.0) return z.value_at_start();
    return z.integral()(theta) / theta;
}

inline double average_curve(const PiecewiseLinear& z, const IntegralCurve& iz, double theta) {
    require(theta >= 0.0 && theta <= z.domain_end(), errc::out_of_domain,
            "average curve argument outside [0, T]");
    if (theta == 0.0) return z.value_at_start();
    return iz(theta) / theta;
}

/// Y_Z of Paper-style domain extension: equals Z on [0, T], zero on [T, W].
inline PiecewiseLinear extend_with_zeros(const PiecewiseLinear& z, double W) {
    require(W > z.domain_end(), errc::not_larger, "W must exceed T");
    require(z.value_at_end() == 0.0, errc::non_zero_tail, "Z(T) must be 0 to extend with zeros");
    std::vector<Knot> pts = z.knots();
    pts.push_back({W, 0.0});
    return PiecewiseLinear::from_points(std::move(pts));
}

namespace detail {

inline void require_same_domain(const PiecewiseLinear& a, const PiecewiseLinear& b) {
    require(a.domain_end() == b.domain_end(), errc::domain_mismatch,
            "functions live on different [0, T] intervals");
}

/// Sorted, de-duplicated union of the knot abscissae of both functions.
inline std::vector<double> merged_positions(const PiecewiseLinear& a, const PiecewiseLinear& b) {
    std::vector<double> xs;
    xs.reserve(a.knots().size() + b.knots().size());
    for (const Knot& k : a.knots()) xs.push_back(k.x);
    for (const Knot& k : b.knots()) xs.push_back(k.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

/// Merged positions plus every interior crossing of a and b, so that a - b
/// has constant sign inside each resulting interval.
inline std::vector<double> merged_positions_with_crossings(const PiecewiseLinear& a,
                                                           const PiecewiseLinear& b) {
    std::vector<double> xs = merged_positions(a, b);
    std::vector<double> out;
    out.reserve(xs.size() * 2);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        out.push_back(xs[i]);
        const double du = a(xs[i]) - b(xs[i]);
        const double dv = a(xs[i + 1]) - b(xs[i + 1]);
        if ((du > 0.0 && dv < 0.0) || (du < 0.0 && dv > 0.0)) {
            const double t = du / (du - dv);
            out.push_back(xs[i] + t * (xs[i + 1] - xs[i]));
        }
    }
    out.push_back(xs.back());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

/// Exact pointwise equality (piecewise-linear functions agree everywhere iff
/// they agree on the union of their knots).
inline bool pl_equal(const PiecewiseLinear& a, const PiecewiseLinear& b) {
    if (a.domain_end() != b.domain_end()) return false;
    for (double x : detail::merged_positions(a, b))
        if (a(x) != b(x)) return false;
    return true;
}

inline PiecewiseLinear pl_min(const PiecewiseLinear& a, const PiecewiseLinear& b) {
    detail::require_same_domain(a, b);
    std::vector<Knot> pts;
    for (double x : detail::merged_positions_with_crossings(a, b))
        pts.push_back({x, std::min(a(x), b(x))});
    return PiecewiseLinear::from_points(std::move(pts));
}

inline PiecewiseLinear pl_max(const PiecewiseLinear& a, const PiecewiseLinear& b) {
    detail::require_same_domain(a, b);
    std::vector<Knot> pts;
    for (double x : detail::merged_positions_with_crossings(a, b))
        pts.push_back({x, std::max(a(x), b(x))});
    return PiecewiseLinear::from_points(std::move(pts));
}

/// Z + delta. With clamp_at_zero, a downward shift becomes max(Z + delta, 0)
/// and the zero-crossing knot is inserted exactly; without it, any negative
/// value is rejected since the result would leave U.
inline PiecewiseLinear shifted(const PiecewiseLinear& z, double delta, bool clamp_at_zero = false) {
    const auto& ks = z.knots();
    std::vector<Knot> pts;
    pts.reserve(ks.size() + 1);
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const double v = ks[i].y + delta;
        if (v >= 0.0) {
            pts.push_back({ks[i].x, v});
            continue;
        }
        if (!clamp_at_zero)
            fail(errc::result_not_decreasing, "shift drives the function negative");
        if (!pts.empty() && pts.back().y > 0.0) {
            const double prev = pts.back().y;
            const double root = pts.back().x + prev * (ks[i].x - pts.back().x) / (prev - v);
            pts.push_back({root, 0.0});
        }
        if (pts.empty() || pts.back().x < ks[i].x) pts.push_back({ks[i].x, 0.0});
    }
    if (pts.back().x < z.domain_end()) pts.push_back({z.domain_end(), 0.0});
    return PiecewiseLinear::from_points(std::move(pts));
}

inline PiecewiseLinear scaled(const PiecewiseLinear& z, double c) {
    require(c >= 0.0, errc::result_not_decreasing, "negative scale leaves U");
    std::vector<Knot> pts = z.knots();
    for (Knot& k : pts) k.y *= c;
    return PiecewiseLinear::from_points(std::move(pts));
}

}  // namespace impact
