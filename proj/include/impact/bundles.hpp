#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "impact/errors.hpp"
#include "impact/measures.hpp"
#include "impact/piecewise_linear.hpp"
#include "impact/verdict.hpp"

namespace impact {

enum class PsiDirection { Increasing, Decreasing };

/// Admissible parameter interval Q_{m,Z}; hi may be +infinity.
struct ParamInterval {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    bool lo_open = false;
    bool hi_open = false;

    bool contains(double theta, double eps = 0.0) const {
        if (lo_open ? theta <= lo + eps : theta < lo - eps) return false;
        if (hi_open ? theta >= hi - eps : theta > hi + eps) return false;
        return true;
    }
};

/// Pointwise-explicit descriptor f(theta, x) declared for (PED) bundles.
struct PedDescriptor {
    std::function<double(double theta, double x)> f;
    std::string description;
};

/// A bundle (m, psi): a parameterized measure family together with the
/// scanning injection psi_Z mapping ranks to parameters.
class BundleSpec {
public:
    enum class Kind { Total, Average, Percentile, HIndex, GIndex, Kosmulski, Custom };

    using EvalFn = std::function<double(const PiecewiseLinear&, double)>;
    using PsiFn = std::function<double(const PiecewiseLinear&, double)>;
    using AdmissibleFn = std::function<ParamInterval(const PiecewiseLinear&)>;

    static BundleSpec total() {
        BundleSpec b(Kind::Total, "I_theta", PsiDirection::Increasing);
        return b;
    }
    static BundleSpec average() {
        BundleSpec b(Kind::Average, "mu_theta", PsiDirection::Increasing);
        return b;
    }
    /// Rank-parameterized percentile P_theta(Z) = Z(theta), theta in [0, T).
    static BundleSpec percentile_bundle() {
        BundleSpec b(Kind::Percentile, "P_theta", PsiDirection::Increasing);
        return b;
    }
    static BundleSpec h_bundle() {
        BundleSpec b(Kind::HIndex, "h_theta", PsiDirection::Decreasing);
        b.ped_ = PedDescriptor{[](double th, double x) { return th * x; }, "f(theta,x) = theta*x"};
        return b;
    }
    static BundleSpec g_bundle() {
        BundleSpec b(Kind::GIndex, "g_theta", PsiDirection::Decreasing);
        return b;
    }
    static BundleSpec kosmulski(double p) {
        BundleSpec b(Kind::Kosmulski, "kos_theta:p=" + std::to_string(p), PsiDirection::Decreasing);
        b.p_ = p;
        b.ped_ = PedDescriptor{[p](double th, double x) { return th * std::pow(x, p); },
                               "f(theta,x) = theta*x^p"};
        return b;
    }
    static BundleSpec custom(std::string name, EvalFn eval, PsiFn psi, PsiDirection dir,
                             AdmissibleFn admissible, std::optional<PedDescriptor> ped = {}) {
        BundleSpec b(Kind::Custom, std::move(name), dir);
        b.eval_ = std::move(eval);
        b.psi_ = std::move(psi);
        b.admissible_ = std::move(admissible);
        b.ped_ = std::move(ped);
        return b;
    }

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    PsiDirection psi_direction() const { return direction_; }
    const std::optional<PedDescriptor>& ped_descriptor() const { return ped_; }

    ParamInterval admissible(const PiecewiseLinear& z) const {
        const double T = z.domain_end();
        switch (kind_) {
            case Kind::Total: return {0.0, T, true, false};        // ]0, T]
            case Kind::Average: return {0.0, T, false, false};     // [0, T]
            case Kind::Percentile: return {0.0, T, false, true};   // [0, T[
            case Kind::HIndex: return {z.value_at_end() / T, std::numeric_limits<double>::infinity(), false, false};
            case Kind::GIndex: return {z.integral().total() / (T * T), std::numeric_limits<double>::infinity(), false, false};
            case Kind::Kosmulski: return {z.value_at_end() / std::pow(T, p_), std::numeric_limits<double>::infinity(), false, false};
            case Kind::Custom: return admissible_(z);
        }
        fail(errc::internal, "unhandled bundle kind");
    }

    /// m_theta(Z); raises inadmissible_parameter outside Q_{m,Z}.
    double eval(const PiecewiseLinear& z, double theta) const {
        require(admissible(z).contains(theta, 1e-15), errc::inadmissible_parameter,
                name_ + ": theta " + std::to_string(theta) + " outside Q");
        switch (kind_) {
            case Kind::Total: return truncated_total(z, theta);
            case Kind::Average: return truncated_average(z, theta);
            case Kind::Percentile: return z(theta);
            case Kind::HIndex:
                if (std::isinf(theta)) return 0.0;
                return h_measure(z, theta);
            case Kind::GIndex:
                if (std::isinf(theta)) return 0.0;
                return g_measure(z, theta);
            case Kind::Kosmulski:
                if (std::isinf(theta)) return 0.0;
                return h_measure(z, theta, p_);
            case Kind::Custom: return eval_(z, theta);
        }
        fail(errc::internal, "unhandled bundle kind");
    }

    /// The scanning parameter theta = psi_Z(x); strictly monotone in x. For
    /// the h/g kinds psi(0) is the extended value +infinity when Z(0) > 0.
    double psi(const PiecewiseLinear& z, double x) const {
        require(x >= 0.0 && x <= z.domain_end(), errc::out_of_domain, "psi argument outside [0, T]");
        switch (kind_) {
            case Kind::Total:
            case Kind::Average:
            case Kind::Percentile:
                return x;
            case Kind::HIndex:
            case Kind::Kosmulski: {
                if (x == 0.0)
                    return z.value_at_start() > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
                return z(x) / (kind_ == Kind::HIndex ? x : std::pow(x, p_));
            }
            case Kind::GIndex: {
                if (x == 0.0)
                    return z.value_at_start() > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
                return z.integral()(x) / (x * x);
            }
            case Kind::Custom: return psi_(z, x);
        }
        fail(errc::internal, "unhandled bundle kind");
    }

private:
    BundleSpec(Kind k, std::string n, PsiDirection d) : kind_(k), name_(std::move(n)), direction_(d) {}

    Kind kind_;
    std::string name_;
    PsiDirection direction_;
    double p_ = 1.0;
    EvalFn eval_;
    PsiFn psi_;
    AdmissibleFn admissible_;
    std::optional<PedDescriptor> ped_;
};

// ---------------------------------------------------------------------------
// Bundle-level order relations <_a and <_{a,b}
// ---------------------------------------------------------------------------

struct BundleComparison {
    enum class Relation { Less, NotLess, Undetermined };
    Relation relation = Relation::Undetermined;
    std::string theta_set;
    int grid_used = 0;
    // witnesses carry (theta, m_theta(Z), m_theta(Y)) rows
    std::vector<std::array<double, 3>> witnesses;
};

namespace detail {

/// Samples of the prefix theta-set psi_Z([0,a]) U psi_Y([0,a]) intersected
/// with both admissible intervals. For monotone psi the union is a single
/// interval: [min(psi_Z(a), psi_Y(a)), +inf] when psi decreases (sampled on
/// the compactified axis theta -> theta/(1+theta)), and
/// [inf Q, max(psi_Z(a), psi_Y(a))] when psi increases.
inline std::vector<double> theta_prefix_samples(const BundleSpec& b, const PiecewiseLinear& z,
                                                const PiecewiseLinear& y, double a, int grid) {
    std::vector<double> out;
    const ParamInterval qz = b.admissible(z);
    const ParamInterval qy = b.admissible(y);
    const auto admissible_both = [&](double th) {
        return qz.contains(th, 1e-15) && qy.contains(th, 1e-15);
    };
    if (b.psi_direction() == PsiDirection::Decreasing) {
        double lo = std::min(b.psi(z, a), b.psi(y, a));
        lo = std::max({lo, qz.lo, qy.lo});
        const double c0 = lo / (1.0 + lo);
        for (int i = 0; i <= grid; ++i) {
            const double t = c0 + (1.0 - c0) * static_cast<double>(i) / (grid + 1);
            const double th = t / (1.0 - t);
            if (std::isfinite(th) && admissible_both(th)) out.push_back(th);
        }
    } else {
        const double lo = std::max(qz.lo, qy.lo);
        const double hi = std::max(b.psi(z, a), b.psi(y, a));
        for (int i = 0; i <= grid; ++i) {
            const double th = lo + (hi - lo) * static_cast<double>(i) / grid;
            if (admissible_both(th)) out.push_back(th);
        }
    }
    return out;
}

/// Samples of psi_Z(]a,b]) U psi_Y(]a,b]): taken directly as images of an
/// x-grid over ]a,b], which stays inside the true theta-set even when the
/// two images are disjoint intervals.
inline std::vector<double> theta_window_samples(const BundleSpec& b, const PiecewiseLinear& z,
                                                const PiecewiseLinear& y, double a, double bb,
                                                int grid) {
    std::vector<double> out;
    const ParamInterval qz = b.admissible(z);
    const ParamInterval qy = b.admissible(y);
    for (int i = 1; i <= grid; ++i) {
        const double x = a + (bb - a) * static_cast<double>(i) / grid;
        for (double th : {b.psi(z, x), b.psi(y, x)})
            if (std::isfinite(th) && qz.contains(th, 1e-15) && qy.contains(th, 1e-15))
                out.push_back(th);
    }
    return out;
}

}  // namespace detail

/// m(Z) <_a m(Y): strict inequality over the theta-set of the prefix [0, a].
/// Grid verdicts are sound for refutation and evidence-only for the
/// universal claim.
inline BundleComparison bundle_less_a(const BundleSpec& b, const PiecewiseLinear& z,
                                      const PiecewiseLinear& y, double a, int grid = 257,
                                      double eps = 1e-12) {
    detail::require_same_domain(z, y);
    require(a > 0.0 && a < z.domain_end(), errc::bad_interval, "need 0 < a < T");
    BundleComparison cmp;
    cmp.grid_used = grid;
    cmp.theta_set = "psi_Z([0,a]) U psi_Y([0,a]), a=" + std::to_string(a);
    bool undetermined = false;
    for (double th : detail::theta_prefix_samples(b, z, y, a, grid)) {
        const double mz = b.eval(z, th);
        const double my = b.eval(y, th);
        if (my > mz + eps) continue;
        cmp.witnesses.push_back({th, mz, my});
        if (std::abs(my - mz) <= eps) { undetermined = true; continue; }
        cmp.relation = BundleComparison::Relation::NotLess;
        return cmp;
    }
    cmp.relation = undetermined ? BundleComparison::Relation::Undetermined
                                : BundleComparison::Relation::Less;
    return cmp;
}

/// m(Z) <_{a,b} m(Y): equality on the theta-set of [0, a], strictness on the
/// theta-set of ]a, b].
inline BundleComparison bundle_less_ab(const BundleSpec& b, const PiecewiseLinear& z,
                                       const PiecewiseLinear& y, double a, double bb,
                                       int grid = 257, double eps = 1e-12) {
    detail::require_same_domain(z, y);
    require(a >= 0.0 && a < bb && bb <= z.domain_end(), errc::bad_interval, "need 0 <= a < b <= T");
    BundleComparison cmp;
    cmp.grid_used = grid;
    cmp.theta_set = "equal on psi([0,a]), strict on psi(]a,b])";
    bool undetermined = false;
    if (a > 0.0) {
        for (double th : detail::theta_prefix_samples(b, z, y, a, grid)) {
            const double mz = b.eval(z, th);
            const double my = b.eval(y, th);
            if (std::abs(my - mz) <= eps) continue;
            cmp.witnesses.push_back({th, mz, my});
            cmp.relation = BundleComparison::Relation::NotLess;
            return cmp;
        }
    } else {
        // the equality part degenerates to the single parameter psi(0)
        const double th0 = b.psi(z, 0.0);
        if (std::isfinite(th0) && b.admissible(z).contains(th0, 1e-15) &&
            b.admissible(y).contains(th0, 1e-15)) {
            const double mz = b.eval(z, th0);
            const double my = b.eval(y, th0);
            if (std::abs(my - mz) > eps) {
                cmp.witnesses.push_back({th0, mz, my});
                cmp.relation = BundleComparison::Relation::NotLess;
                return cmp;
            }
        }
    }
    for (double th : detail::theta_window_samples(b, z, y, a, bb, grid)) {
        const double mz = b.eval(z, th);
        const double my = b.eval(y, th);
        if (my > mz + eps) continue;
        cmp.witnesses.push_back({th, mz, my});
        if (std::abs(my - mz) <= eps) { undetermined = true; continue; }
        cmp.relation = BundleComparison::Relation::NotLess;
        return cmp;
    }
    cmp.relation = undetermined ? BundleComparison::Relation::Undetermined
                                : BundleComparison::Relation::Less;
    return cmp;
}

// ---------------------------------------------------------------------------
// Sheaf axioms AX.1-AX.4 over a family
// ---------------------------------------------------------------------------

namespace detail {

/// Largest prefix [0, x) on which Z < Y strictly, as the first root of Y - Z
/// (0 when Z(0) >= Y(0)); T + 1 marks "strict everywhere".
inline double strict_prefix_end(const PiecewiseLinear& z, const PiecewiseLinear& y) {
    if (!(z.value_at_start() < y.value_at_start())) return 0.0;
    const std::vector<double> xs = merged_positions(z, y);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double du = y(xs[i]) - z(xs[i]);
        const double dv = y(xs[i + 1]) - z(xs[i + 1]);
        if (dv > 0.0) continue;
        if (dv == 0.0) return xs[i + 1];
        return xs[i] + (xs[i + 1] - xs[i]) * du / (du - dv);
    }
    return z.domain_end() + 1.0;
}

/// End of the maximal initial interval on which the functions coincide.
inline double equal_prefix_end(const PiecewiseLinear& z, const PiecewiseLinear& y) {
    const std::vector<double> xs = merged_positions(z, y);
    if (z(0.0) != y(0.0)) return -1.0;
    double end = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (z(xs[i + 1]) == y(xs[i + 1]))
            end = xs[i + 1];
        else
            break;
    }
    return end;
}

inline bool pointwise_leq(const PiecewiseLinear& z, const PiecewiseLinear& y) {
    for (double x : merged_positions(z, y))
        if (z(x) > y(x)) return false;
    return true;
}

}  // namespace detail

/// AX.1 on the zero function, AX.2 over dominated pairs, AX.3 via <_a on
/// strict-prefix pairs, AX.4 on prefix-equal pairs. Verdicts carry witnesses.
inline std::vector<AxiomVerdict> check_bundle_axioms(const BundleSpec& b,
                                                     const std::vector<PiecewiseLinear>& family,
                                                     int grid = 65, double eps = 1e-12) {
    require(!family.empty(), errc::empty_input, "empty family");
    const double T = family.front().domain_end();
    std::vector<AxiomVerdict> out;

    {  // AX.1
        AxiomVerdict v;
        v.axiom = "AX1";
        v.outcome = Outcome::holds_on_family;
        const PiecewiseLinear zero = PiecewiseLinear::zero(T);
        const ParamInterval q = b.admissible(zero);
        const double hi = std::isinf(q.hi) ? 32.0 : q.hi;
        for (int i = 0; i <= grid; ++i) {
            const double th = q.lo + (hi - q.lo) * static_cast<double>(i) / grid;
            if (!q.contains(th, 1e-15)) continue;
            if (std::abs(b.eval(zero, th)) > eps) {
                v.outcome = Outcome::violated;
                Witness w;
                w.description = "m_theta(0) != 0";
                w.params["theta"] = th;
                w.params["value"] = b.eval(zero, th);
                v.witnesses.push_back(std::move(w));
                break;
            }
        }
        out.push_back(std::move(v));
    }

    {  // AX.2
        AxiomVerdict v;
        v.axiom = "AX2";
        v.outcome = Outcome::vacuous;
        for (const auto& z : family) {
            for (const auto& y : family) {
                if (&z == &y || !detail::pointwise_leq(z, y)) continue;
                if (v.outcome == Outcome::vacuous) v.outcome = Outcome::holds_on_family;
                for (double th : detail::theta_prefix_samples(b, z, y, T * (1.0 - 1e-9), grid)) {
                    const double mz = b.eval(z, th);
                    const double my = b.eval(y, th);
                    if (mz > my + eps) {
                        v.outcome = Outcome::violated;
                        Witness w;
                        w.description = "Z <= Y but m_theta(Z) > m_theta(Y)";
                        w.functions = {z, y};
                        w.params["theta"] = th;
                        w.params["m(Z)"] = mz;
                        w.params["m(Y)"] = my;
                        v.witnesses.push_back(std::move(w));
                    }
                }
            }
        }
        out.push_back(std::move(v));
    }

    {  // AX.3
        AxiomVerdict v;
        v.axiom = "AX3";
        v.outcome = Outcome::vacuous;
        for (const auto& z : family) {
            for (const auto& y : family) {
                if (&z == &y) continue;
                const double x0 = detail::strict_prefix_end(z, y);
                if (x0 <= 0.0) continue;
                if (v.outcome == Outcome::vacuous) v.outcome = Outcome::holds_on_family;
                for (double frac : {0.25, 0.5, 0.75, 0.95}) {
                    const double a = std::min(x0 * frac, T * (1.0 - 1e-9));
                    if (a <= 0.0) continue;
                    const BundleComparison c = bundle_less_a(b, z, y, a, grid, eps);
                    if (c.relation == BundleComparison::Relation::NotLess) {
                        v.outcome = Outcome::violated;
                        Witness w;
                        w.description = "Z < Y on [0,a] but not m(Z) <_a m(Y)";
                        w.functions = {z, y};
                        w.params["a"] = a;
                        if (!c.witnesses.empty()) {
                            w.params["theta"] = c.witnesses.front()[0];
                            w.params["m(Z)"] = c.witnesses.front()[1];
                            w.params["m(Y)"] = c.witnesses.front()[2];
                        }
                        v.witnesses.push_back(std::move(w));
                    }
                }
            }
        }
        out.push_back(std::move(v));
    }

    {  // AX.4
        AxiomVerdict v;
        v.axiom = "AX4";
        v.outcome = Outcome::vacuous;
        for (std::size_t i = 0; i < family.size(); ++i) {
            for (std::size_t j = i + 1; j < family.size(); ++j) {
                const auto& z = family[i];
                const auto& y = family[j];
                const double a = detail::equal_prefix_end(z, y);
                if (a <= 0.0 || pl_equal(z, y)) continue;
                if (v.outcome == Outcome::vacuous) v.outcome = Outcome::holds_on_family;
                // psi must agree on [0, a] and m on psi([0, a])
                for (int k = 0; k <= grid; ++k) {
                    const double x = a * static_cast<double>(k) / grid;
                    const double pz = b.psi(z, x);
                    const double py = b.psi(y, x);
                    const bool psi_agree =
                        (std::isinf(pz) && std::isinf(py)) || std::abs(pz - py) <= eps * (1.0 + std::abs(pz));
                    bool m_agree = true;
                    if (std::isfinite(pz) && b.admissible(z).contains(pz, 1e-15) &&
                        b.admissible(y).contains(pz, 1e-15))
                        m_agree = std::abs(b.eval(z, pz) - b.eval(y, pz)) <= 1e-9 * (1.0 + std::abs(b.eval(z, pz)));
                    if (!psi_agree || !m_agree) {
                        v.outcome = Outcome::violated;
                        Witness w;
                        w.description = psi_agree ? "m differs on psi([0,a])" : "psi differs on [0,a]";
                        w.functions = {z, y};
                        w.params["x"] = x;
                        w.params["a"] = a;
                        v.witnesses.push_back(std::move(w));
                        break;
                    }
                }
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Radix sheaf: (c+1)-ary numbers as impact sheaves
// ---------------------------------------------------------------------------

/// m_theta of a digit vector: the theta-truncated radix expansion
/// sum_{j<=theta} a_j / (c+1)^(j-1), a value in [0, c+1).
inline double radix_measure(const std::vector<int>& digits, int base_c, std::size_t theta) {
    require(base_c >= 1, errc::out_of_domain, "base must be >= 1");
    require(theta >= 1 && theta <= digits.size(), errc::bad_index, "theta outside 1..length");
    for (int d : digits)
        require(d >= 0 && d <= base_c, errc::digit_out_of_range,
                "digit " + std::to_string(d) + " outside 0.." + std::to_string(base_c));
    double acc = 0.0;
    double scale = 1.0;
    for (std::size_t j = 0; j < theta; ++j) {
        acc += digits[j] * scale;
        scale /= base_c + 1;
    }
    return acc;
}

}  // namespace impact
