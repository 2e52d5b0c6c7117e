#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "impact/bundles.hpp"
#include "impact/dominance.hpp"
#include "impact/errors.hpp"
#include "impact/measures.hpp"
#include "impact/piecewise_linear.hpp"
#include "impact/verdict.hpp"

namespace impact {

// ---------------------------------------------------------------------------
// Axiom identifiers
// ---------------------------------------------------------------------------

enum class AxiomId {
    I, II, III_1, III_2, III, III_prime, IV,   // impact-measure requirements
    ax1, ax2, ax3, ax4,                        // strong-impact-measure axioms
    AX1, AX2, AX3, AX4,                        // sheaf axioms
    CES, PED, W1, W2, WL, IB, GIB              // bundle properties
};

inline const char* axiom_name(AxiomId a) {
    switch (a) {
        case AxiomId::I: return "I";
        case AxiomId::II: return "II";
        case AxiomId::III_1: return "III.1";
        case AxiomId::III_2: return "III.2";
        case AxiomId::III: return "III";
        case AxiomId::III_prime: return "III'";
        case AxiomId::IV: return "IV";
        case AxiomId::ax1: return "ax.1";
        case AxiomId::ax2: return "ax.2";
        case AxiomId::ax3: return "ax.3";
        case AxiomId::ax4: return "ax.4";
        case AxiomId::AX1: return "AX.1";
        case AxiomId::AX2: return "AX.2";
        case AxiomId::AX3: return "AX.3";
        case AxiomId::AX4: return "AX.4";
        case AxiomId::CES: return "CES";
        case AxiomId::PED: return "PED";
        case AxiomId::W1: return "W1";
        case AxiomId::W2: return "W2";
        case AxiomId::WL: return "WL";
        case AxiomId::IB: return "IB";
        case AxiomId::GIB: return "GIB";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Deterministic generation helpers
// ---------------------------------------------------------------------------

/// splitmix64; the same seed always reproduces the same family, independent
/// of platform or standard-library distribution details.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Rng fork(std::uint64_t salt) { return Rng(state_ ^ (salt * 0x9e3779b97f4a7c15ULL + 0x1234567ULL)); }

private:
    std::uint64_t state_;
};

struct GeneratorOptions {
    double T = 10.0;
    int max_segments = 6;
    double max_value = 12.0;
    bool strictly_decreasing = false;
    bool positive_interior = false;  // member of U0
    bool zero_tail = false;          // Z(T) = 0
};

/// Random decreasing piecewise-linear function with the requested shape.
inline PiecewiseLinear random_profile(Rng& rng, const GeneratorOptions& opt = {}) {
    const int segs = rng.uniform_int(1, opt.max_segments);
    std::vector<double> xs{0.0};
    for (int i = 1; i < segs; ++i) xs.push_back(rng.uniform(0.0, opt.T));
    xs.push_back(opt.T);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] - xs[i - 1] < opt.T * 1e-6) xs[i] = xs[i - 1] + opt.T * 1e-6;

    std::vector<Knot> pts;
    double y = rng.uniform(opt.max_value * 0.2, opt.max_value);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        pts.push_back({xs[i], y});
        const double drop = rng.uniform(0.0, y * 0.6);
        y -= opt.strictly_decreasing ? std::max(drop, y * 1e-4 + 1e-6) : drop;
        if (y < 0.0) y = 0.0;
    }
    if (opt.zero_tail) pts.back().y = 0.0;
    if (opt.positive_interior && pts.size() >= 2) {
        double floor = opt.max_value * 1e-3;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            if (pts[i].y < floor * static_cast<double>(pts.size() - i))
                pts[i].y = floor * static_cast<double>(pts.size() - i);
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (pts[i].y > pts[i - 1].y) pts[i].y = pts[i - 1].y;
    }
    return PiecewiseLinear::from_points(std::move(pts));
}

/// Y = Z plus a non-negative decreasing perturbation, so Z -<(!=) Y and even
/// Z <= Y pointwise.
inline std::pair<PiecewiseLinear, PiecewiseLinear> random_dominated_pair(Rng& rng,
                                                                         const GeneratorOptions& opt = {}) {
    const PiecewiseLinear z = random_profile(rng, opt);
    GeneratorOptions popt = opt;
    popt.strictly_decreasing = false;
    popt.zero_tail = false;
    popt.max_value = std::max(opt.max_value * rng.uniform(0.05, 0.5), 1e-3);
    const PiecewiseLinear bump = random_profile(rng, popt);
    std::vector<Knot> pts;
    for (double x : detail::merged_positions(z, bump)) pts.push_back({x, z(x) + bump(x)});
    return {z, PiecewiseLinear::from_points(std::move(pts))};
}

// ---------------------------------------------------------------------------
// Proof constructions from the papers
// ---------------------------------------------------------------------------

/// The h-index proof adversary: Y = Z + delta on [0, a], linear down to
/// (h_Z, h_Z/2), constant h_Z/2 afterwards. Y >> Z on [0, a] with h(Y) <= h(Z).
inline PiecewiseLinear lift_above(const PiecewiseLinear& z, double a, double delta) {
    require(delta > 0.0, errc::bad_window, "delta must be positive");
    const double h = h_measure(z, 1.0);
    require(a > 0.0 && a < h, errc::bad_window, "need 0 < a < h_Z");
    std::vector<Knot> pts;
    for (const Knot& k : z.knots())
        if (k.x < a) pts.push_back({k.x, k.y + delta});
    pts.push_back({a, z(a) + delta});
    pts.push_back({h, h / 2.0});
    if (h < z.domain_end()) pts.push_back({z.domain_end(), h / 2.0});
    return PiecewiseLinear::from_points(std::move(pts));
}

/// Construction (*): Y = Z - delta on [0, a], constant Z(a) - delta after.
/// Y << Z on [0, a] for strictly decreasing Z.
inline PiecewiseLinear flatten_below(const PiecewiseLinear& z, double a, double delta) {
    require(a > 0.0 && a < z.domain_end(), errc::bad_window, "need 0 < a < T");
    require(delta > 0.0, errc::bad_window, "delta must be positive");
    require(delta < z(a), errc::delta_too_large, "delta must stay below Z(a)");
    std::vector<Knot> pts;
    for (const Knot& k : z.knots())
        if (k.x < a) pts.push_back({k.x, k.y - delta});
    pts.push_back({a, z(a) - delta});
    pts.push_back({z.domain_end(), z(a) - delta});
    return PiecewiseLinear::from_points(std::move(pts));
}

struct ShiftDownResult {
    PiecewiseLinear adversary;
    double proof_delta_bound = 0.0;  // (J(h_Y) - J(h_Z)) / 2 for this adversary
};

/// The A-index proof adversary: Y = Z - delta on [0, h_Z], max(Z - delta, 0)
/// afterwards. Always Y <= Z; for suitable Z and delta, A(Y) > A(Z).
inline ShiftDownResult shift_down_clamped(const PiecewiseLinear& z, double delta) {
    require(z.strictly_decreasing(), errc::bad_delta, "Z must be strictly decreasing");
    const double h = h_measure(z, 1.0);
    require(delta > 0.0 && delta < h, errc::bad_delta, "need 0 < delta < h_Z");
    ShiftDownResult out{shifted(z, -delta, /*clamp_at_zero=*/true), 0.0};
    const double hy = h_measure(out.adversary, 1.0);
    const IntegralCurve iz = z.integral();
    const auto J = [&](double x) { return x > 0.0 ? iz(x) / x : z.value_at_start(); };
    out.proof_delta_bound = 0.5 * (J(hy) - J(h));
    return out;
}

/// Adversary for (III.1) searches: Y = Z + delta on [0, a], then a steep
/// linear drop to zero at a + w, zero afterwards. Y >> Z on [0, a] while the
/// tail mass is wiped out.
inline PiecewiseLinear raise_then_drop(const PiecewiseLinear& z, double a, double delta, double w) {
    const double T = z.domain_end();
    require(a > 0.0 && a < T, errc::bad_window, "need 0 < a < T");
    require(delta > 0.0 && w > 0.0 && a + w <= T, errc::bad_window, "bad drop window");
    std::vector<Knot> pts;
    for (const Knot& k : z.knots())
        if (k.x < a) pts.push_back({k.x, k.y + delta});
    pts.push_back({a, z(a) + delta});
    pts.push_back({a + w, 0.0});
    if (a + w < T) pts.push_back({T, 0.0});
    return PiecewiseLinear::from_points(std::move(pts));
}

// ---------------------------------------------------------------------------
// Measure-level axiom checking
// ---------------------------------------------------------------------------

/// A single-valued measure under test; eval raises Error(undefined_measure)
/// where the papers say the measure is not defined.
struct MeasureUnderTest {
    std::string name;
    std::function<double(const PiecewiseLinear&)> eval;
};

inline MeasureUnderTest measure_from_kind(const MeasureKind& k) {
    return {k.name(), [k](const PiecewiseLinear& z) { return eval_measure(k, z); }};
}

struct SearchBudget {
    int candidates = 10000;
};

namespace detail {

/// Exact test for Y >> Z on [0, a] (strict at every point).
inline bool strictly_above_on_prefix(const PiecewiseLinear& y, const PiecewiseLinear& z, double a,
                                     double eps) {
    for (double x : merged_positions(y, z)) {
        if (x > a) break;
        if (y(x) <= z(x) + eps) return false;
    }
    return y(a) > z(a) + eps;
}

inline std::optional<double> try_eval(const MeasureUnderTest& m, const PiecewiseLinear& z) {
    try {
        return m.eval(z);
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace detail

/// Searches for Y with Y >> Z on [0, a] and m(Y) <= m(Z): family members
/// first, then generated raise_then_drop adversaries within the budget.
inline std::optional<Witness> find_iii1_counterexample_at(
    const MeasureUnderTest& m, const PiecewiseLinear& z, double a,
    const std::vector<PiecewiseLinear>& family, SearchBudget budget = {}, double eps = 1e-12) {
    const auto mz = detail::try_eval(m, z);
    if (!mz) return std::nullopt;
    const auto report = [&](const PiecewiseLinear& y, double my, const char* kind) {
        Witness w;
        w.description = std::string("Y >> Z on [0,a] with m(Y) <= m(Z) (") + kind + ")";
        w.functions = {z, y};
        w.params["a"] = a;
        w.params["m(Z)"] = *mz;
        w.params["m(Y)"] = my;
        return w;
    };
    for (const auto& y : family) {
        if (&y == &z) continue;
        if (!detail::strictly_above_on_prefix(y, z, a, eps)) continue;
        const auto my = detail::try_eval(m, y);
        if (my && *my <= *mz + eps) return report(y, *my, "family");
    }
    const double T = z.domain_end();
    const double scale = std::max(z.value_at_start(), 1.0);
    int tried = 0;
    for (int kd = 0; kd < 28 && tried < budget.candidates; ++kd) {
        const double delta = scale * std::ldexp(1.0, -kd);
        for (int kw = 1; kw < 40 && tried < budget.candidates; ++kw) {
            const double w = (T - a) * std::ldexp(1.0, -kw);
            if (w <= 0.0) break;
            ++tried;
            PiecewiseLinear y = raise_then_drop(z, a, delta, w);
            const auto my = detail::try_eval(m, y);
            if (my && *my <= *mz + eps) return report(y, *my, "raise_then_drop");
        }
    }
    return std::nullopt;
}

/// Searches for Y with Y << Z on [0, b] and m(Y) >= m(Z), using family
/// members and flatten_below adversaries.
inline std::optional<Witness> find_iii2_counterexample_at(
    const MeasureUnderTest& m, const PiecewiseLinear& z, double b,
    const std::vector<PiecewiseLinear>& family, SearchBudget budget = {}, double eps = 1e-12) {
    const auto mz = detail::try_eval(m, z);
    if (!mz) return std::nullopt;
    const auto report = [&](const PiecewiseLinear& y, double my, const char* kind) {
        Witness w;
        w.description = std::string("Y << Z on [0,b] with m(Y) >= m(Z) (") + kind + ")";
        w.functions = {z, y};
        w.params["b"] = b;
        w.params["m(Z)"] = *mz;
        w.params["m(Y)"] = my;
        return w;
    };
    for (const auto& y : family) {
        if (&y == &z) continue;
        if (!detail::strictly_above_on_prefix(z, y, b, eps)) continue;
        const auto my = detail::try_eval(m, y);
        if (my && *my >= *mz - eps) return report(y, *my, "family");
    }
    const double zb = z(b);
    if (zb <= 0.0) return std::nullopt;  // nothing fits strictly below
    int tried = 0;
    for (int k = 1; k < 60 && tried < budget.candidates; ++k) {
        for (double frac : {std::ldexp(1.0, -k), 1.0 - std::ldexp(1.0, -k)}) {
            const double delta = zb * frac;
            if (delta <= 0.0 || delta >= zb) continue;
            ++tried;
            PiecewiseLinear y = flatten_below(z, b, delta);
            const auto my = detail::try_eval(m, y);
            if (my && *my >= *mz - eps) return report(y, *my, "flatten_below");
        }
    }
    return std::nullopt;
}

namespace detail {

inline std::vector<double> window_grid(double T) {
    std::vector<double> as;
    for (double f : {0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95, 0.99})
        as.push_back(f * T);
    return as;
}

}  // namespace detail

/// Family-relative checker for the impact-measure requirements. Universal
/// claims are grid/search-based and the verdict notes say so.
inline AxiomVerdict check_measure_axiom(const MeasureUnderTest& m, AxiomId axiom,
                                        const std::vector<PiecewiseLinear>& family,
                                        SearchBudget budget = {}, std::uint64_t seed = 1,
                                        double eps = 1e-12) {
    require(!family.empty(), errc::empty_input, "empty family");
    AxiomVerdict v;
    v.axiom = std::string(m.name) + ":" + axiom_name(axiom);
    const double T = family.front().domain_end();
    Rng rng(seed);

    switch (axiom) {
        case AxiomId::I: {
            v.outcome = Outcome::holds_on_family;
            const auto m0 = detail::try_eval(m, PiecewiseLinear::zero(T));
            if (!m0 || std::abs(*m0) > eps) {
                v.outcome = Outcome::violated;
                Witness w;
                w.description = m0 ? "m(0) != 0" : "m undefined on the zero function";
                if (m0) w.params["m(0)"] = *m0;
                v.witnesses.push_back(std::move(w));
            }
            for (const auto& z : family) {
                if (z.is_zero()) continue;
                const auto mz = detail::try_eval(m, z);
                if (mz && *mz <= eps) {
                    v.outcome = Outcome::violated;
                    Witness w;
                    w.description = "m(Z) = 0 for nonzero Z";
                    w.functions = {z};
                    w.params["m(Z)"] = *mz;
                    v.witnesses.push_back(std::move(w));
                }
            }
            return v;
        }

        case AxiomId::II:
        case AxiomId::ax2: {
            v.outcome = Outcome::vacuous;
            std::vector<std::pair<const PiecewiseLinear*, const PiecewiseLinear*>> pairs;
            for (const auto& z : family)
                for (const auto& y : family)
                    if (&z != &y && detail::pointwise_leq(z, y)) pairs.push_back({&z, &y});
            std::vector<PiecewiseLinear> lifted;
            lifted.reserve(family.size());
            for (const auto& z : family) {
                lifted.push_back(shifted(z, rng.uniform(0.1, 1.0)));
                pairs.push_back({&z, &lifted.back()});
            }
            for (auto [zp, yp] : pairs) {
                if (v.outcome == Outcome::vacuous) v.outcome = Outcome::holds_on_family;
                const auto mz = detail::try_eval(m, *zp);
                const auto my = detail::try_eval(m, *yp);
                if (mz && my && *my < *mz - eps) {
                    v.outcome = Outcome::violated;
                    Witness w;
                    w.description = "Z <= Y but m(Z) > m(Y)";
                    w.functions = {*zp, *yp};
                    w.params["m(Z)"] = *mz;
                    w.params["m(Y)"] = *my;
                    v.witnesses.push_back(std::move(w));
                }
            }
            return v;
        }

        case AxiomId::III_1:
        case AxiomId::III_2: {
            v.outcome = Outcome::holds_on_family;
            const bool first = axiom == AxiomId::III_1;
            for (const auto& z : family) {
                if (!detail::try_eval(m, z)) continue;
                bool some_clean_window = false;
                std::optional<Witness> last;
                for (double a : detail::window_grid(T)) {
                    auto cf = first ? find_iii1_counterexample_at(m, z, a, family, budget, eps)
                                    : find_iii2_counterexample_at(m, z, a, family, budget, eps);
                    if (!cf) {
                        some_clean_window = true;
                        break;
                    }
                    last = std::move(cf);
                }
                if (!some_clean_window) {
                    v.outcome = Outcome::violated;
                    if (last) v.witnesses.push_back(std::move(*last));
                }
            }
            v.notes = "window grid over (0,T); search-based, family-relative";
            return v;
        }

        case AxiomId::III: {
            const AxiomVerdict a1 = check_measure_axiom(m, AxiomId::III_1, family, budget, seed, eps);
            const AxiomVerdict a2 = check_measure_axiom(m, AxiomId::III_2, family, budget, seed, eps);
            v.outcome = (a1.outcome == Outcome::violated || a2.outcome == Outcome::violated)
                            ? Outcome::violated
                            : Outcome::holds_on_family;
            v.witnesses = a1.witnesses;
            v.witnesses.insert(v.witnesses.end(), a2.witnesses.begin(), a2.witnesses.end());
            v.notes = "conjunction of III.1 and III.2";
            return v;
        }

        case AxiomId::III_prime: {
            const AxiomVerdict a1 = check_measure_axiom(m, AxiomId::III_1, family, budget, seed, eps);
            const AxiomVerdict a2 = check_measure_axiom(m, AxiomId::III_2, family, budget, seed, eps);
            if (a1.outcome == Outcome::holds_on_family || a2.outcome == Outcome::holds_on_family) {
                v.outcome = Outcome::holds_on_family;
                v.notes = "derived: (III.1 or III.2) implies (III')";
            } else {
                v.outcome = Outcome::undetermined;
                v.notes = "neither III.1 nor III.2 holds; (III') needs a per-function window "
                          "assignment the search cannot refute";
            }
            return v;
        }

        case AxiomId::IV: {
            v.outcome = Outcome::vacuous;
            for (const auto& z : family) {
                if (z.value_at_end() != 0.0) continue;
                const auto mz = detail::try_eval(m, z);
                if (!mz) continue;
                if (v.outcome == Outcome::vacuous) v.outcome = Outcome::holds_on_family;
                for (double f : {1.25, 1.5, 2.0}) {
                    const PiecewiseLinear ext = extend_with_zeros(z, f * z.domain_end());
                    const auto me = detail::try_eval(m, ext);
                    if (me && *me > *mz + eps) {
                        v.outcome = Outcome::violated;
                        Witness w;
                        w.description = "m grew under zero-extension";
                        w.functions = {z, ext};
                        w.params["m(Z)"] = *mz;
                        w.params["m(Y_Z)"] = *me;
                        v.witnesses.push_back(std::move(w));
                    }
                }
            }
            return v;
        }

        default:
            fail(errc::inapplicable_axiom,
                 std::string(axiom_name(axiom)) + " is not a single-measure requirement");
    }
}

// ---------------------------------------------------------------------------
// Strong-impact-measure axioms (ax.1 - ax.4)
// ---------------------------------------------------------------------------

namespace detail {

/// Exact test for M(Z) < M(Y) on ]0, T[, via strict positivity of the
/// piecewise-quadratic D = I_Y - I_Z on the open interval.
inline bool average_curve_strictly_below(const PiecewiseLinear& z, const PiecewiseLinear& y,
                                         double eps) {
    const double T = z.domain_end();
    const std::vector<double> xs = merged_positions(z, y);
    double d = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double u = xs[i], v = xs[i + 1];
        const double len = v - u;
        const double s0 = y(u) - z(u);
        const double curv = ((y(v) - y(u)) - (z(v) - z(u))) / len;
        if (curv != 0.0) {
            const double t_star = -s0 / curv;
            if (t_star > 0.0 && t_star < len) {
                const double x = u + t_star;
                const double val = d + t_star * (s0 + 0.5 * curv * t_star);
                if (x > 0.0 && x < T && val <= eps) return false;
            }
        }
        d += len * (s0 + 0.5 * curv * len);
        if (v < T && d <= eps) return false;
    }
    // behavior just after 0: D(0) = 0, so the leading coefficients decide
    const double s0 = y(0.0) - z(0.0);
    if (s0 < -eps) return false;
    if (std::abs(s0) <= eps) {
        const double x1 = xs[1];
        const double curv = ((y(x1) - y(0.0)) - (z(x1) - z(0.0))) / x1;
        if (curv <= eps) return false;
    }
    return true;
}

}  // namespace detail

/// ax.1/ax.2 direct, ax.3 over pairs with strictly ordered average curves,
/// ax.4 via a constant-window search over prefix-equal pairs.
inline std::vector<AxiomVerdict> check_strong_axioms(const MeasureUnderTest& m,
                                                     const std::vector<PiecewiseLinear>& family,
                                                     int grid = 257, double eps = 1e-12) {
    require(!family.empty(), errc::empty_input, "empty family");
    (void)grid;
    const double T = family.front().domain_end();
    std::vector<AxiomVerdict> out;

    {  // ax.1 == requirement (I)
        AxiomVerdict v = check_measure_axiom(m, AxiomId::I, family, {}, 1, eps);
        v.axiom = std::string(m.name) + ":ax.1";
        out.push_back(std::move(v));
    }
    {  // ax.2 == requirement (II)
        AxiomVerdict v = check_measure_axiom(m, AxiomId::II, family, {}, 1, eps);
        v.axiom = std::string(m.name) + ":ax.2";
        out.push_back(std::move(v));
    }

    {  // ax.3
        AxiomVerdict v;
        v.axiom = std::string(m.name) + ":ax.3";
        v.outcome = Outcome::vacuous;
        for (const auto& z : family) {
            for (const auto& y : family) {
                if (&z == &y) continue;
                if (!detail::average_curve_strictly_below(z, y, eps)) continue;
                if (v.outcome == Outcome::vacuous) v.outcome = Outcome::holds_on_family;
                const auto mz = detail::try_eval(m, z);
                const auto my = detail::try_eval(m, y);
                if (!mz || !my) continue;
                if (!(*mz < *my - eps)) {
                    v.outcome = Outcome::violated;
                    Witness w;
                    w.description = "M(Z) < M(Y) on ]0,T[ but m(Z) >= m(Y)";
                    w.functions = {z, y};
                    w.params["m(Z)"] = *mz;
                    w.params["m(Y)"] = *my;
                    v.witnesses.push_back(std::move(w));
                }
            }
        }
        out.push_back(std::move(v));
    }

    {  // ax.4: look for one window length that works for the whole family
        AxiomVerdict v;
        v.axiom = std::string(m.name) + ":ax.4";
        struct PrefixPair { std::size_t i, j; double prefix; };
        std::vector<PrefixPair> pairs;
        double max_prefix = 0.0;
        for (std::size_t i = 0; i < family.size(); ++i)
            for (std::size_t j = i + 1; j < family.size(); ++j) {
                if (pl_equal(family[i], family[j])) continue;
                const double p = detail::equal_prefix_end(family[i], family[j]);
                if (p > 0.0) {
                    pairs.push_back({i, j, p});
                    max_prefix = std::max(max_prefix, p);
                }
            }
        const auto feasible = [&](double a) {
            for (const auto& pp : pairs) {
                if (pp.prefix < a) continue;  // antecedent Y = Z on [0, a] not met
                const auto mi = detail::try_eval(m, family[pp.i]);
                const auto mj = detail::try_eval(m, family[pp.j]);
                if (!mi || !mj) return false;
                if (std::abs(*mi - *mj) > 1e-9 * (1.0 + std::abs(*mi))) return false;
            }
            return true;
        };
        std::vector<double> candidates;
        for (const auto& pp : pairs) candidates.push_back(pp.prefix);
        std::sort(candidates.begin(), candidates.end());
        v.outcome = Outcome::vacuous;
        for (double a : candidates) {
            if (a <= 0.0 || a >= T) continue;
            if (feasible(a)) {
                v.outcome = Outcome::holds_on_family;
                v.notes = "window a = " + std::to_string(a) + " works for every pair";
                break;
            }
        }
        if (v.outcome == Outcome::vacuous) {
            if (max_prefix > 0.0 && max_prefix < T)
                v.notes = "a just above the longest equal prefix voids every antecedent "
                          "(finite families cannot refute ax.4)";
            else
                v.notes = "no prefix-equal pairs in the family";
        }
        out.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bundle properties (CES, PED, W1, W2, WL, IB, GIB)
// ---------------------------------------------------------------------------

inline AxiomVerdict check_bundle_property(const BundleSpec& b, AxiomId prop,
                                          const std::vector<PiecewiseLinear>& family,
                                          int grid = 129, double eps = 1e-12) {
    require(!family.empty(), errc::empty_input, "empty family");
    const double T = family.front().domain_end();
    AxiomVerdict v;
    v.axiom = b.name() + ":" + axiom_name(prop);
    v.outcome = Outcome::vacuous;

    const auto exists_strict_theta = [&](const PiecewiseLinear& z, const PiecewiseLinear& y) {
        for (double th : detail::theta_prefix_samples(b, z, y, T * (1.0 - 1e-9), grid)) {
            try {
                if (b.eval(z, th) < b.eval(y, th) - eps) return true;
            } catch (const Error&) {
            }
        }
        return false;
    };
    const auto all_theta_equal = [&](const PiecewiseLinear& z, const PiecewiseLinear& y) {
        for (double th : detail::theta_prefix_samples(b, z, y, T * (1.0 - 1e-9), grid)) {
            try {
                if (std::abs(b.eval(z, th) - b.eval(y, th)) > eps) return false;
            } catch (const Error&) {
            }
        }
        return true;
    };
    const auto record = [&](const PiecewiseLinear& z, const PiecewiseLinear& y, const char* desc) {
        v.outcome = Outcome::violated;
        Witness w;
        w.description = desc;
        w.functions = {z, y};
        v.witnesses.push_back(std::move(w));
    };

    switch (prop) {
        case AxiomId::CES: {
            for (std::size_t i = 0; i < family.size(); ++i)
                for (std::size_t j = i + 1; j < family.size(); ++j) {
                    if (!all_theta_equal(family[i], family[j])) continue;
                    if (v.outcome == Outcome::vacuous) v.outcome = Outcome::holds_on_family;
                    if (!pl_equal(family[i], family[j]))
                        record(family[i], family[j], "m_theta equal on the grid but Z != Y");
                }
            v.notes = "grid-based equality; sound for refutation only";
            return v;
        }

        case AxiomId::PED: {
            if (!b.ped_descriptor()) {
                v.outcome = Outcome::undetermined;
                v.notes = "no PED descriptor declared; treated as non-PED in the matrix";
                return v;
            }
            v.outcome = Outcome::holds_on_family;
            const auto& f = b.ped_descriptor()->f;
            for (const auto& z : family) {
                if (z.is_zero()) continue;
                for (double th : detail::theta_prefix_samples(b, z, z, T * (1.0 - 1e-9), grid)) {
                    double x;
                    try {
                        x = b.eval(z, th);
                    } catch (const Error&) {
                        continue;
                    }
                    if (x <= 0.0 || x >= T) continue;
                    if (std::abs(z(x) - f(th, x)) > 1e-8 * (1.0 + std::abs(z(x)))) {
                        record(z, z, "Z(m_theta(Z)) != f(theta, m_theta(Z))");
                        v.witnesses.back().params["theta"] = th;
                        v.witnesses.back().params["x"] = x;
                    }
                }
            }
            v.notes = "declared descriptor verified on samples, not inferred";
            return v;
        }

        case AxiomId::W1: {
            for (const auto& z : family)
                for (const auto& y : family) {
                    if (&z == &y || pl_equal(z, y) || !detail::pointwise_leq(z, y)) continue;
                    if (v.outcome == Outcome::vacuous) v.outcome = Outcome::holds_on_family;
                    if (!exists_strict_theta(z, y))
                        record(z, y, "Z <= Y, Z != Y, but no theta with m_theta(Z) < m_theta(Y)");
                }
            v.notes = "theta existence searched on the grid";
            return v;
        }

        case AxiomId::W2: {
            for (const auto& z : family)
                for (const auto& y : family) {
                    if (&z == &y) continue;
                    bool somewhere_less = false;
                    for (double x : detail::merged_positions(z, y))
                        if (z(x) < y(x) - eps) { somewhere_less = true; break; }
                    if (!somewhere_less) continue;
                    if (v.outcome == Outcome::vacuous) v.outcome = Outcome::holds_on_family;
                    if (!exists_strict_theta(z, y))
                        record(z, y, "Z(x) < Y(x) somewhere but no theta with m_theta(Z) < m_theta(Y)");
                }
            v.notes = "theta existence searched on the grid";
            return v;
        }

        case AxiomId::WL: {
            for (const auto& z : family)
                for (const auto& y : family) {
                    if (&z == &y) continue;
                    if (dominates_nn(z, y, eps).relation != DomRelation::LessNeq) continue;
                    if (v.outcome == Outcome::vacuous) v.outcome = Outcome::holds_on_family;
                    if (!exists_strict_theta(z, y))
                        record(z, y, "Z -<(!=) Y but no theta with m_theta(Z) < m_theta(Y)");
                }
            v.notes = "theta existence searched on the grid";
            return v;
        }

        case AxiomId::IB: {
            const auto axs = check_bundle_axioms(b, family, grid, eps);
            for (const auto& a : axs)
                if (a.outcome == Outcome::violated) {
                    v.outcome = Outcome::violated;
                    v.witnesses = a.witnesses;
                    v.notes = "failed " + a.axiom;
                    return v;
                }
            v.outcome = axs[2].outcome;  // AX.3 carries the discriminating antecedent
            v.notes = v.outcome == Outcome::vacuous ? "AX.3 antecedent never satisfied" : "";
            return v;
        }

        case AxiomId::GIB: {
            for (const auto& z : family) {
                for (const auto& y : family) {
                    if (&z == &y || pl_equal(z, y)) continue;
                    // strict-prefix pairs: Z <_a Y
                    const double x0 = detail::strict_prefix_end(z, y);
                    if (x0 > 0.0) {
                        if (v.outcome == Outcome::vacuous) v.outcome = Outcome::holds_on_family;
                        for (double frac : {0.25, 0.5, 0.75, 0.95}) {
                            const double a = std::min(x0 * frac, T * (1.0 - 1e-9));
                            if (a <= 0.0) continue;
                            const auto c = bundle_less_a(b, z, y, a, grid, eps);
                            if (c.relation == BundleComparison::Relation::NotLess) {
                                record(z, y, "Z <_a Y but not m(Z) <_a m(Y)");
                                v.witnesses.back().params["a"] = a;
                                if (!c.witnesses.empty())
                                    v.witnesses.back().params["theta"] = c.witnesses.front()[0];
                            }
                        }
                    }
                    // prefix-equal-then-strict pairs: Z <_{a,b} Y
                    const double ae = detail::equal_prefix_end(z, y);
                    if (ae >= 0.0 && ae < T) {
                        double bend = ae;
                        const std::vector<double> xs = detail::merged_positions(z, y);
                        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
                            if (xs[i + 1] <= ae) continue;
                            const double lo = std::max(xs[i], ae);
                            const double du = y(lo) - z(lo);
                            const double dv = y(xs[i + 1]) - z(xs[i + 1]);
                            if (dv > eps) { bend = xs[i + 1]; continue; }
                            if (du > eps && dv <= eps)
                                bend = lo + (xs[i + 1] - lo) * du / (du - dv);
                            break;
                        }
                        if (bend > ae + eps) {
                            if (v.outcome == Outcome::vacuous) v.outcome = Outcome::holds_on_family;
                            for (double frac : {0.5, 0.95}) {
                                const double bb = ae + (bend - ae) * frac;
                                const auto c = bundle_less_ab(b, z, y, ae, bb, grid, eps);
                                if (c.relation == BundleComparison::Relation::NotLess) {
                                    record(z, y, "Z <_{a,b} Y but not m(Z) <_{a,b} m(Y)");
                                    v.witnesses.back().params["a"] = ae;
                                    v.witnesses.back().params["b"] = bb;
                                    if (!c.witnesses.empty())
                                        v.witnesses.back().params["theta"] = c.witnesses.front()[0];
                                }
                            }
                        }
                    }
                }
            }
            v.notes = "prefix windows sampled; grid-based";
            return v;
        }

        default:
            fail(errc::inapplicable_axiom,
                 std::string(axiom_name(prop)) + " is not a bundle property");
    }
}

}  // namespace impact
