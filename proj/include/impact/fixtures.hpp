#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "impact/axiom_lab.hpp"
#include "impact/bundles.hpp"
#include "impact/dominance.hpp"
#include "impact/measures.hpp"
#include "impact/piecewise_linear.hpp"
#include "impact/verdict.hpp"

namespace impact {

// ---------------------------------------------------------------------------
// The fixture battery: thirteen self-contained constructions, each carrying
// its canonical parameters and the documented expected outcome.
// ---------------------------------------------------------------------------

enum class FixtureId {
    F1_discrete_mean_window,
    F2_a_index_discrete,
    F3_h_not_strong,
    F4_htheta_not_strong,
    F5_percentile_not_strong,
    F6_r2_strongness_recheck,
    F7_sum_bundle_not_global,
    F8_W1_without_WL,
    F9_CES_without_W2,
    F10_integral_measure_windows,
    F11_cd_localization,
    F12_scaled_peak_violates_IV,
    F13_radix_axioms
};

inline const char* fixture_code(FixtureId id) {
    switch (id) {
        case FixtureId::F1_discrete_mean_window: return "F1";
        case FixtureId::F2_a_index_discrete: return "F2";
        case FixtureId::F3_h_not_strong: return "F3";
        case FixtureId::F4_htheta_not_strong: return "F4";
        case FixtureId::F5_percentile_not_strong: return "F5";
        case FixtureId::F6_r2_strongness_recheck: return "F6";
        case FixtureId::F7_sum_bundle_not_global: return "F7";
        case FixtureId::F8_W1_without_WL: return "F8";
        case FixtureId::F9_CES_without_W2: return "F9";
        case FixtureId::F10_integral_measure_windows: return "F10";
        case FixtureId::F11_cd_localization: return "F11";
        case FixtureId::F12_scaled_peak_violates_IV: return "F12";
        case FixtureId::F13_radix_axioms: return "F13";
    }
    return "?";
}

inline std::vector<FixtureId> all_fixtures() {
    return {FixtureId::F1_discrete_mean_window, FixtureId::F2_a_index_discrete,
            FixtureId::F3_h_not_strong,         FixtureId::F4_htheta_not_strong,
            FixtureId::F5_percentile_not_strong, FixtureId::F6_r2_strongness_recheck,
            FixtureId::F7_sum_bundle_not_global, FixtureId::F8_W1_without_WL,
            FixtureId::F9_CES_without_W2,        FixtureId::F10_integral_measure_windows,
            FixtureId::F11_cd_localization,      FixtureId::F12_scaled_peak_violates_IV,
            FixtureId::F13_radix_axioms};
}

struct FixtureCheck {
    std::string name;
    Outcome expected = Outcome::holds_on_family;
    AxiomVerdict verdict;
    bool passed = false;
};

struct FixtureResult {
    FixtureId id{};
    std::string title;
    std::vector<FixtureCheck> checks;
    std::string notes;
    bool passed = false;

    void add(std::string name, Outcome expected, AxiomVerdict v) {
        FixtureCheck c;
        c.name = std::move(name);
        c.expected = expected;
        c.passed = v.outcome == expected;
        c.verdict = std::move(v);
        checks.push_back(std::move(c));
    }
    void add_bool(std::string name, bool ok, std::string note = "") {
        FixtureCheck c;
        c.name = std::move(name);
        c.expected = Outcome::holds_on_family;
        c.verdict.axiom = c.name;
        c.verdict.outcome = ok ? Outcome::holds_on_family : Outcome::violated;
        c.verdict.notes = std::move(note);
        c.passed = ok;
        checks.push_back(std::move(c));
    }
    void finish() {
        passed = true;
        for (const auto& c : checks) passed = passed && c.passed;
    }
};

namespace fixture_detail {

inline bool close(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

/// The sum bundle m_theta(X) = X(theta) + X(T) with identity scanning.
inline BundleSpec sum_bundle() {
    return BundleSpec::custom(
        "X(theta)+X(T)",
        [](const PiecewiseLinear& z, double th) { return z(th) + z.value_at_end(); },
        [](const PiecewiseLinear&, double x) { return x; }, PsiDirection::Increasing,
        [](const PiecewiseLinear& z) { return ParamInterval{0.0, z.domain_end(), false, false}; });
}

/// Constant-in-theta probe m_theta(X) = X(T/4) with identity scanning.
inline BundleSpec quarter_probe_bundle() {
    return BundleSpec::custom(
        "X(T/4)",
        [](const PiecewiseLinear& z, double) { return z(z.domain_end() / 4.0); },
        [](const PiecewiseLinear&, double x) { return x; }, PsiDirection::Increasing,
        [](const PiecewiseLinear& z) { return ParamInterval{0.0, z.domain_end(), false, false}; });
}

/// Constant-in-theta probe m_theta(X) = X(0).
inline BundleSpec start_value_bundle() {
    return BundleSpec::custom(
        "X(0)",
        [](const PiecewiseLinear& z, double) { return z.value_at_start(); },
        [](const PiecewiseLinear&, double x) { return x; }, PsiDirection::Increasing,
        [](const PiecewiseLinear& z) { return ParamInterval{0.0, z.domain_end(), false, false}; });
}

/// Example-A pair: Z(x) = T - x/2 against the flat-then-steep Y, with
/// canonical parameters T = 4, theta0 = 3, b = 1.
inline std::pair<PiecewiseLinear, PiecewiseLinear> example_a_pair(double T = 4.0,
                                                                  double theta0 = 3.0,
                                                                  double b = 1.0) {
    PiecewiseLinear z = PiecewiseLinear::from_points({{0.0, T}, {T, T / 2.0}});
    PiecewiseLinear y = PiecewiseLinear::from_points({{0.0, T}, {theta0, T}, {T, T / 2.0 - b}});
    return {z, y};
}

/// Quarter circle sqrt(T^2 - x^2) sampled at `segments` chords.
inline PiecewiseLinear quarter_circle(double T, int segments = 512) {
    std::vector<Knot> pts;
    pts.reserve(static_cast<std::size_t>(segments) + 1);
    for (int i = 0; i <= segments; ++i) {
        const double x = T * static_cast<double>(i) / segments;
        pts.push_back({x, std::sqrt(std::max(T * T - x * x, 0.0))});
    }
    pts.back().y = 0.0;
    return PiecewiseLinear::from_points(std::move(pts));
}

}  // namespace fixture_detail

inline FixtureResult run_fixture(FixtureId id, std::uint64_t seed = 20220913,
                                 SearchBudget budget = {}) {
    FixtureResult r;
    r.id = id;
    using fixture_detail::close;

    switch (id) {
        case FixtureId::F1_discrete_mean_window: {
            r.title = "full mean has no left window: (10,10,10,5) vs (11,11,11,1)";
            const DiscreteProfile X = DiscreteProfile::from_counts({10, 10, 10, 5});
            const DiscreteProfile Y = DiscreteProfile::from_counts({11, 11, 11, 1});
            const DiscreteMeasures mx = discrete_measures(X), my = discrete_measures(Y);
            r.add_bool("mu(X) = 8.75", close(mx.mu(4), 8.75));
            r.add_bool("mu(Y) = 8.5", close(my.mu(4), 8.5));
            r.add_bool("Y larger on every rank window theta = 1..3",
                       my.mu(1) > mx.mu(1) && my.mu(2) > mx.mu(2) && my.mu(3) > mx.mu(3) &&
                           my.total(1) > mx.total(1) && my.total(2) > mx.total(2) &&
                           my.total(3) > mx.total(3));
            r.add_bool("yet mu(Y) < mu(X)", my.mu(4) < mx.mu(4));
            const std::vector<PiecewiseLinear> fam{to_continuous(X), to_continuous(Y)};
            r.add("III.1 for the full mean on the embedded pair", Outcome::violated,
                  check_measure_axiom(measure_from_kind(MeasureKind::truncated_average(4.0)),
                                      AxiomId::III_1, fam, budget, seed));
            break;
        }

        case FixtureId::F2_a_index_discrete: {
            r.title = "A-index reversal: (10,2) vs (10,1)";
            const DiscreteMeasures m1 = discrete_measures(DiscreteProfile::from_counts({10, 2}));
            const DiscreteMeasures m2 = discrete_measures(DiscreteProfile::from_counts({10, 1}));
            r.add_bool("h = 2 vs 1", close(m1.h, 2.0) && close(m2.h, 1.0));
            r.add_bool("A = 6 vs 10", m1.a && m2.a && close(*m1.a, 6.0) && close(*m2.a, 10.0));
            r.add_bool("smaller profile gets the larger A", *m2.a > *m1.a);
            break;
        }

        case FixtureId::F3_h_not_strong: {
            r.title = "h-index ignores the strong impact order";
            const PiecewiseLinear z1 =
                PiecewiseLinear::from_points({{0, 10}, {3, 2}, {4, 2}});
            const PiecewiseLinear z2 =
                PiecewiseLinear::from_points({{0, 4}, {3, 3}, {4, 2}});
            r.add_bool("h(Z2) = 3", close(h_measure(z2), 3.0, 1e-12));
            r.add_bool("h(Z1) = 30/11", close(h_measure(z1), 30.0 / 11.0, 1e-12));
            // intersection of the two carriers
            const double cross = (10.0 - 4.0) / (8.0 / 3.0 - 1.0 / 3.0);
            r.add_bool("curves cross at 18/7", close(cross, 18.0 / 7.0, 1e-12) &&
                                                   close(z1(cross), z2(cross), 1e-12));
            bool ordered = true;
            for (int i = 0; i <= 1000; ++i) {
                const double x = 4.0 * i / 1000.0;
                if (!(average_curve(z2, x) < average_curve(z1, x))) ordered = false;
            }
            r.add_bool("M(Z2) < M(Z1) on a 1000-point grid", ordered);
            auto verdicts = check_strong_axioms(measure_from_kind(MeasureKind::h()), {z1, z2});
            r.add("ax.3 for h", Outcome::violated, verdicts[2]);
            break;
        }

        case FixtureId::F4_htheta_not_strong: {
            r.title = "generalized h ties under a strictly larger average curve";
            const PiecewiseLinear z = PiecewiseLinear::linear_family(10.0, 10.0);
            const PiecewiseLinear y =
                PiecewiseLinear::from_points({{0, 12}, {10.0 / 3.0, 20.0 / 3.0}, {10, 0}});
            r.add_bool("h_2(Z) = h_2(Y) = 10/3",
                       close(h_measure(z, 2.0), 10.0 / 3.0, 1e-12) &&
                           close(h_measure(y, 2.0), 10.0 / 3.0, 1e-12));
            auto verdicts = check_strong_axioms(measure_from_kind(MeasureKind::h(2.0)), {z, y});
            r.add("ax.3 for h_2", Outcome::violated, verdicts[2]);
            break;
        }

        case FixtureId::F5_percentile_not_strong: {
            r.title = "percentile ties under a strictly larger average curve";
            const PiecewiseLinear z = PiecewiseLinear::linear_family(10.0, 10.0);
            const PiecewiseLinear y = PiecewiseLinear::from_points({{0, 12}, {5, 5}, {10, 0}});
            r.add_bool("P_0.5(Z) = P_0.5(Y) = 5",
                       close(percentile(z, 0.5), 5.0, 1e-12) && close(percentile(y, 0.5), 5.0, 1e-12));
            auto verdicts =
                check_strong_axioms(measure_from_kind(MeasureKind::percentile(0.5)), {z, y});
            r.add("ax.3 for P_0.5", Outcome::violated, verdicts[2]);
            break;
        }

        case FixtureId::F6_r2_strongness_recheck: {
            r.title = "R^2 strongness re-check: documented values vs definitions";
            const PiecewiseLinear z3 = PiecewiseLinear::from_points({{0, 8}, {2, 2}, {4, 2}});
            const PiecewiseLinear z4 = PiecewiseLinear::constant(3.0, 4.0);
            const double r2z3 = z3.integral()(h_measure(z3));
            const double r2z4 = z4.integral()(h_measure(z4));
            r.add_bool("recomputed R^2(Z3) = 10 (documented as 9)", close(r2z3, 10.0));
            r.add_bool("recomputed R^2(Z4) = 9 (documented as 10)", close(r2z4, 9.0));
            const bool m_ordered = detail::average_curve_strictly_below(z4, z3, 1e-12);
            r.add_bool("M(Z4) < M(Z3) holds, and R^2(Z4) < R^2(Z3): the pair does NOT violate ax.3",
                       m_ordered && r2z4 < r2z3);
            // bounded search for a genuine ax.3 violation by R^2
            AxiomVerdict search;
            search.axiom = "r:1:ax.3 (bounded search)";
            search.outcome = Outcome::undetermined;
            Rng rng(seed);
            const double T = 10.0;
            for (int it = 0; it < budget.candidates && search.outcome != Outcome::violated; ++it) {
                double c, tilt, s, q, u;
                if (it == 0) { c = 6.0; tilt = 0.05; s = 5.0; q = 9.2; u = 0.1; }
                else {
                    c = rng.uniform(4.0, 8.0);
                    tilt = rng.uniform(0.01, 0.1);
                    s = rng.uniform(2.0, 7.0);
                    q = rng.uniform(s + 0.5, 12.0);
                    u = rng.uniform(0.01, std::min(0.5, s));
                }
                const PiecewiseLinear zc =
                    PiecewiseLinear::from_points({{0.0, c + tilt}, {T, c - tilt}});
                const PiecewiseLinear yf =
                    PiecewiseLinear::from_points({{0.0, q}, {s, s}, {T, s - u}});
                if (!detail::average_curve_strictly_below(zc, yf, 1e-12)) continue;
                const double rz = zc.integral()(h_measure(zc));
                const double ry = yf.integral()(h_measure(yf));
                if (rz >= ry + 1e-9) {
                    search.outcome = Outcome::violated;
                    Witness w;
                    w.description = "M(Z) < M(Y) on ]0,T[ but R^2(Z) >= R^2(Y)";
                    w.functions = {zc, yf};
                    w.params["R2(Z)"] = rz;
                    w.params["R2(Y)"] = ry;
                    search.witnesses.push_back(std::move(w));
                }
            }
            r.add("bounded counterexample search for ax.3 of R^2", Outcome::violated, search);
            r.notes =
                "documented example prints R^2 values swapped relative to the definitions; with "
                "the definitions applied literally the printed pair is consistent with ax.3. Both "
                "readings reported; a genuine violation is searched for separately.";
            break;
        }

        case FixtureId::F7_sum_bundle_not_global: {
            r.title = "endpoint-sum bundle: impact bundle but not global (T=4, theta0=3, b=1)";
            const auto [z, y] = fixture_detail::example_a_pair();
            r.add_bool("Z strictly dominated by Y (18 > 8)",
                       dominates_nn(z, y).relation == DomRelation::LessNeq &&
                           3.0 * (4.0 + 2.0) > 2.0 * 4.0);
            const BundleSpec b = fixture_detail::sum_bundle();
            r.add("IB for the endpoint sum", Outcome::vacuous,
                  check_bundle_property(b, AxiomId::IB, {z, y}));
            r.add("GIB for the endpoint sum", Outcome::violated,
                  check_bundle_property(b, AxiomId::GIB, {z, y}));
            const auto c = bundle_less_ab(b, z, y, 0.0, 1.0);
            r.add_bool("witness at theta = 0: m0(Z) = 6 > 5 = m0(Y)",
                       c.relation == BundleComparison::Relation::NotLess && !c.witnesses.empty() &&
                           close(c.witnesses.front()[1], 6.0) && close(c.witnesses.front()[2], 5.0));
            break;
        }

        case FixtureId::F8_W1_without_WL: {
            r.title = "W1 without WL: flat line vs quarter circle (T=1, alpha=0.3)";
            const double T = 1.0, alpha = 0.3;
            const PiecewiseLinear z = PiecewiseLinear::constant((1.0 - alpha) * T, T);
            const PiecewiseLinear y = fixture_detail::quarter_circle(T);
            r.add_bool("alpha inside (1 - pi/4, 1/2)", alpha > 1.0 - 3.14159265358979 / 4.0 && alpha < 0.5);
            r.add_bool("Z strictly dominated by Y",
                       dominates_nn(z, y).relation == DomRelation::LessNeq);
            const BundleSpec b = fixture_detail::sum_bundle();
            r.add("W1 (no comparable pairs in this family)", Outcome::vacuous,
                  check_bundle_property(b, AxiomId::W1, {z, y}));
            r.add("WL for the endpoint sum", Outcome::violated,
                  check_bundle_property(b, AxiomId::WL, {z, y}));
            break;
        }

        case FixtureId::F9_CES_without_W2: {
            r.title = "CES without W2: averages on 10-x vs 5-0.3x";
            const PiecewiseLinear z = PiecewiseLinear::from_points({{0, 10}, {10, 0}});
            const PiecewiseLinear y = PiecewiseLinear::from_points({{0, 5}, {10, 2}});
            const BundleSpec b = BundleSpec::average();
            bool all_above = true;
            for (int i = 0; i <= 100; ++i) {
                const double th = 10.0 * i / 100.0;
                if (!(average_curve(z, th) > average_curve(y, th))) all_above = false;
            }
            r.add_bool("mu_theta(Z) > mu_theta(Y) for every theta", all_above);
            r.add_bool("yet Z(x) < Y(x) somewhere", z(9.5) < y(9.5));
            r.add("CES for the average bundle (antecedent never met here)", Outcome::vacuous,
                  check_bundle_property(b, AxiomId::CES, {z, y}));
            r.add("W2 for the average bundle", Outcome::violated,
                  check_bundle_property(b, AxiomId::W2, {z, y}));
            break;
        }

        case FixtureId::F10_integral_measure_windows: {
            r.title = "total-items measure: one family gives III.1 without III.2, another the reverse";
            const double T = 10.0;
            const MeasureUnderTest m = measure_from_kind(MeasureKind::truncated_total(T));
            // family A: the diagonal line, zero, and flat-tailed lines Y_S
            const PiecewiseLinear diag = PiecewiseLinear::linear_family(T, T);
            std::vector<PiecewiseLinear> famA{diag, PiecewiseLinear::zero(T)};
            std::vector<double> svals{6.0, 7.0, 8.0, 9.0};
            std::vector<double> awin;
            for (double S : svals) {
                const double R = (T - std::sqrt(2.0 * T * (T - S))) * S / T;
                famA.push_back(PiecewiseLinear::from_points({{0, S}, {R, S - R}, {T, S - R}}));
                awin.push_back(T - (S - R) / 2.0);
            }
            bool iii1_ok = true;
            for (std::size_t i = 0; i < svals.size(); ++i) {
                // the claim is family-relative, so the search stays inside the family
                const auto cf =
                    find_iii1_counterexample_at(m, famA[i + 2], awin[i], famA, SearchBudget{0});
                if (cf) iii1_ok = false;
            }
            r.add_bool("III.1 clean at the designated windows of the flat-tailed family", iii1_ok);
            for (std::size_t i = 0; i < svals.size(); ++i)
                r.add_bool("total(Y_" + std::to_string(static_cast<int>(svals[i])) +
                               ") > total(diagonal)",
                           m.eval(famA[i + 2]) > m.eval(diag));
            bool iii2_fails_everywhere = true;
            for (double bwin : {0.3 * T, 0.6 * T, 0.9 * T}) {
                // pick S with T - S + R_S beyond the window and check the reversal
                bool found = false;
                for (double S = 0.9 * T; S < T; S += 0.01 * T) {
                    const double R = (T - std::sqrt(2.0 * T * (T - S))) * S / T;
                    if (T - S + R <= bwin) continue;
                    const PiecewiseLinear ys =
                        PiecewiseLinear::from_points({{0, S}, {R, S - R}, {T, S - R}});
                    if (detail::strictly_above_on_prefix(diag, ys, bwin, 1e-12) &&
                        m.eval(ys) > m.eval(diag))
                        found = true;
                    if (found) break;
                }
                if (!found) iii2_fails_everywhere = false;
            }
            r.add_bool("III.2 refuted at every window for the diagonal", iii2_fails_everywhere);

            // family B: constants vs plateau-ramp-plateau shapes
            const double S0 = 6.0;
            const PiecewiseLinear flat = PiecewiseLinear::constant(S0, T);
            bool iii1_fails_everywhere = true;
            for (double a : {0.2 * T, 0.5 * T, 0.8 * T}) {
                const double bound = 2.0 * S0 * (T - a) / (S0 + 2.0 * T);
                const double delta = std::min(bound / 2.0, (T - a) / 3.0 * 0.9);
                const PiecewiseLinear ya = PiecewiseLinear::from_points(
                    {{0, S0 + delta}, {a, S0 + delta}, {a + delta, delta}, {T, delta}});
                const bool above = detail::strictly_above_on_prefix(ya, flat, a, 1e-12);
                if (!(above && m.eval(ya) < m.eval(flat))) iii1_fails_everywhere = false;
            }
            r.add_bool("III.1 refuted at every window for the constant", iii1_fails_everywhere);
            break;
        }

        case FixtureId::F11_cd_localization: {
            r.title = "c/d localization values";
            const PiecewiseLinear z = PiecewiseLinear::linear_family(10.0, 10.0);
            const auto lh = localization(MeasureKind::h(), z);
            r.add_bool("h: c = d = 5", lh.c && lh.d && close(*lh.c, 5.0) && close(*lh.d, 5.0));
            const auto lg = localization(MeasureKind::g(), z);
            r.add_bool("g: c = d = 20/3",
                       lg.c && lg.d && close(*lg.c, 20.0 / 3.0) && close(*lg.d, 20.0 / 3.0));
            const auto lr = localization(MeasureKind::r(), z);
            r.add_bool("R: c = d = h = 5", lr.c && lr.d && close(*lr.c, 5.0) && close(*lr.d, 5.0));
            const auto lm = localization(MeasureKind::truncated_average(3.0), z);
            r.add_bool("mu_3: c = d = 3", lm.c && lm.d && close(*lm.c, 3.0) && close(*lm.d, 3.0));
            const auto lp = localization(MeasureKind::percentile(0.3), z);
            r.add_bool("P_0.3: c = d = 3", lp.c && lp.d && close(*lp.c, 3.0) && close(*lp.d, 3.0));
            const auto la = localization(MeasureKind::a(), z);
            r.add_bool("A: C and D empty", la.c_empty && la.d_empty);
            const PiecewiseLinear plat =
                PiecewiseLinear::from_points({{0, 8}, {2, 4}, {4, 4}, {8, 0}});
            const auto lplat = localization(MeasureKind::h(), plat);
            r.add_bool("plateau: c = 4, d = 2",
                       lplat.c && lplat.d && close(*lplat.c, 4.0) && close(*lplat.d, 2.0));
            break;
        }

        case FixtureId::F12_scaled_peak_violates_IV: {
            r.title = "m(Z) = T * Z(0) fails the zero-extension requirement";
            const PiecewiseLinear z = PiecewiseLinear::linear_family(10.0, 10.0);
            const MeasureUnderTest m{
                "T*Z(0)", [](const PiecewiseLinear& f) { return f.domain_end() * f.value_at_start(); }};
            r.add("IV for T*Z(0)", Outcome::violated,
                  check_measure_axiom(m, AxiomId::IV, {z}, budget, seed));
            const PiecewiseLinear ext = extend_with_zeros(z, 20.0);
            r.add_bool("extension doubles the value: 200 > 100",
                       close(m.eval(ext), 200.0) && close(m.eval(z), 100.0));
            break;
        }

        case FixtureId::F13_radix_axioms: {
            r.title = "binary radix sheaf: AX.1-AX.4 by exhaustion (length <= 4)";
            const int c = 1;
            bool ax1 = true, ax2 = true, ax3 = true, ax4 = true;
            for (int len = 1; len <= 4; ++len) {
                const int count = 1 << len;
                std::vector<std::vector<int>> all;
                for (int v = 0; v < count; ++v) {
                    std::vector<int> d(static_cast<std::size_t>(len));
                    for (int j = 0; j < len; ++j) d[static_cast<std::size_t>(j)] = (v >> j) & 1;
                    all.push_back(std::move(d));
                }
                const std::vector<int> zero(static_cast<std::size_t>(len), 0);
                for (std::size_t th = 1; th <= static_cast<std::size_t>(len); ++th)
                    if (radix_measure(zero, c, th) != 0.0) ax1 = false;
                for (const auto& a : all)
                    for (const auto& b : all) {
                        bool geq = true, strict_all = true, eq_prefix;
                        for (int j = 0; j < len; ++j) {
                            if (a[static_cast<std::size_t>(j)] < b[static_cast<std::size_t>(j)]) geq = false;
                            if (a[static_cast<std::size_t>(j)] <= b[static_cast<std::size_t>(j)])
                                strict_all = false;
                        }
                        for (std::size_t th = 1; th <= static_cast<std::size_t>(len); ++th) {
                            const double ma = radix_measure(a, c, th);
                            const double mb = radix_measure(b, c, th);
                            if (geq && ma < mb) ax2 = false;
                            // AX.3: strictly larger digits on 1..theta force strict order
                            bool strict_prefix = true;
                            for (std::size_t j = 0; j < th; ++j)
                                if (a[j] <= b[j]) strict_prefix = false;
                            if (strict_prefix)
                                for (std::size_t j = 1; j <= th; ++j)
                                    if (!(radix_measure(a, c, j) > radix_measure(b, c, j))) ax3 = false;
                            // AX.4: equal prefixes give equal truncated values
                            eq_prefix = true;
                            for (std::size_t j = 0; j < th; ++j)
                                if (a[j] != b[j]) eq_prefix = false;
                            if (eq_prefix && ma != mb) ax4 = false;
                        }
                    }
            }
            r.add_bool("AX.1", ax1);
            r.add_bool("AX.2", ax2);
            r.add_bool("AX.3", ax3);
            r.add_bool("AX.4", ax4);
            break;
        }
    }
    r.finish();
    return r;
}

// ---------------------------------------------------------------------------
// Implication matrix over the battery
// ---------------------------------------------------------------------------

struct MatrixConfig {
    std::string label;
    BundleSpec bundle;
    std::vector<PiecewiseLinear> family;
};

inline std::vector<MatrixConfig> default_battery() {
    std::vector<MatrixConfig> out;
    const double T = 10.0;
    std::vector<PiecewiseLinear> linear;
    for (double S : {4.0, 6.0, 8.0, 10.0}) linear.push_back(PiecewiseLinear::linear_family(T, S));

    out.push_back({"h-bundle/linear", BundleSpec::h_bundle(), linear});
    out.push_back({"kos2-bundle/linear", BundleSpec::kosmulski(2.0), linear});
    out.push_back({"g-bundle/linear", BundleSpec::g_bundle(), linear});
    out.push_back({"avg/linear", BundleSpec::average(), linear});
    out.push_back({"total/linear", BundleSpec::total(), linear});

    out.push_back({"avg/opposed-pair", BundleSpec::average(),
                   {PiecewiseLinear::from_points({{0, 10}, {10, 0}}),
                    PiecewiseLinear::from_points({{0, 5}, {10, 2}})}});

    const auto [za, ya] = fixture_detail::example_a_pair();
    out.push_back({"endpoint-sum/flat-vs-steep", fixture_detail::sum_bundle(), {za, ya}});
    out.push_back({"endpoint-sum/circle", fixture_detail::sum_bundle(),
                   {PiecewiseLinear::constant(0.7, 1.0), fixture_detail::quarter_circle(1.0)}});

    std::vector<PiecewiseLinear> crossing;
    for (double s : {0.2, 0.4, 0.6})
        crossing.push_back(
            PiecewiseLinear::from_points({{0.0, 0.5 + 0.25 * s}, {1.0, 0.5 - 0.75 * s}}));
    out.push_back({"quarter-probe/crossing", fixture_detail::quarter_probe_bundle(), crossing});

    std::vector<PiecewiseLinear> pinned;
    for (double e : {0.0, 0.3, 0.6})
        pinned.push_back(PiecewiseLinear::from_points({{0.0, 1.0}, {1.0, e}}));
    out.push_back({"start-probe/pinned-start", fixture_detail::start_value_bundle(), pinned});

    out.push_back({"avg/dominated", BundleSpec::average(),
                   {PiecewiseLinear::from_points({{0, 8}, {10, 0}}),
                    PiecewiseLinear::from_points({{0, 9}, {10, 1}})}});
    return out;
}

struct ImplicationCell {
    std::string antecedent;
    std::string consequent;
    bool claimed_implication = true;   // false: claimed NON-implication
    std::string exhibit_label;         // designated config for non-implications
    enum class Status { consistent, exhibited, counterexample_found, not_exhibited };
    Status status = Status::consistent;
    std::string notes;
};

struct ConfigVerdicts {
    std::string label;
    std::vector<std::pair<AxiomId, Outcome>> outcomes;
};

struct ImplicationMatrix {
    std::vector<ConfigVerdicts> table;
    std::vector<ImplicationCell> cells;
    bool all_ok = true;
};

inline ImplicationMatrix implication_matrix(const std::vector<MatrixConfig>& battery = default_battery()) {
    const std::vector<AxiomId> props{AxiomId::PED, AxiomId::W2,  AxiomId::CES, AxiomId::W1,
                                     AxiomId::WL,  AxiomId::IB,  AxiomId::GIB};
    ImplicationMatrix m;
    for (const auto& cfg : battery) {
        ConfigVerdicts cv;
        cv.label = cfg.label;
        for (AxiomId p : props)
            cv.outcomes.emplace_back(p, check_bundle_property(cfg.bundle, p, cfg.family).outcome);
        m.table.push_back(std::move(cv));
    }
    const auto outcome_of = [&](const ConfigVerdicts& cv, AxiomId p) {
        for (const auto& [q, o] : cv.outcomes)
            if (q == p) return o;
        return Outcome::undetermined;
    };

    struct Arrow { AxiomId from, to; };
    const std::vector<Arrow> arrows{{AxiomId::PED, AxiomId::W2}, {AxiomId::PED, AxiomId::GIB},
                                    {AxiomId::W2, AxiomId::CES}, {AxiomId::W2, AxiomId::WL},
                                    {AxiomId::CES, AxiomId::W1}, {AxiomId::WL, AxiomId::W1},
                                    {AxiomId::GIB, AxiomId::WL}, {AxiomId::GIB, AxiomId::IB}};
    for (const auto& a : arrows) {
        ImplicationCell cell;
        cell.antecedent = axiom_name(a.from);
        cell.consequent = axiom_name(a.to);
        cell.claimed_implication = true;
        for (const auto& cv : m.table) {
            if (outcome_of(cv, a.from) == Outcome::holds_on_family &&
                outcome_of(cv, a.to) == Outcome::violated) {
                cell.status = ImplicationCell::Status::counterexample_found;
                cell.notes = "violated by config " + cv.label;
                m.all_ok = false;
            }
        }
        m.cells.push_back(std::move(cell));
    }

    struct NonArrow { AxiomId from, to; const char* label; const char* note; };
    const std::vector<NonArrow> non_arrows{
        {AxiomId::W2, AxiomId::PED, "g-bundle/linear", "g-bundle carries no pointwise descriptor here"},
        {AxiomId::CES, AxiomId::W2, "avg/opposed-pair", ""},
        {AxiomId::W1, AxiomId::WL, "endpoint-sum/circle", "W1 vacuous on the family; the measure satisfies it generally"},
        {AxiomId::CES, AxiomId::WL, "endpoint-sum/circle", "CES vacuous on the family"},
        {AxiomId::WL, AxiomId::CES, "quarter-probe/crossing", "WL vacuous: curves pairwise incomparable"},
        {AxiomId::W1, AxiomId::CES, "quarter-probe/crossing", "W1 vacuous: no comparable pairs"},
        {AxiomId::WL, AxiomId::W2, "quarter-probe/crossing", "WL vacuous: curves pairwise incomparable"},
        {AxiomId::IB, AxiomId::W1, "start-probe/pinned-start", "IB vacuous: prefixes pinned at the start"},
        {AxiomId::W1, AxiomId::IB, "quarter-probe/crossing", "W1 vacuous: no comparable pairs"},
        {AxiomId::W2, AxiomId::GIB, "endpoint-sum/flat-vs-steep", ""},
        {AxiomId::WL, AxiomId::GIB, "endpoint-sum/flat-vs-steep", ""},
        {AxiomId::GIB, AxiomId::PED, "avg/linear", "average bundle carries no pointwise descriptor"},
        {AxiomId::GIB, AxiomId::W2, "avg/opposed-pair",
         "encodes the fixture-level fact behind the documented (GIB)-not-(WL) item, whose argument "
         "actually refutes W2"},
    };
    for (const auto& n : non_arrows) {
        ImplicationCell cell;
        cell.antecedent = axiom_name(n.from);
        cell.consequent = axiom_name(n.to);
        cell.claimed_implication = false;
        cell.exhibit_label = n.label;
        cell.notes = n.note;
        cell.status = ImplicationCell::Status::not_exhibited;
        for (const auto& cv : m.table) {
            if (cv.label != n.label) continue;
            const Outcome oa = outcome_of(cv, n.from);
            const Outcome oc = outcome_of(cv, n.to);
            const bool antecedent_ok = oa == Outcome::holds_on_family || oa == Outcome::vacuous;
            const bool consequent_fails =
                oc == Outcome::violated || (n.to == AxiomId::PED && oc == Outcome::undetermined);
            if (antecedent_ok && consequent_fails)
                cell.status = ImplicationCell::Status::exhibited;
        }
        if (cell.status != ImplicationCell::Status::exhibited) m.all_ok = false;
        m.cells.push_back(std::move(cell));
    }
    return m;
}

}  // namespace impact
