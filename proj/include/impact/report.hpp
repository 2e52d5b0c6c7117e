#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "impact/dataset.hpp"
#include "impact/dominance.hpp"
#include "impact/errors.hpp"
#include "impact/fixtures.hpp"
#include "impact/global_measures.hpp"
#include "impact/measures.hpp"

namespace impact {

using json = nlohmann::json;

/// Numbers in reports are rounded to 12 significant digits before
/// serialization, which keeps golden files reproducible.
inline double round12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

/// JSON schema: {"entities": {"id": [values...]}}.
inline Dataset ingest_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), errc::io_error, "cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        fail(errc::parse_error, std::string("bad JSON: ") + e.what());
    }
    require(doc.is_object() && doc.contains("entities") && doc["entities"].is_object(),
            errc::parse_error, "expected an object with an 'entities' map");
    Dataset ds;
    ds.source_path = path;
    for (const auto& [id, arr] : doc["entities"].items()) {
        require(arr.is_array() && !arr.empty(), errc::parse_error,
                "entity " + id + " must map to a non-empty array");
        std::vector<double> vals;
        for (const auto& v : arr) {
            require(v.is_number(), errc::parse_error, "entity " + id + " has a non-numeric value");
            const double d = v.get<double>();
            require(d >= 0.0, errc::negative_value, "entity " + id + " has a negative value");
            vals.push_back(d);
        }
        ds.entities.emplace(id, DiscreteProfile::from_counts(std::move(vals)));
    }
    require(!ds.entities.empty(), errc::empty_dataset, "no entities in " + path);
    return ds;
}

inline Dataset ingest(const std::string& path, const std::string& format) {
    if (format == "csv") return ingest_csv_file(path);
    if (format == "json") return ingest_json_file(path);
    fail(errc::parse_error, "unknown format '" + format + "'");
}

// ---------------------------------------------------------------------------
// Measure parsing for the CLI ("h:1,g:1,r:1,a,mu:3,total:3,pct:0.3,...")
// ---------------------------------------------------------------------------

inline std::vector<MeasureKind> parse_measures(const std::string& spec) {
    std::vector<MeasureKind> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = detail::trim(tok);
        if (tok.empty()) continue;
        std::vector<std::string> parts;
        std::stringstream ts(tok);
        std::string p;
        while (std::getline(ts, p, ':')) parts.push_back(p);
        const auto num = [&](std::size_t i) { return detail::parse_number(parts[i], 0); };
        const std::string& head = parts[0];
        if (head == "h" && parts.size() == 2) out.push_back(MeasureKind::h(num(1)));
        else if (head == "kos" && parts.size() == 3) out.push_back(MeasureKind::kosmulski(num(1), num(2)));
        else if (head == "g" && parts.size() == 2) out.push_back(MeasureKind::g(num(1)));
        else if (head == "r" && parts.size() == 2) out.push_back(MeasureKind::r(num(1)));
        else if (head == "a" && parts.size() == 1) out.push_back(MeasureKind::a());
        else if (head == "mu" && parts.size() == 2) out.push_back(MeasureKind::truncated_average(num(1)));
        else if (head == "total" && parts.size() == 2) out.push_back(MeasureKind::truncated_total(num(1)));
        else if (head == "pct" && parts.size() == 2) out.push_back(MeasureKind::percentile(num(1)));
        else if (head == "max" && parts.size() == 1) out.push_back(MeasureKind::max_value());
        else if (head == "avgavg" && parts.size() == 1) out.push_back(MeasureKind::avg_of_avgs());
        else fail(errc::parse_error, "unknown measure token '" + tok + "'");
    }
    require(!out.empty(), errc::parse_error, "no measures selected");
    return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct ReportOptions {
    std::vector<MeasureKind> measures;
    bool continuous_embedding = false;
    double eps = 1e-12;
};

namespace detail {

inline double discrete_value(const MeasureKind& k, const DiscreteProfile& p) {
    const DiscreteMeasures dm = discrete_measures(p);
    switch (k.tag) {
        case MeasureTag::H: require(k.theta == 1.0, errc::inapplicable_measure,
                                    "discrete h supports theta = 1 only"); return dm.h;
        case MeasureTag::G: require(k.theta == 1.0, errc::inapplicable_measure,
                                    "discrete g supports theta = 1 only"); return dm.g;
        case MeasureTag::R: require(k.theta == 1.0, errc::inapplicable_measure,
                                    "discrete r supports theta = 1 only"); return dm.r;
        case MeasureTag::A:
            require(dm.a.has_value(), errc::undefined_measure, "A undefined for h = 0");
            return *dm.a;
        case MeasureTag::TruncatedAverage: return dm.mu(static_cast<std::size_t>(k.theta));
        case MeasureTag::TruncatedTotal: return dm.total(static_cast<std::size_t>(k.theta));
        case MeasureTag::MaxValue: return p.at_rank(1);
        default:
            return eval_measure(k, to_continuous(p));
    }
}

/// Pairwise dominance verdicts computed in parallel with a deterministic,
/// index-ordered merge.
inline std::vector<std::string> pairwise_relations(
    const std::vector<const DiscreteProfile*>& profiles, double eps) {
    const std::size_t n = profiles.size();
    std::vector<PiecewiseLinear> embedded;
    embedded.reserve(n);
    for (const auto* p : profiles) embedded.push_back(to_continuous(*p));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<std::string> rel(pairs.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                             static_cast<unsigned>(pairs.size())));
    std::vector<std::thread> pool;
    std::atomic<std::size_t> cursor{0};
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t k = cursor.fetch_add(1); k < pairs.size(); k = cursor.fetch_add(1)) {
                const auto [i, j] = pairs[k];
                if (embedded[i].domain_end() != embedded[j].domain_end()) {
                    rel[k] = "DomainMismatch";
                    continue;
                }
                rel[k] = dom_relation_name(dominates_nn(embedded[i], embedded[j], eps).relation);
            }
        });
    for (auto& t : pool) t.join();
    return rel;
}

}  // namespace detail

/// Per-entity measures, the pairwise dominance matrix on the continuous
/// embeddings, and the Hasse reduction of the strict dominance relation.
inline json build_report(const Dataset& ds, const ReportOptions& opt) {
    json out;
    out["entities"] = json::object();
    out["warnings"] = json::array();
    for (const auto& [id, profile] : ds.entities) {
        json row = json::object();
        for (const MeasureKind& k : opt.measures) {
            try {
                const double v = opt.continuous_embedding
                                     ? eval_measure(k, to_continuous(profile))
                                     : detail::discrete_value(k, profile);
                row[k.name()] = round12(v);
            } catch (const Error& e) {
                row[k.name()] = nullptr;
                out["warnings"].push_back(id + "/" + k.name() + ": " + e.what());
            }
        }
        out["entities"][id] = std::move(row);
    }

    std::vector<std::string> ids;
    std::vector<const DiscreteProfile*> profiles;
    for (const auto& [id, profile] : ds.entities) {
        ids.push_back(id);
        profiles.push_back(&profile);
    }
    const std::vector<std::string> rel = detail::pairwise_relations(profiles, opt.eps);
    json matrix = json::object();
    for (const std::string& id : ids) matrix[id] = json::object();
    std::size_t k = 0;
    std::vector<std::vector<bool>> less(ids.size(), std::vector<bool>(ids.size(), false));
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j, ++k) {
            matrix[ids[i]][ids[j]] = rel[k];
            if (rel[k] == "LessNeq") less[i][j] = true;
            if (rel[k] == "GreaterNeq") less[j][i] = true;
            if (rel[k] == "Undetermined")
                out["warnings"].push_back("undetermined dominance: " + ids[i] + " vs " + ids[j]);
            if (rel[k] == "DomainMismatch")
                out["warnings"].push_back("domain mismatch: " + ids[i] + " vs " + ids[j]);
        }
    out["matrix"] = std::move(matrix);

    // Hasse reduction: drop edges implied by transitivity
    json hasse = json::array();
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = 0; j < ids.size(); ++j) {
            if (!less[i][j]) continue;
            bool covered = false;
            for (std::size_t w = 0; w < ids.size(); ++w)
                if (less[i][w] && less[w][j]) covered = true;
            if (!covered) hasse.push_back(json::array({ids[i], ids[j]}));
        }
    out["hasse"] = std::move(hasse);
    return out;
}

/// Curve emission: CSV "entity,x,y" with n+1 rows per entity.
inline void emit_curves(const Dataset& ds, const std::string& which, int n, std::ostream& out) {
    require(n >= 2, errc::out_of_domain, "need at least 2 panels");
    out << "entity,x,y\n";
    const auto emit_value = [&](const std::string& id, double x, double y) {
        out << id << ',' << detail::format_exact(round12(x)) << ','
            << detail::format_exact(round12(y)) << '\n';
    };
    for (const auto& [id, profile] : ds.entities) {
        const PiecewiseLinear z = to_continuous(profile);
        const double T = z.domain_end();
        if (which == "lorenz") {
            for (const auto& [x, y] : lorenz_points(z, n)) emit_value(id, x, y);
        } else if (which == "nn_lorenz") {
            const IntegralCurve iz = z.integral();
            for (int i = 0; i <= n; ++i) {
                const double x = T * static_cast<double>(i) / n;
                emit_value(id, x, iz(x));
            }
        } else if (which == "strong_impact") {
            const IntegralCurve iz = z.integral();
            for (int i = 0; i <= n; ++i) {
                const double x = T * static_cast<double>(i) / n;
                emit_value(id, x, average_curve(z, iz, x));
            }
        } else {
            fail(errc::parse_error, "unknown curve kind '" + which + "'");
        }
    }
}

/// Global measures for every entity (continuous embedding).
inline json build_global_report(const Dataset& ds) {
    json out;
    out["entities"] = json::object();
    out["warnings"] = json::array();
    for (const auto& [id, profile] : ds.entities) {
        const PiecewiseLinear z = to_continuous(profile);
        json row = json::object();
        row["gini_area"] = round12(gini_area(z));
        row["curve_length"] = round12(curve_length(z));
        row["power_integral:2"] = round12(power_integral(z, 2.0));
        row["theil_generalized"] = round12(theil_generalized(z));
        try {
            row["theil_classical"] = round12(theil_classical(z));
            row["cv_squared"] = round12(cv_squared(z));
        } catch (const Error& e) {
            row["theil_classical"] = nullptr;
            row["cv_squared"] = nullptr;
            out["warnings"].push_back(id + ": " + e.what());
        }
        out["entities"][id] = std::move(row);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Axiom/verdict serialization and the fixture suite report
// ---------------------------------------------------------------------------

inline json to_json(const Witness& w) {
    json j;
    j["description"] = w.description;
    j["params"] = json::object();
    for (const auto& [k, v] : w.params) j["params"][k] = round12(v);
    json fns = json::array();
    for (const auto& f : w.functions) {
        json knots = json::array();
        for (const Knot& kn : f.knots()) knots.push_back(json::array({round12(kn.x), round12(kn.y)}));
        fns.push_back(std::move(knots));
    }
    j["functions"] = std::move(fns);
    return j;
}

inline json to_json(const AxiomVerdict& v) {
    json j;
    j["axiom"] = v.axiom;
    j["outcome"] = outcome_name(v.outcome);
    if (!v.notes.empty()) j["notes"] = v.notes;
    json ws = json::array();
    for (const auto& w : v.witnesses) ws.push_back(to_json(w));
    if (!ws.empty()) j["witnesses"] = std::move(ws);
    return j;
}

inline json paper_suite_report(std::uint64_t seed = 20220913) {
    json out;
    json fixtures = json::array();
    for (FixtureId id : all_fixtures()) {
        const FixtureResult fr = run_fixture(id, seed);
        json f;
        f["id"] = fixture_code(id);
        f["title"] = fr.title;
        f["passed"] = fr.passed;
        if (!fr.notes.empty()) f["notes"] = fr.notes;
        json checks = json::array();
        for (const auto& c : fr.checks) {
            json cj;
            cj["name"] = c.name;
            cj["expected"] = outcome_name(c.expected);
            cj["outcome"] = outcome_name(c.verdict.outcome);
            cj["passed"] = c.passed;
            checks.push_back(std::move(cj));
        }
        f["checks"] = std::move(checks);
        fixtures.push_back(std::move(f));
    }
    out["fixtures"] = std::move(fixtures);

    const ImplicationMatrix m = implication_matrix();
    json table = json::object();
    for (const auto& cv : m.table) {
        json row = json::object();
        for (const auto& [p, o] : cv.outcomes) row[axiom_name(p)] = outcome_name(o);
        table[cv.label] = std::move(row);
    }
    out["property_table"] = std::move(table);
    json cells = json::array();
    for (const auto& c : m.cells) {
        json cj;
        cj["antecedent"] = c.antecedent;
        cj["consequent"] = c.consequent;
        cj["kind"] = c.claimed_implication ? "implication" : "non_implication";
        switch (c.status) {
            case ImplicationCell::Status::consistent: cj["status"] = "consistent"; break;
            case ImplicationCell::Status::exhibited: cj["status"] = "exhibited"; break;
            case ImplicationCell::Status::counterexample_found: cj["status"] = "counterexample_found"; break;
            case ImplicationCell::Status::not_exhibited: cj["status"] = "not_exhibited"; break;
        }
        if (!c.exhibit_label.empty()) cj["exhibit"] = c.exhibit_label;
        if (!c.notes.empty()) cj["notes"] = c.notes;
        cells.push_back(std::move(cj));
    }
    out["implications"] = std::move(cells);
    out["all_ok"] = m.all_ok;
    return out;
}

}  // namespace impact
