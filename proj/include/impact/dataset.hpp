#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "impact/errors.hpp"
#include "impact/piecewise_linear.hpp"

namespace impact {

/// A named collection of discrete profiles, as ingested from CSV or JSON.
struct Dataset {
    std::map<std::string, DiscreteProfile> entities;  // ordered: deterministic output
    std::string source_path;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline double parse_number(const std::string& tok, int line) {
    const std::string t = trim(tok);
    require(!t.empty(), errc::parse_error, "empty value at line " + std::to_string(line));
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &pos);
    } catch (const std::exception&) {
        fail(errc::parse_error, "bad number '" + t + "' at line " + std::to_string(line));
    }
    require(pos == t.size(), errc::parse_error,
            "trailing characters in '" + t + "' at line " + std::to_string(line));
    require(std::isfinite(v), errc::parse_error, "non-finite value at line " + std::to_string(line));
    return v;
}

/// Shortest round-trip representation (exact re-ingestion).
inline std::string format_exact(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

}  // namespace detail

/// Long-format CSV with header "entity,value"; duplicate entity rows
/// accumulate as separate items.
inline Dataset ingest_csv(std::istream& in, const std::string& path = "") {
    Dataset ds;
    ds.source_path = path;
    std::map<std::string, std::vector<double>> raw;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        if (!header_seen) {
            require(t == "entity,value", errc::parse_error,
                    "expected header 'entity,value' at line " + std::to_string(lineno));
            header_seen = true;
            continue;
        }
        const std::size_t comma = t.find(',');
        require(comma != std::string::npos, errc::parse_error,
                "missing comma at line " + std::to_string(lineno));
        const std::string id = detail::trim(t.substr(0, comma));
        require(!id.empty(), errc::parse_error, "empty entity id at line " + std::to_string(lineno));
        const double v = detail::parse_number(t.substr(comma + 1), lineno);
        require(v >= 0.0, errc::negative_value,
                "entity " + id + " has negative value at line " + std::to_string(lineno));
        raw[id].push_back(v);
    }
    require(!raw.empty(), errc::empty_dataset, "no data rows in " + path);
    for (auto& [id, vals] : raw)
        ds.entities.emplace(id, DiscreteProfile::from_counts(std::move(vals)));
    return ds;
}

inline Dataset ingest_csv_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), errc::io_error, "cannot open " + path);
    return ingest_csv(in, path);
}

/// Exact CSV emission; ingest(emit(ds)) reproduces ds bit-for-bit.
inline void emit_csv(const Dataset& ds, std::ostream& out) {
    out << "entity,value\n";
    for (const auto& [id, profile] : ds.entities)
        for (double v : profile.counts()) out << id << ',' << detail::format_exact(v) << '\n';
}

}  // namespace impact
