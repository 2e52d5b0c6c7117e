// Command-line front end: dataset ingestion, measure reports, dominance
// orders, curve emission, axiom checks, and the fixture suite.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "impact/impact.hpp"
#include "impact/report.hpp"

namespace {

struct CommonOpts {
    std::string format = "csv";
    std::string embedding = "discrete";
    std::string measures = "h:1,g:1,r:1,a";
    int theta_grid = 257;
    double epsilon = 1e-12;
    std::uint64_t seed = 20220913;
    std::string out = "-";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.format, "input format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--embedding", o.embedding, "measure evaluation: discrete or continuous")
        ->check(CLI::IsMember({"discrete", "continuous"}));
    cmd->add_option("--measures", o.measures,
                    "comma list, e.g. h:1,g:1,r:1,a,mu:3,total:3,pct:0.3,max,avgavg,kos:1:2");
    cmd->add_option("--theta-grid", o.theta_grid, "grid size for bundle parameter sweeps");
    cmd->add_option("--epsilon", o.epsilon, "strict-comparison guard band");
    cmd->add_option("--seed", o.seed, "seed for searches and generators");
    cmd->add_option("--out", o.out, "output path ('-' = stdout)");
}

class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!file_->good()) impact::fail(impact::errc::io_error, "cannot write " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void write_json(const impact::json& j, const std::string& out) {
    Sink sink(out);
    sink.stream() << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"informetric impact toolkit"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string input;
    std::string curve_kind = "nn_lorenz";
    int curve_points = 64;

    CLI::App* validate = app.add_subcommand("validate", "parse a dataset and report its shape");
    validate->add_option("input", input)->required();
    add_common(validate, o);

    CLI::App* measures = app.add_subcommand("measures", "per-entity measure values");
    measures->add_option("input", input)->required();
    add_common(measures, o);

    CLI::App* compare = app.add_subcommand("compare", "pairwise dominance matrix and measures");
    compare->add_option("input", input)->required();
    add_common(compare, o);

    CLI::App* order = app.add_subcommand("order", "Hasse-reduced strict dominance order");
    order->add_option("input", input)->required();
    add_common(order, o);

    CLI::App* lorenz = app.add_subcommand("lorenz", "emit curves as CSV");
    lorenz->add_option("input", input)->required();
    lorenz->add_option("--which", curve_kind, "lorenz, nn_lorenz or strong_impact")
        ->check(CLI::IsMember({"lorenz", "nn_lorenz", "strong_impact"}));
    lorenz->add_option("--points", curve_points, "number of panels");
    add_common(lorenz, o);

    CLI::App* global = app.add_subcommand("global", "global impact measures per entity");
    global->add_option("input", input)->required();
    add_common(global, o);

    CLI::App* axioms = app.add_subcommand("axioms", "check measure axioms on the dataset family");
    axioms->add_option("input", input)->required();
    add_common(axioms, o);

    CLI::App* suite = app.add_subcommand("paper-suite", "run the fixture battery and implication matrix");
    add_common(suite, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        using namespace impact;
        if (suite->parsed()) {
            write_json(paper_suite_report(o.seed), o.out);
            return 0;
        }

        const Dataset ds = ingest(input, o.format);
        if (validate->parsed()) {
            json j;
            j["entities"] = json::object();
            for (const auto& [id, p] : ds.entities) j["entities"][id] = p.size();
            j["count"] = ds.entities.size();
            write_json(j, o.out);
            return 0;
        }
        if (measures->parsed() || compare->parsed() || order->parsed()) {
            ReportOptions ropt;
            ropt.measures = parse_measures(o.measures);
            ropt.continuous_embedding = o.embedding == "continuous";
            ropt.eps = o.epsilon;
            json rep = build_report(ds, ropt);
            if (measures->parsed()) {
                json j;
                j["entities"] = rep["entities"];
                j["warnings"] = rep["warnings"];
                write_json(j, o.out);
            } else if (compare->parsed()) {
                write_json(rep, o.out);
            } else {
                json j;
                j["hasse"] = rep["hasse"];
                j["warnings"] = rep["warnings"];
                write_json(j, o.out);
            }
            return 0;
        }
        if (lorenz->parsed()) {
            Sink sink(o.out);
            emit_curves(ds, curve_kind, curve_points, sink.stream());
            return 0;
        }
        if (global->parsed()) {
            write_json(build_global_report(ds), o.out);
            return 0;
        }
        if (axioms->parsed()) {
            std::vector<PiecewiseLinear> family;
            for (const auto& [id, p] : ds.entities) family.push_back(to_continuous(p));
            json j;
            j["measures"] = json::object();
            for (const MeasureKind& k : parse_measures(o.measures)) {
                const MeasureUnderTest m = measure_from_kind(k);
                json row = json::object();
                for (AxiomId ax : {AxiomId::I, AxiomId::II, AxiomId::IV})
                    row[axiom_name(ax)] =
                        to_json(check_measure_axiom(m, ax, family, {}, o.seed, o.epsilon));
                const auto strong = check_strong_axioms(m, family, o.theta_grid, o.epsilon);
                for (const auto& v : strong) {
                    const std::string name = v.axiom.substr(v.axiom.rfind(':') + 1);
                    row[name] = to_json(v);
                }
                j["measures"][k.name()] = std::move(row);
            }
            write_json(j, o.out);
            return 0;
        }
        return 0;
    } catch (const impact::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == impact::errc::internal ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
}
