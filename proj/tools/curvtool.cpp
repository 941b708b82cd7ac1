// curvtool: curvature tensors, pointwise classification and
// pseudosymmetry-type condition reports for user metrics and the built-in
// family catalog.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "curv/catalog.hpp"
#include "curv/report.hpp"
#include "curv/specfile.hpp"
#include "curv/suite.hpp"

namespace {

using namespace curv;

constexpr int kExitOk = 0;
constexpr int kExitCriteriaFailed = 1;
constexpr int kExitDomainError = 2;
constexpr int kExitSpecError = 3;

Point parse_point(const std::string& text) {
    Point p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ChartError("point entries must look like name=value: '" + item + "'");
        std::string name = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        auto strip = [](std::string& s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
                s.erase(s.begin());
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
                s.pop_back();
        };
        strip(name);
        strip(value);
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        if (end != value.c_str() + value.size() || value.empty())
            throw ChartError("point coordinate '" + name + "' has a malformed value");
        p[name] = v;
    }
    return p;
}

// --param entries: numbers become numeric arguments, anything else is an
// expression-text argument.
void parse_param(const std::string& text, FamilyArgs& args) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw ChartError("--param expects name=value: '" + text + "'");
    const std::string name = text.substr(0, eq);
    const std::string value = text.substr(eq + 1);
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() + value.size() && !value.empty())
        args.numeric[name] = v;
    else
        args.text[name] = value;
}

void emit(const std::string& json_path, const Json& doc, const std::string& table) {
    if (json_path.empty()) {
        std::fputs(table.c_str(), stdout);
        return;
    }
    const std::string payload = doc.serialize(2);
    if (json_path == "-") {
        std::fputs(payload.c_str(), stdout);
        return;
    }
    std::ofstream out(json_path);
    if (!out) throw std::runtime_error("cannot write '" + json_path + "'");
    out << payload;
}

struct ChartSelection {
    MetricChart chart;
    const FamilySpec* family = nullptr;  // when built from the catalog
    FamilyArgs merged;
};

ChartSelection select_chart(const std::string& metric_file, const std::string& family_id,
                            const std::vector<std::string>& params) {
    ChartSelection sel;
    if (!metric_file.empty() && !family_id.empty())
        throw ChartError("--metric and --family are mutually exclusive");
    if (metric_file.empty() && family_id.empty())
        throw ChartError("one of --metric or --family is required");
    if (!metric_file.empty()) {
        sel.chart = load_metric_spec_file(metric_file);
        if (!params.empty())
            throw ChartError("--param applies to --family charts; put numbers in [params]");
        return sel;
    }
    sel.family = find_family(family_id);
    if (!sel.family) {
        std::string known;
        for (const auto& f : family_registry()) known += " " + f.id;
        throw ChartError("unknown family '" + family_id + "'; available:" + known);
    }
    FamilyArgs args;
    for (const auto& p : params) parse_param(p, args);
    sel.chart = build_family(family_id, args, &sel.merged);
    return sel;
}

int cmd_inspect(const std::string& metric_file, const std::string& family_id,
                const std::vector<std::string>& params, const std::string& point_text,
                const std::string& json_path, bool dump_spec, double rank_tol) {
    const ChartSelection sel = select_chart(metric_file, family_id, params);
    if (dump_spec) {
        std::fputs(dump_metric_spec(sel.chart).c_str(), stdout);
        return kExitOk;
    }
    Point p = point_text.empty()
                  ? (sel.family ? sel.family->sample_point(sel.merged) : Point{})
                  : parse_point(point_text);
    InspectOptions opts;
    opts.rank_tol_factor = rank_tol;
    PointReport rep = inspect_point(sel.chart, p, opts);
    if (sel.family) {
        try {
            rep.oracle_values = sel.family->oracles(sel.merged, complete_point(sel.chart, p));
        } catch (const std::exception&) {
            // families without oracle values at this point simply omit them
        }
    }
    Json doc = Json::object();
    doc.set("schema_version", Json::str("1"));
    doc.set("command", Json::str("inspect"));
    if (sel.family) doc.set("family", Json::str(sel.family->id));
    for (auto& [k, v] : point_report_json(rep).obj) doc.set(k, std::move(v));
    emit(json_path, doc, point_report_table(rep));
    return kExitOk;
}

int cmd_suite(const std::string& filter, const std::string& json_path) {
    const auto rows = run_suite(filter);
    if (rows.empty()) {
        std::fprintf(stderr, "no suite criteria match filter '%s'\n", filter.c_str());
        return kExitCriteriaFailed;
    }
    emit(json_path, suite_json(rows), suite_table(rows));
    if (!json_path.empty() && json_path != "-")
        std::fputs(suite_table(rows).c_str(), stdout);
    return suite_all_pass(rows) ? kExitOk : kExitCriteriaFailed;
}

int cmd_sweep(const std::string& metric_file, const std::string& family_id,
              const std::vector<std::string>& params, const std::string& point_text,
              const std::string& coordinate, double from, double to, int steps,
              const std::string& json_path) {
    if (steps < 2) throw ChartError("--steps must be at least 2");
    const ChartSelection sel = select_chart(metric_file, family_id, params);
    Point base = point_text.empty()
                     ? (sel.family ? sel.family->sample_point(sel.merged) : Point{})
                     : parse_point(point_text);

    struct Row {
        double x = 0.0;
        bool ok = false;
        std::string error;
        double kappa = 0, tau1 = 0, rho = 0, phi = 0;
        bool warped = false;
        bool pseudo = false, ricci_pseudo = false, weyl_pseudo = false;
    };
    std::vector<Row> rows(static_cast<size_t>(steps));

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < steps; ++i) {
        Row& row = rows[static_cast<size_t>(i)];
        row.x = from + (to - from) * i / (steps - 1);
        Point p = base;
        p[coordinate] = row.x;
        try {
            const CurvaturePack pack = curvature_pack(sel.chart, p);
            row.kappa = pack.kappa;
            if (sel.chart.mode == MetricChart::Mode::Warped) {
                const auto [wpack, winv] = warped_components(sel.chart, p);
                row.warped = true;
                row.tau1 = winv.tau1;
                row.rho = winv.rho;
                row.phi = winv.phi;
            }
            if (pack.frame.n >= 4) {
                row.pseudo = fit_pseudosymmetric(pack).verdict;
                row.ricci_pseudo = fit_ricci_pseudosymmetric(pack).verdict;
                row.weyl_pseudo = fit_weyl_pseudosymmetric(pack).verdict;
            }
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    }

    // sign-change flags for rho and phi between consecutive valid rows
    std::vector<std::string> flags;
    for (size_t i = 1; i < rows.size(); ++i) {
        if (!rows[i - 1].ok || !rows[i].ok || !rows[i].warped) continue;
        char buf[128];
        if (rows[i - 1].rho * rows[i].rho < 0) {
            std::snprintf(buf, sizeof buf, "rho changes sign in (%.9g, %.9g)",
                          rows[i - 1].x, rows[i].x);
            flags.push_back(buf);
        }
        if (rows[i - 1].phi * rows[i].phi < 0) {
            std::snprintf(buf, sizeof buf, "phi changes sign in (%.9g, %.9g)",
                          rows[i - 1].x, rows[i].x);
            flags.push_back(buf);
        }
    }

    Json doc = Json::object();
    doc.set("schema_version", Json::str("1"));
    doc.set("command", Json::str("sweep"));
    doc.set("coordinate", Json::str(coordinate));
    Json jrows = Json::array();
    for (const auto& row : rows) {
        Json r = Json::object();
        r.set(coordinate, Json::num(row.x));
        if (!row.ok) {
            r.set("error", Json::str(row.error));
        } else {
            r.set("kappa", Json::num(row.kappa));
            if (row.warped) {
                r.set("tau1", Json::num(row.tau1));
                r.set("rho", Json::num(row.rho));
                r.set("phi", Json::num(row.phi));
            }
            r.set("pseudosymmetric", Json::boolean_of(row.pseudo));
            r.set("ricci_pseudosymmetric", Json::boolean_of(row.ricci_pseudo));
            r.set("weyl_pseudosymmetric", Json::boolean_of(row.weyl_pseudo));
        }
        jrows.push(std::move(r));
    }
    doc.set("rows", std::move(jrows));
    Json jflags = Json::array();
    for (const auto& f : flags) jflags.push(Json::str(f));
    doc.set("sign_changes", std::move(jflags));

    std::ostringstream table;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%14s %16s %16s %16s %16s  %s\n", coordinate.c_str(),
                  "kappa", "tau1", "rho", "phi", "R.R~Q(g,R)");
    table << buf;
    for (const auto& row : rows) {
        if (!row.ok) {
            std::snprintf(buf, sizeof buf, "%14.6g  [%s]\n", row.x, row.error.c_str());
        } else {
            std::snprintf(buf, sizeof buf, "%14.6g %16.8e %16.8e %16.8e %16.8e  %s\n",
                          row.x, row.kappa, row.tau1, row.rho, row.phi,
                          row.pseudo ? "yes" : "no");
        }
        table << buf;
    }
    for (const auto& f : flags) table << "  ! " << f << "\n";
    emit(json_path, doc, table.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvature tensors, classification and condition reports"};
    app.require_subcommand(1);

    std::string metric_file, family_id, point_text, json_path, filter, coordinate = "r";
    std::vector<std::string> params;
    double from = 0, to = 1, rank_tol = 1e-8;
    int steps = 2;
    bool dump_spec = false;

    CLI::App* inspect = app.add_subcommand("inspect", "classify a metric at a point");
    inspect->add_option("--metric", metric_file, "metric spec file");
    inspect->add_option("--family", family_id, "catalog family id");
    inspect->add_option("--param", params, "family parameter name=value")->take_all();
    inspect->add_option("--point", point_text, "comma list name=value");
    inspect->add_option("--json", json_path, "write JSON to PATH ('-' for stdout)");
    inspect->add_option("--rank-tol", rank_tol, "rank threshold factor (default 1e-8)");
    inspect->add_flag("--dump-spec", dump_spec, "echo the chart as a spec file and exit");

    CLI::App* suite = app.add_subcommand("suite", "run the verification suite");
    suite->add_option("--filter", filter, "substring filter on criterion ids");
    suite->add_option("--json", json_path, "write JSON to PATH ('-' for stdout)");

    CLI::App* sweep = app.add_subcommand("sweep", "tabulate invariants along a coordinate");
    sweep->add_option("--metric", metric_file, "metric spec file");
    sweep->add_option("--family", family_id, "catalog family id");
    sweep->add_option("--param", params, "family parameter name=value")->take_all();
    sweep->add_option("--point", point_text, "base point, comma list name=value");
    sweep->add_option("--coordinate", coordinate, "swept coordinate (default r)");
    sweep->add_option("--from", from, "sweep start")->required();
    sweep->add_option("--to", to, "sweep end")->required();
    sweep->add_option("--steps", steps, "number of rows (>= 2)")->required();
    sweep->add_option("--json", json_path, "write JSON to PATH ('-' for stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (inspect->parsed())
            return cmd_inspect(metric_file, family_id, params, point_text, json_path,
                               dump_spec, rank_tol);
        if (suite->parsed()) return cmd_suite(filter, json_path);
        if (sweep->parsed())
            return cmd_sweep(metric_file, family_id, params, point_text, coordinate, from, to,
                             steps, json_path);
    } catch (const ChartError& e) {
        std::fprintf(stderr, "spec error: %s\n", e.what());
        return kExitSpecError;
    } catch (const EvalError& e) {
        std::fprintf(stderr, "domain error: %s (offset %d)\n", e.what(), e.span.begin);
        return kExitDomainError;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return kExitDomainError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDomainError;
    }
    return kExitOk;
}
