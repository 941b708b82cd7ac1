#include "curv/specfile.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace curv {

namespace {

struct Value {
    enum class Kind { Number, Text, Array } kind = Kind::Number;
    double number = 0.0;
    std::string text;
    std::vector<Value> array;
    int line = 0;
};

class SpecScanner {
public:
    explicit SpecScanner(const std::string& text) : s_(text) {}

    // section -> (key -> value)
    std::map<std::string, std::map<std::string, Value>> run() {
        std::map<std::string, std::map<std::string, Value>> out;
        std::string section;
        skip_void();
        while (pos_ < s_.size()) {
            if (s_[pos_] == '[') {
                ++pos_;
                section = take_ident();
                expect(']');
                skip_void();
                if (out.count(section)) fail("duplicate section [" + section + "]");
                out[section];
                continue;
            }
            if (section.empty()) fail("key outside of any [section]");
            const std::string key = take_ident();
            skip_spaces();
            expect('=');
            Value v = take_value();
            if (out[section].count(key)) fail("duplicate key '" + key + "'");
            out[section][key] = std::move(v);
            skip_void();
        }
        return out;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ChartError("metric spec, line " + std::to_string(line_) + ": " + msg);
    }

    void advance() {
        if (s_[pos_] == '\n') ++line_;
        ++pos_;
    }

    void skip_spaces() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) advance();
    }

    // whitespace, newlines and comments
    void skip_void() {
        for (;;) {
            while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
                advance();
            if (pos_ < s_.size() && s_[pos_] == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') advance();
                continue;
            }
            return;
        }
    }

    void expect(char c) {
        skip_spaces();
        if (pos_ >= s_.size() || s_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        advance();
    }

    std::string take_ident() {
        skip_spaces();
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            advance();
        if (pos_ == start) fail("expected an identifier");
        return s_.substr(start, pos_ - start);
    }

    Value take_value() {
        skip_void();
        if (pos_ >= s_.size()) fail("expected a value");
        Value v;
        v.line = line_;
        const char c = s_[pos_];
        if (c == '"') {
            advance();
            size_t start = pos_;
            while (pos_ < s_.size() && s_[pos_] != '"') {
                if (s_[pos_] == '\n') fail("unterminated string");
                advance();
            }
            if (pos_ >= s_.size()) fail("unterminated string");
            v.kind = Value::Kind::Text;
            v.text = s_.substr(start, pos_ - start);
            advance();
            return v;
        }
        if (c == '[') {
            advance();
            v.kind = Value::Kind::Array;
            skip_void();
            if (pos_ < s_.size() && s_[pos_] == ']') {
                advance();
                return v;
            }
            for (;;) {
                v.array.push_back(take_value());
                skip_void();
                if (pos_ < s_.size() && s_[pos_] == ',') {
                    advance();
                    skip_void();
                    if (pos_ < s_.size() && s_[pos_] == ']') {  // trailing comma
                        advance();
                        return v;
                    }
                    continue;
                }
                if (pos_ < s_.size() && s_[pos_] == ']') {
                    advance();
                    return v;
                }
                fail("expected ',' or ']' in array");
            }
        }
        // number
        size_t start = pos_;
        while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
               s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != '#')
            advance();
        const std::string text = s_.substr(start, pos_ - start);
        char* end = nullptr;
        v.number = std::strtod(text.c_str(), &end);
        if (end != text.c_str() + text.size() || text.empty())
            fail("malformed number '" + text + "'");
        return v;
    }
};

const Value& expect_key(const std::map<std::string, Value>& table, const std::string& section,
                        const std::string& key) {
    auto it = table.find(key);
    if (it == table.end())
        throw ChartError("metric spec: [" + section + "] is missing '" + key + "'");
    return it->second;
}

std::vector<std::string> string_list(const Value& v, const std::string& what) {
    if (v.kind != Value::Kind::Array)
        throw ChartError("metric spec: " + what + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v.array) {
        if (e.kind != Value::Kind::Text)
            throw ChartError("metric spec: " + what + " must contain strings only");
        out.push_back(e.text);
    }
    return out;
}

Expr parse_component(const std::string& text, const std::string& what, int line) {
    ParseResult r = parse_expression(text);
    if (!r.ok())
        throw ChartError("metric spec, line " + std::to_string(line) + ": " + what + ": " +
                         r.error.message + " at offset " + std::to_string(r.error.offset));
    return *r.ast;
}

std::vector<Expr> expr_grid(const Value& v, int dim, const std::string& what) {
    if (v.kind != Value::Kind::Array || static_cast<int>(v.array.size()) != dim)
        throw ChartError("metric spec: " + what + " must have " + std::to_string(dim) +
                         " rows");
    std::vector<Expr> grid;
    for (const auto& row : v.array) {
        if (row.kind != Value::Kind::Array || static_cast<int>(row.array.size()) != dim)
            throw ChartError("metric spec: each row of " + what + " must have " +
                             std::to_string(dim) + " entries");
        for (const auto& cell : row.array) {
            if (cell.kind != Value::Kind::Text)
                throw ChartError("metric spec: " + what + " entries must be strings");
            grid.push_back(parse_component(cell.text, what, cell.line));
        }
    }
    return grid;
}

std::string quote_expr(const Expr& e) { return '"' + to_string(e) + '"'; }

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

MetricChart parse_metric_spec(const std::string& text) {
    SpecScanner scanner(text);
    const auto doc = scanner.run();

    auto manifold_it = doc.find("manifold");
    if (manifold_it == doc.end()) throw ChartError("metric spec: missing [manifold]");
    const auto& manifold = manifold_it->second;
    const Value& dim_v = expect_key(manifold, "manifold", "dimension");
    if (dim_v.kind != Value::Kind::Number || dim_v.number != std::floor(dim_v.number))
        throw ChartError("metric spec: dimension must be an integer");
    const int n = static_cast<int>(dim_v.number);

    std::vector<std::string> coords;
    if (manifold.count("coordinates"))
        coords = string_list(manifold.at("coordinates"), "coordinates");

    std::map<std::string, double> params;
    if (doc.count("params"))
        for (const auto& [k, v] : doc.at("params")) {
            if (v.kind != Value::Kind::Number)
                throw ChartError("metric spec: parameter '" + k + "' must be a number");
            params[k] = v.number;
        }

    const bool has_full = doc.count("metric") > 0;
    const bool has_warped = doc.count("warped") > 0;
    if (has_full == has_warped)
        throw ChartError("metric spec: need exactly one of [metric] or [warped]");

    if (has_full) {
        if (static_cast<int>(coords.size()) != n)
            throw ChartError("metric spec: coordinates must list all " + std::to_string(n) +
                             " names");
        const auto& metric = doc.at("metric");
        std::vector<Expr> grid = expr_grid(expect_key(metric, "metric", "g"), n, "g");
        return make_full_chart(coords, std::move(grid), params);
    }

    const auto& warped = doc.at("warped");
    std::vector<std::string> base =
        string_list(expect_key(warped, "warped", "base_coordinates"), "base_coordinates");
    std::vector<Expr> base_grid =
        expr_grid(expect_key(warped, "warped", "base_metric"), 2, "base_metric");
    const Value& wv = expect_key(warped, "warped", "warping");
    if (wv.kind != Value::Kind::Text)
        throw ChartError("metric spec: warping must be an expression string");
    Expr warping = parse_component(wv.text, "warping", wv.line);
    const Value& fd = expect_key(warped, "warped", "fiber_dim");
    const Value& fk = expect_key(warped, "warped", "fiber_scalar_curvature");
    if (fd.kind != Value::Kind::Number || fk.kind != Value::Kind::Number)
        throw ChartError("metric spec: fiber_dim and fiber_scalar_curvature must be numbers");
    std::string fsig;
    if (warped.count("fiber_signature")) {
        const Value& fs = warped.at("fiber_signature");
        if (fs.kind != Value::Kind::Text)
            throw ChartError("metric spec: fiber_signature must be a string");
        fsig = fs.text;
    }
    const int fiber_dim = static_cast<int>(fd.number);
    if (n != 2 + fiber_dim)
        throw ChartError("metric spec: warped charts require dimension = 2 + fiber_dim");
    return make_warped_chart(base, std::move(base_grid), std::move(warping), fiber_dim,
                             fk.number, fsig, params, coords);
}

MetricChart load_metric_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ChartError("cannot open metric spec '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_metric_spec(ss.str());
}

std::string dump_metric_spec(const MetricChart& chart) {
    std::string out;
    out += "[manifold]\n";
    out += "dimension = " + std::to_string(chart.n) + "\n";
    out += "coordinates = [";
    for (int i = 0; i < chart.n; ++i) {
        if (i) out += ", ";
        out += '"' + chart.coords[i] + '"';
    }
    out += "]\n\n";

    if (chart.mode == MetricChart::Mode::Full) {
        out += "[metric]\ng = [\n";
        for (int i = 0; i < chart.n; ++i) {
            out += "  [";
            for (int j = 0; j < chart.n; ++j) {
                if (j) out += ", ";
                out += quote_expr(chart.grid[static_cast<size_t>(i) * chart.n + j]);
            }
            out += "],\n";
        }
        out += "]\n";
    } else {
        out += "[warped]\n";
        out += "base_coordinates = [\"" + chart.coords[0] + "\", \"" + chart.coords[1] +
               "\"]\n";
        out += "base_metric = [\n";
        for (int i = 0; i < 2; ++i) {
            out += "  [";
            for (int j = 0; j < 2; ++j) {
                if (j) out += ", ";
                out += quote_expr(chart.base_grid[static_cast<size_t>(i) * 2 + j]);
            }
            out += "],\n";
        }
        out += "]\n";
        out += "warping = " + quote_expr(chart.warping) + "\n";
        out += "fiber_dim = " + std::to_string(chart.fiber_dim) + "\n";
        out += "fiber_scalar_curvature = " + format_number(chart.fiber_kappa) + "\n";
        out += "fiber_signature = \"" + chart.fiber_signature + "\"\n";
    }

    if (!chart.params.empty()) {
        out += "\n[params]\n";
        for (const auto& [k, v] : chart.params) out += k + " = " + format_number(v) + "\n";
    }
    return out;
}

bool charts_equal(const MetricChart& a, const MetricChart& b) {
    if (a.mode != b.mode || a.n != b.n || a.coords != b.coords || a.params != b.params)
        return false;
    if (a.mode == MetricChart::Mode::Full) {
        for (size_t i = 0; i < a.grid.size(); ++i)
            if (!structurally_equal(a.grid[i], b.grid[i])) return false;
        return true;
    }
    for (size_t i = 0; i < a.base_grid.size(); ++i)
        if (!structurally_equal(a.base_grid[i], b.base_grid[i])) return false;
    return structurally_equal(a.warping, b.warping) && a.fiber_dim == b.fiber_dim &&
           a.fiber_kappa == b.fiber_kappa && a.fiber_signature == b.fiber_signature;
}

}  // namespace curv
