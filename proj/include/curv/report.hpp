#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curv/classify.hpp"
#include "curv/pseudosym.hpp"

namespace curv {

// Minimal JSON document with insertion-ordered keys and fixed %.12e float
// formatting, so identical inputs serialize byte-identically.
struct Json {
    enum class Kind { Null, Bool, Num, Int, Str, Arr, Obj };
    Kind kind = Kind::Null;
    bool boolean = false;
    double number = 0.0;
    long long integer = 0;
    std::string text;
    std::vector<Json> arr;
    std::vector<std::pair<std::string, Json>> obj;

    static Json object() { Json j; j.kind = Kind::Obj; return j; }
    static Json array() { Json j; j.kind = Kind::Arr; return j; }
    static Json num(double v) { Json j; j.kind = Kind::Num; j.number = v; return j; }
    static Json integer_of(long long v) { Json j; j.kind = Kind::Int; j.integer = v; return j; }
    static Json str(std::string s) { Json j; j.kind = Kind::Str; j.text = std::move(s); return j; }
    static Json boolean_of(bool b) { Json j; j.kind = Kind::Bool; j.boolean = b; return j; }

    Json& set(const std::string& key, Json v) {
        obj.emplace_back(key, std::move(v));
        return obj.back().second;
    }
    void push(Json v) { arr.push_back(std::move(v)); }

    std::string serialize(int indent = 0) const;
};

// One checklist box of the condition lattice rendered in the report.
struct LatticeEntry {
    std::string id;
    bool holds = false;
    double residual = 0.0;
    double coefficient = 0.0;  // fitted L where applicable
    std::string note;
};

struct PointReport {
    Point point;
    int n = 0;
    double kappa = 0.0;
    double trS2 = 0.0;
    std::optional<WarpedInvariants> warped;
    ClassFlags flags;
    std::vector<ConditionResult> conditions;
    std::vector<LatticeEntry> lattice;
    std::map<std::string, double> oracle_values;  // family closed forms, if any
};

struct InspectOptions {
    double rank_tol_factor = 1e-8;
};

PointReport inspect_point(const MetricChart& chart, const Point& p,
                          const InspectOptions& opts = {});

Json point_report_json(const PointReport& report);
std::string point_report_table(const PointReport& report);

}  // namespace curv
