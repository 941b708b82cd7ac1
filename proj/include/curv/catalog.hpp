#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "curv/chart.hpp"
#include "curv/tensor.hpp"

namespace curv {

// User-supplied arguments for a catalog family: numbers and, for families
// parameterized by whole functions, expression texts.
struct FamilyArgs {
    std::map<std::string, double> numeric;
    std::map<std::string, std::string> text;
};

struct FamilyParam {
    std::string name;
    bool is_text = false;
    double number = 0.0;  // default for numeric params
    std::string text;     // default for text params
    std::string doc;
};

// A built-in metric family with its closed-form invariant oracles. Oracle
// formulas are carried as expression text and parsed, so a transcription
// slip surfaces as an oracle-vs-pipeline mismatch localizable to one string.
struct FamilySpec {
    std::string id;
    std::string summary;
    std::vector<FamilyParam> params;
    std::function<MetricChart(const FamilyArgs&)> build;
    std::function<std::map<std::string, double>(const FamilyArgs&, const Point&)> oracles;
    std::function<Point(const FamilyArgs&)> sample_point;
    // In-domain window of the radial coordinate (root-bracketed, 10% margin),
    // or {0,0} when not applicable.
    std::function<std::pair<double, double>(const FamilyArgs&)> sample_range;
};

const std::vector<FamilySpec>& family_registry();
const FamilySpec* find_family(const std::string& id);

// Merge user arguments over the family defaults; unknown numeric arguments
// are passed through as chart parameters.
FamilyArgs merge_family_args(const FamilySpec& spec, const FamilyArgs& user);

MetricChart build_family(const std::string& id, const FamilyArgs& user,
                         FamilyArgs* merged_out = nullptr);

// Block-constant Weyl-type fixture on a metric that is block diagonal with
// respect to the split {1..p | p+1..n}.
Curv4 fixture_block_weyl(int n, int p, double tau, const PointFrame& frame);

}  // namespace curv
