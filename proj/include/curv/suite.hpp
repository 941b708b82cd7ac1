#pragma once

#include <string>
#include <vector>

#include "curv/report.hpp"

namespace curv {

// One row of the built-in verification suite. Every numbered check pins
// its tolerance in code; a failing row reports the worst residual seen.
struct CriterionResult {
    std::string id;
    std::string title;
    bool pass = false;
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

// Run the suite; the filter keeps criteria whose id contains it as a
// substring (empty filter keeps everything).
std::vector<CriterionResult> run_suite(const std::string& filter = "");

bool suite_all_pass(const std::vector<CriterionResult>& rows);
std::string suite_table(const std::vector<CriterionResult>& rows);
Json suite_json(const std::vector<CriterionResult>& rows);

}  // namespace curv
