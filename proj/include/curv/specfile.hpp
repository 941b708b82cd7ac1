#pragma once

#include <string>

#include "curv/chart.hpp"

namespace curv {

// Metric description files: a small TOML-style document with a [manifold]
// table, exactly one of [metric] / [warped], and an optional [params]
// table. Component entries are expression strings in the chart language.
//
//   [manifold]
//   dimension = 4
//   coordinates = ["t", "r", "theta", "phi"]
//
//   [metric]
//   g = [["-(1-2*m/r)", "0", "0", "0"],
//        ["0", "1/(1-2*m/r)", "0", "0"],
//        ["0", "0", "r^2", "0"],
//        ["0", "0", "0", "r^2*sin(theta)^2"]]
//
//   [params]
//   m = 1.0
//
// Warped-product charts use [warped] instead of [metric]:
//
//   [warped]
//   base_coordinates = ["t", "r"]
//   base_metric = [["-(1-2*m/r)", "0"], ["0", "1/(1-2*m/r)"]]
//   warping = "r^2"
//   fiber_dim = 2
//   fiber_scalar_curvature = 2
//   fiber_signature = "++"
//
// Errors carry a 1-based line number in the message (ChartError).
MetricChart parse_metric_spec(const std::string& text);
MetricChart load_metric_spec_file(const std::string& path);

// Emit a document that parses back to a structurally identical chart.
std::string dump_metric_spec(const MetricChart& chart);

bool charts_equal(const MetricChart& a, const MetricChart& b);

}  // namespace curv
