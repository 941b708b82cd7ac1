#include "doctest.h"

#include "curv/catalog.hpp"
#include "curv/curvature.hpp"
#include "curv/specfile.hpp"

using namespace curv;

namespace {

const char* kFullSpec = R"spec(# a static spherically symmetric chart
[manifold]
dimension = 4
coordinates = ["t", "r", "theta", "phi"]

[metric]
g = [
  ["-(1 - 2*m/r)", "0", "0", "0"],
  ["0", "1/(1 - 2*m/r)", "0", "0"],
  ["0", "0", "r^2", "0"],
  ["0", "0", "0", "r^2*sin(theta)^2"],
]

[params]
m = 1.0
)spec";

const char* kWarpedSpec = R"spec(
[manifold]
dimension = 4
coordinates = ["t", "r", "theta", "phi"]

[warped]
base_coordinates = ["t", "r"]
base_metric = [["-(1 - 2*m/r + q^2/r^2)", "0"], ["0", "1/(1 - 2*m/r + q^2/r^2)"]]
warping = "r^2"
fiber_dim = 2
fiber_scalar_curvature = 2
fiber_signature = "++"

[params]
m = 1.0
q = 1.0
)spec";

}  // namespace

TEST_CASE("full-grid document parses and evaluates") {
    const MetricChart chart = parse_metric_spec(kFullSpec);
    CHECK(chart.mode == MetricChart::Mode::Full);
    CHECK(chart.n == 4);
    CHECK(chart.params.at("m") == 1.0);
    const CurvaturePack pack = curvature_pack(
        chart, Point{{"t", 0.0}, {"r", 3.0}, {"theta", 1.2}, {"phi", 0.0}});
    CHECK(frob_norm(pack.S) < 1e-12);  // vacuum metric
}

TEST_CASE("warped document matches the catalog chart") {
    const MetricChart chart = parse_metric_spec(kWarpedSpec);
    CHECK(chart.mode == MetricChart::Mode::Warped);
    const MetricChart catalog = build_family("reissner_nordstrom", {}, nullptr);
    CHECK(charts_equal(chart, catalog));
}

TEST_CASE("round trip: dump then parse is structurally identical") {
    for (const auto& spec : family_registry()) {
        const MetricChart chart = build_family(spec.id, {}, nullptr);
        const std::string dumped = dump_metric_spec(chart);
        const MetricChart back = parse_metric_spec(dumped);
        CHECK_MESSAGE(charts_equal(chart, back), "family " << spec.id);
        // a second dump is byte-identical (determinism)
        CHECK(dump_metric_spec(back) == dumped);
    }
}

TEST_CASE("diagnostics carry line numbers") {
    auto expect_error = [](const char* text, const char* needle) {
        try {
            parse_metric_spec(text);
            FAIL_CHECK("expected ChartError for: " << needle);
        } catch (const ChartError& e) {
            CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos,
                          e.what() << " should mention " << needle);
        }
    };
    expect_error("x = 1\n", "section");
    expect_error("[manifold]\ndimension = 4\n", "one of [metric] or [warped]");
    expect_error("[manifold]\ndimension = 2.5\n", "integer");
    expect_error(
        "[manifold]\ndimension = 2\ncoordinates = [\"t\", \"r\"]\n"
        "[metric]\ng = [[\"1\", \"0\"], [\"0\", \"1 +\"]]\n",
        "line 5");
    expect_error(
        "[manifold]\ndimension = 3\ncoordinates = [\"t\",\"r\",\"y\"]\n"
        "[warped]\nbase_coordinates = [\"t\",\"r\"]\n"
        "base_metric = [[\"-1\",\"0\"],[\"0\",\"1\"]]\n"
        "warping = \"r^2\"\nfiber_dim = 2\nfiber_scalar_curvature = 2\n",
        "dimension = 2 + fiber_dim");
}

TEST_CASE("duplicate keys and malformed values are rejected") {
    CHECK_THROWS_AS(parse_metric_spec("[a]\nx = 1\nx = 2\n"), ChartError);
    CHECK_THROWS_AS(parse_metric_spec("[a]\nx = zork\n"), ChartError);
    CHECK_THROWS_AS(parse_metric_spec("[a]\nx = \"unterminated\n"), ChartError);
    CHECK_THROWS_AS(parse_metric_spec("[a]\n[a]\n"), ChartError);
}
