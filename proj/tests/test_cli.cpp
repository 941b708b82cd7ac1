#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "curv/catalog.hpp"
#include "curv/report.hpp"
#include "curv/specfile.hpp"

using namespace curv;

namespace {

const Point kAnchor{{"t", 0.0}, {"r", 2.0}, {"theta", 1.5707963267948966}, {"phi", 0.0}};

#ifdef CURVTOOL_BIN
int run_tool(const std::string& args, std::string* output = nullptr) {
    const std::string out_path = "cli_test_output.txt";
    const int status =
        std::system((std::string(CURVTOOL_BIN) + " " + args + " > " + out_path + " 2>&1")
                        .c_str());
    if (output) {
        std::ifstream in(out_path);
        std::stringstream ss;
        ss << in.rdbuf();
        *output = ss.str();
    }
    std::remove(out_path.c_str());
#ifdef _WIN32
    return status;
#else
    return WEXITSTATUS(status);
#endif
}
#endif

}  // namespace

TEST_CASE("point report content for the charged anchor") {
    const MetricChart chart = build_family("reissner_nordstrom", {}, nullptr);
    const PointReport rep = inspect_point(chart, kAnchor);
    REQUIRE(rep.warped.has_value());
    CHECK(rep.warped->rho == doctest::Approx(0.25));
    CHECK(rep.warped->phi == doctest::Approx(1.0 / 96.0));
    CHECK(rep.warped->tau1 == doctest::Approx(0.0625));
    CHECK(rep.flags.roter.verdict);
    CHECK(rep.flags.scan.is_2_quasi_einstein);
    CHECK_FALSE(rep.flags.scan.is_quasi_einstein);
    CHECK(rep.flags.e_c.lambda == doctest::Approx(1.0 / 12.0));

    // lattice: pseudosymmetry rows hold, flatness rows fail
    bool saw_rr = false, saw_c0 = false;
    for (const auto& e : rep.lattice) {
        if (e.id == "R.R = L Q(g,R)") {
            saw_rr = true;
            CHECK(e.holds);
            CHECK(e.coefficient == doctest::Approx(-0.0625));
        }
        if (e.id == "C = 0") {
            saw_c0 = true;
            CHECK_FALSE(e.holds);
        }
    }
    CHECK(saw_rr);
    CHECK(saw_c0);
}

TEST_CASE("report JSON is deterministic and fixed-format") {
    const MetricChart chart = build_family("reissner_nordstrom", {}, nullptr);
    const PointReport a = inspect_point(chart, kAnchor);
    const PointReport b = inspect_point(chart, kAnchor);
    const std::string ja = point_report_json(a).serialize(2);
    const std::string jb = point_report_json(b).serialize(2);
    CHECK(ja == jb);
    CHECK(ja.find("2.500000000000e-01") != std::string::npos);  // %.12e floats
    // human table renders without throwing and mentions the verdicts
    const std::string table = point_report_table(a);
    CHECK(table.find("roter") != std::string::npos);
    CHECK(table.find("2-quasi-einstein   : yes") != std::string::npos);
}

#ifdef CURVTOOL_BIN

TEST_CASE("cli: inspect, exit codes and determinism") {
    std::string out1, out2;
    const std::string inspect_args =
        "inspect --family reissner_nordstrom --param m=1 --param q=1 "
        "--point \"t=0,r=2,theta=1.5708,phi=0\" --json -";
    CHECK(run_tool(inspect_args, &out1) == 0);
    CHECK(run_tool(inspect_args, &out2) == 0);
    CHECK(out1 == out2);  // byte-identical machine output
    CHECK(out1.find("\"schema_version\": \"1\"") != std::string::npos);
    CHECK(out1.find("\"roter\"") != std::string::npos);

    // human table by default
    std::string table;
    CHECK(run_tool("inspect --family minkowski --point \"t=0,x1=0,x2=0,x3=0\"", &table) == 0);
    CHECK(table.find("flat               : yes") != std::string::npos);

    // domain error: the horizon itself is a singular chart point
    CHECK(run_tool("inspect --family schwarzschild --point \"t=0,r=2,theta=1.5,phi=0\"",
                   nullptr) == 2);
    // chart pole
    CHECK(run_tool("inspect --family schwarzschild --point \"t=0,r=3,theta=0,phi=0\"",
                   nullptr) == 2);
    // spec errors
    CHECK(run_tool("inspect --family not_a_family --point \"t=0\"", nullptr) == 3);
    CHECK(run_tool("inspect --metric no_such_file.toml", nullptr) == 3);
}

TEST_CASE("cli: dump-spec round trip") {
    std::string dumped;
    CHECK(run_tool("inspect --family jnw --dump-spec", &dumped) == 0);
    const MetricChart back = parse_metric_spec(dumped);
    const MetricChart direct = build_family("jnw", {}, nullptr);
    CHECK(charts_equal(back, direct));
}

TEST_CASE("cli: metric spec file input") {
    const char* path = "cli_test_metric.toml";
    {
        std::ofstream f(path);
        f << dump_metric_spec(build_family("morris_thorne", {}, nullptr));
    }
    std::string out;
    CHECK(run_tool(std::string("inspect --metric ") + path +
                       " --point \"t=0,r=1.5,theta=1.5,phi=0\" --json -",
                   &out) == 0);
    CHECK(out.find("\"two_quasi_einstein\": true") != std::string::npos);
    std::remove(path);

    // malformed file -> exit 3
    {
        std::ofstream f(path);
        f << "[manifold]\ndimension = 4\n";
    }
    CHECK(run_tool(std::string("inspect --metric ") + path, nullptr) == 3);
    std::remove(path);
}

TEST_CASE("cli: suite filter and sweep") {
    std::string out;
    CHECK(run_tool("suite --filter prop21", &out) == 0);
    CHECK(out.find("PASS prop21") != std::string::npos);
    CHECK(run_tool("suite --filter zzz-no-such", nullptr) == 1);

    // vacuum sweep: phi stays zero on every row
    CHECK(run_tool("sweep --family schwarzschild --coordinate r --from 3 --to 10 --steps 5 "
                   "--point \"t=0,theta=1.5,phi=0\" --json -",
                   &out) == 0);
    CHECK(out.find("\"rows\"") != std::string::npos);
    CHECK(out.find("\"error\"") == std::string::npos);

    // charged family: rho = 4(mr - q^2)/r^4 changes sign at r = q^2/m when
    // the window covers it (m = 0.2, q = 1 puts it at r = 5)
    CHECK(run_tool("sweep --family reissner_nordstrom --param m=0.2 --param q=1 "
                   "--coordinate r --from 3 --to 7 --steps 20 "
                   "--point \"t=0,theta=1.5,phi=0\" --json -",
                   &out) == 0);
    CHECK(out.find("rho changes sign") != std::string::npos);

    // a sweep through a singular radius marks the row but continues
    CHECK(run_tool("sweep --family schwarzschild --coordinate r --from 1 --to 6 "
                   "--steps 6 --point \"t=0,theta=1.5,phi=0\" --json -",
                   &out) == 0);
    CHECK(out.find("\"error\"") != std::string::npos);
    CHECK(out.find("\"kappa\"") != std::string::npos);
}

#endif  // CURVTOOL_BIN
