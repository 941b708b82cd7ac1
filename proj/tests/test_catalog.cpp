#include "doctest.h"

#include <cmath>

#include "curv/catalog.hpp"
#include "curv/classify.hpp"
#include "curv/curvature.hpp"

using namespace curv;

TEST_CASE("registry basics") {
    CHECK(find_family("schwarzschild") != nullptr);
    CHECK(find_family("nope") == nullptr);
    CHECK_THROWS_AS(build_family("nope", {}, nullptr), ChartError);
    for (const auto& spec : family_registry()) {
        FamilyArgs merged;
        const MetricChart chart = build_family(spec.id, {}, &merged);
        CHECK(chart.n >= 2);
        const Point p = spec.sample_point(merged);
        // every family evaluates at its own sample point
        const CurvaturePack pack = curvature_pack(chart, p);
        CHECK(pack.frame.n == chart.n);
    }
}

TEST_CASE("scalar-field family recovers the vacuum solution at s = 1") {
    FamilyArgs args;
    args.numeric["s"] = 1.0;
    const MetricChart jnw = build_family("jnw", args, nullptr);
    const MetricChart schw = build_family("schwarzschild", {{{"m", 0.5}}, {}}, nullptr);
    // b = 1 at s = 1 equals h = 1 - 1/r, i.e. m = 0.5
    const Point p{{"t", 0.0}, {"r", 2.5}, {"theta", 1.1}, {"phi", 0.7}};
    const JetMatrix a = metric_jets(jnw, p);
    const JetMatrix b = metric_jets(schw, p);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(a.at(i, j).value() == doctest::Approx(b.at(i, j).value()).epsilon(1e-12));
    const CurvaturePack pack = curvature_pack(jnw, p);
    CHECK(frob_norm(pack.S) < 1e-12);  // vacuum
}

TEST_CASE("scalar-field family oracles at the anchor point") {
    FamilyArgs merged;
    build_family("jnw", {}, &merged);
    const FamilySpec* spec = find_family("jnw");
    const Point p{{"t", 0.0}, {"r", 2.0}};
    const auto o = spec->oracles(merged, p);
    CHECK(o.at("S_rr") == doctest::Approx(0.09375));
    CHECK(o.at("kappa") == doctest::Approx(0.0234375 * std::pow(2.0, 1.5)));
    CHECK(o.at("alpha2") == doctest::Approx(-0.015625 * std::pow(2.0, 1.5)));
}

TEST_CASE("conformally flat and Einstein loci of the h-form family") {
    // h = C1 r + C2 r^2 + kt/((n-3)(n-2)) gives rho = 0 at every radius;
    // h = C3 r^-(n-3) + C4 r^2 + kt/((n-3)(n-2)) gives phi = 0.
    const FamilySpec* spec = find_family("example63");
    SUBCASE("rho locus") {
        FamilyArgs args;
        args.text["h"] = "0.3*r + 0.05*r^2 + 1";
        FamilyArgs merged = merge_family_args(*spec, args);
        const MetricChart chart = spec->build(merged);
        for (double r : {1.0, 2.0, 4.0, 7.0}) {
            const auto [pack, inv] = warped_components(
                chart, Point{{"t", 0}, {"r", r}, {"theta", 1.4}, {"phi", 0.0}});
            CHECK(std::fabs(inv.rho) < 1e-12);
            CHECK(frob_norm(pack.C) < 1e-10);
        }
    }
    SUBCASE("phi locus") {
        FamilyArgs args;
        args.text["h"] = "0.4/r + 0.05*r^2 + 1";
        FamilyArgs merged = merge_family_args(*spec, args);
        const MetricChart chart = spec->build(merged);
        for (double r : {1.0, 2.0, 4.0}) {
            const auto [pack, inv] = warped_components(
                chart, Point{{"t", 0}, {"r", r}, {"theta", 1.4}, {"phi", 0.0}});
            CHECK(std::fabs(inv.phi) < 1e-12);
        }
    }
}

TEST_CASE("oracle values agree with the jet pipeline across families") {
    for (const char* fam :
         {"example63", "schwarzschild", "reissner_nordstrom", "ssss_time_dependent"}) {
        const FamilySpec* spec = find_family(fam);
        FamilyArgs merged;
        const MetricChart chart = build_family(fam, {}, &merged);
        const auto range = spec->sample_range(merged);
        for (int i = 0; i < 10; ++i) {
            const double r = range.first + (range.second - range.first) * (i + 0.5) / 10.0;
            Point p{{"t", 0.6}, {"r", r}, {"theta", 1.3}, {"phi", 0.2}};
            const auto [pack, inv] = warped_components(chart, p);
            const auto o = spec->oracles(merged, p);
            if (o.count("tau1"))
                CHECK(o.at("tau1") == doctest::Approx(inv.tau1).epsilon(1e-7));
            if (o.count("rho")) CHECK(o.at("rho") == doctest::Approx(inv.rho).epsilon(1e-7));
            if (o.count("phi"))
                CHECK(std::fabs(o.at("phi") - inv.phi) <
                      1e-7 * std::max(1.0, std::fabs(inv.phi)));
            if (o.count("kappa"))
                CHECK(std::fabs(o.at("kappa") - pack.kappa) <
                      1e-7 * std::max(1.0, std::fabs(pack.kappa)));
            // display route vs diagonal-base master route
            if (o.count("tau1_master"))
                CHECK(o.at("tau1_master") == doctest::Approx(o.at("tau1")).epsilon(1e-9));
            if (o.count("rho_master"))
                CHECK(o.at("rho_master") == doctest::Approx(o.at("rho")).epsilon(1e-9));
        }
    }
}

TEST_CASE("h = 1 is the flat metric in spherical coordinates") {
    FamilyArgs args;
    args.text["h"] = "1";
    const MetricChart chart = build_family("example63", args, nullptr);
    const Point p{{"t", 0.0}, {"r", 2.7}, {"theta", 1.1}, {"phi", 0.6}};
    const CurvaturePack pack = curvature_pack(chart, p);
    CHECK(frob_norm(pack.R) < 1e-12);
    CHECK(frob_norm(pack.S) < 1e-12);
    CHECK(frob_norm(pack.C) < 1e-12);
    CHECK(frob_norm(pack.E) < 1e-12);
}

TEST_CASE("dimension cap") {
    FamilyArgs args;
    args.numeric["n"] = 9;
    CHECK_THROWS_AS(build_family("example63", args, nullptr), ChartError);
}

TEST_CASE("out-of-range parameters are rejected") {
    FamilyArgs args;
    args.numeric["b"] = 1.0;
    const MetricChart jnw = build_family("jnw", args, nullptr);
    // r < b is outside the domain: the metric component throws
    CHECK_THROWS(curvature_pack(
        jnw, Point{{"t", 0.0}, {"r", 0.5}, {"theta", 1.5}, {"phi", 0.0}}));
}

TEST_CASE("sample ranges avoid singular radii") {
    // charged family: h has a double root at r = 1 for m = q = 1
    const FamilySpec* spec = find_family("reissner_nordstrom");
    FamilyArgs merged = merge_family_args(*spec, {});
    const auto range = spec->sample_range(merged);
    CHECK(range.first > 1.05);
    // vacuum family with m = 1: horizon at r = 2
    const FamilySpec* schw = find_family("schwarzschild");
    FamilyArgs smerged = merge_family_args(*schw, {});
    const auto srange = schw->sample_range(smerged);
    CHECK(srange.first > 2.1);
}
