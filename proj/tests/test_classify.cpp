#include "doctest.h"

#include <cmath>

#include "curv/catalog.hpp"
#include "curv/classify.hpp"
#include "curv/testgen.hpp"

using namespace curv;

namespace {

const Point kAnchor{{"t", 0.0}, {"r", 2.0}, {"theta", 1.5707963267948966}, {"phi", 0.0}};

}  // namespace

TEST_CASE("rank scan: Einstein input") {
    Rng rng(31);
    const int n = 4;
    const PointFrame frame = random_frame(n, 1, rng);
    const Sym2 g = Sym2::from_mat(frame.g);
    const double kappa = 1.3;
    const QuasiScan scan = quasi_rank_scan(scaled(kappa / n, g), frame);
    CHECK(scan.min_rank == 0);
    CHECK(scan.is_einstein);
    CHECK(scan.best_alpha == doctest::Approx(kappa / n).epsilon(1e-8));
}

TEST_CASE("rank scan: charged anchor point is 2-quasi but not quasi") {
    const MetricChart chart = build_family("reissner_nordstrom", {}, nullptr);
    const auto [pack, inv] = warped_components(chart, kAnchor);
    const QuasiScan scan = quasi_rank_scan(pack.S, pack.frame, inv.tau1);
    CHECK(scan.min_rank == 2);
    CHECK(scan.is_2_quasi_einstein);
    CHECK_FALSE(scan.is_quasi_einstein);
    CHECK(scan.best_alpha == doctest::Approx(0.0625).epsilon(1e-9));
    CHECK_FALSE(scan.is_ricci_simple);
}

TEST_CASE("rank scan: scalar-field family is Ricci-simple") {
    const MetricChart chart = build_family("jnw", {}, nullptr);
    const CurvaturePack pack = curvature_pack(chart, kAnchor);
    const QuasiScan scan = quasi_rank_scan(pack.S, pack.frame);
    CHECK(scan.rank_S == 1);
    CHECK(scan.is_ricci_simple);
    CHECK(scan.is_quasi_einstein);
    CHECK(pack.S(1, 1) == doctest::Approx(0.09375).epsilon(1e-12));
}

TEST_CASE("rank scan survives a complex Ricci-operator spectrum") {
    // In an indefinite frame a symmetric S can have a non-real operator
    // spectrum; the scan must still answer (via the chart candidate).
    const PointFrame frame = minkowski_frame(4);
    Sym2 S(4);
    S(0, 0) = 1.0; S(0, 1) = S(1, 0) = 2.0; S(1, 1) = -1.0;
    const QuasiScan scan = quasi_rank_scan(S, frame);
    CHECK(scan.min_rank >= 1);  // no crash, sensible result
}

TEST_CASE("partially Einstein fits") {
    Rng rng(32);
    const int n = 5;
    const PointFrame frame = random_frame(n, 0, rng);
    const Sym2 g = Sym2::from_mat(frame.g);

    SUBCASE("quasi-Einstein input fits with tiny residual") {
        const Sym2 S = random_rank1_shift(n, frame, rng);
        const Sym2 S2 = sym2_square(S, frame);
        const PartialEinsteinFit fit = partially_einstein_fit(S, S2, frame);
        CHECK(fit.verdict);
        CHECK(fit.residual < 1e-9);
        CHECK(fit.identity_residual < 1e-9);
    }
    SUBCASE("generic S is rejected") {
        const Sym2 S = random_sym2(n, rng);
        const Sym2 S2 = sym2_square(S, frame);
        const PartialEinsteinFit fit = partially_einstein_fit(S, S2, frame);
        CHECK_FALSE(fit.verdict);
        CHECK(fit.residual > 1e-6);
    }
}

TEST_CASE("roter fit on the charged anchor") {
    const MetricChart chart = build_family("reissner_nordstrom", {}, nullptr);
    const CurvaturePack pack = curvature_pack(chart, kAnchor);
    const RoterFit fit = roter_fit(pack);
    REQUIRE(fit.status == "ok");
    CHECK(fit.verdict);
    CHECK(fit.phi1 == doctest::Approx(24.0).epsilon(1e-10));
    CHECK(fit.mu1 == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(fit.eta1 == doctest::Approx(0.03125).epsilon(1e-10));
    // consequence: S^2 = alpha1 S + alpha2 g
    CHECK(fit.alpha1 == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(fit.alpha2 == doctest::Approx(1.0 / 256.0).epsilon(1e-10));
    CHECK(fit.s2_residual < 1e-12);
}

TEST_CASE("roter fit refusals") {
    SUBCASE("constant curvature: outside U_S and U_C") {
        Rng rng(33);
        const PointFrame frame = euclidean_frame(4);
        const Sym2 g = Sym2::from_mat(frame.g);
        CurvaturePack pack = gauss_pack(scaled(0.9, g), frame, 1.0, 0.0);
        const RoterFit fit = roter_fit(pack);
        CHECK(fit.status == "outside-us-uc");
    }
    SUBCASE("quasi-Einstein collapse is reported as ill-posed") {
        // scalar-field chart: rank-1 Ricci makes S^S, g^S, g^g dependent
        // against R, so the design matrix degenerates or the fit fails.
        const MetricChart chart = build_family("jnw", {}, nullptr);
        const CurvaturePack pack = curvature_pack(chart, kAnchor);
        const RoterFit fit = roter_fit(pack);
        CHECK((fit.status == "ill-posed" || !fit.verdict));
    }
}

TEST_CASE("generalized roter fit") {
    const MetricChart chart = build_family("reissner_nordstrom", {}, nullptr);
    const CurvaturePack pack = curvature_pack(chart, kAnchor);

    SUBCASE("anchor point: superset of the roter span, minimum-norm branch") {
        const GenRoterFit fit = gen_roter_fit(pack);
        CHECK(fit.verdict);
        CHECK(fit.basis_rank == 3);  // S2 is proportional to g here
        CHECK(fit.residual < 1e-10);
    }
    SUBCASE("warped point with independent S2: consistent with C = lambda E") {
        const MetricChart mt = build_family("morris_thorne", {}, nullptr);
        const Point p{{"t", 0.0}, {"r", 1.4}, {"theta", 1.3}, {"phi", 0.1}};
        const CurvaturePack mpack = curvature_pack(mt, p);
        const GenRoterFit fit = gen_roter_fit(mpack);
        CHECK(fit.verdict);
        CHECK(fit.residual < 1e-9);
    }
}

TEST_CASE("proportionality") {
    Rng rng(34);
    const Curv4 T2 = random_gencurv(4, rng);
    SUBCASE("exact multiple") {
        const Proportionality p = proportionality(scaled(3.0, T2), T2);
        CHECK(p.lambda == doctest::Approx(3.0));
        CHECK(p.residual < 1e-14);
    }
    SUBCASE("degenerate right side") {
        const Proportionality p = proportionality(T2, Curv4(4));
        CHECK(p.degenerate);
    }
    SUBCASE("orthogonal pair") {
        Curv4 a(4), b(4);
        a.c[1] = 1.0;
        b.c[2] = 1.0;
        const Proportionality p = proportionality(a, b);
        CHECK(p.lambda == doctest::Approx(0.0));
        CHECK(p.residual == doctest::Approx(1.0));
    }
    SUBCASE("charged anchor: E = (1/12) C") {
        const MetricChart chart = build_family("reissner_nordstrom", {}, nullptr);
        const CurvaturePack pack = curvature_pack(chart, kAnchor);
        const Proportionality p = proportionality(pack.E, pack.C);
        CHECK(p.lambda == doctest::Approx(1.0 / 12.0).epsilon(1e-10));
        CHECK(p.residual < 1e-12);
    }
}

TEST_CASE("classification monotone chain on catalog points") {
    // einstein => quasi => 2-quasi; quasi => partially einstein
    struct CasePoint {
        const char* family;
        Point p;
    };
    const CasePoint cases[] = {
        {"minkowski", Point{{"t", 0.1}, {"x1", 0.2}, {"x2", 0.0}, {"x3", 0.4}}},
        {"reissner_nordstrom", kAnchor},
        {"jnw", kAnchor},
        {"morris_thorne", Point{{"t", 0.0}, {"r", 1.5}, {"theta", 1.2}, {"phi", 0.0}}},
    };
    for (const auto& cp : cases) {
        const MetricChart chart = build_family(cp.family, {}, nullptr);
        const CurvaturePack pack = curvature_pack(chart, cp.p);
        const ClassFlags flags = classify_point(pack);
        if (flags.scan.is_einstein) CHECK(flags.scan.is_quasi_einstein);
        if (flags.scan.is_quasi_einstein) {
            CHECK(flags.scan.is_2_quasi_einstein);
            CHECK(flags.partial.verdict);
        }
        // quasi-Einstein <=> E = 0 on these packs
        if (pack.frame.n >= 4 && flags.scan.is_quasi_einstein)
            CHECK(frob_norm(pack.E) <
                  1e-10 * std::max(1.0, frob_norm(pack.S) * frob_norm(pack.S)));
    }
}

TEST_CASE("warped dichotomy: quasi-Einstein iff phi vanishes") {
    // vacuum family: phi = 0, Einstein; charged family: phi != 0, rank 2
    FamilyArgs args;
    args.numeric["m"] = 0.5;
    const MetricChart vac = build_family("schwarzschild", args, nullptr);
    const auto [vpack, vinv] = warped_components(vac, kAnchor);
    CHECK(std::fabs(vinv.phi) < 1e-14);
    CHECK(quasi_rank_scan(vpack.S, vpack.frame, vinv.tau1).is_quasi_einstein);

    const MetricChart rn = build_family("reissner_nordstrom", {}, nullptr);
    const auto [rpack, rinv] = warped_components(rn, kAnchor);
    CHECK(std::fabs(rinv.phi) > 1e-3);
    const QuasiScan scan = quasi_rank_scan(rpack.S, rpack.frame, rinv.tau1);
    CHECK(scan.rank_exactly_2);
    CHECK_FALSE(scan.is_quasi_einstein);
}
