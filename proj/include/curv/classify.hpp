#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "curv/curvature.hpp"
#include "curv/tensor_ops.hpp"

namespace curv {

// Scalar proportionality T1 = lambda T2 over raw components.
struct Proportionality {
    double lambda = 0.0;
    double residual = 0.0;
    bool degenerate = false;
};

template <typename T>
Proportionality proportionality(const T& t1, const T& t2) {
    Proportionality out;
    const double n2 = frob_norm(t2);
    if (n2 <= 1e-12) {
        out.degenerate = true;
        out.residual = frob_norm(t1) / std::max(1.0, frob_norm(t1));
        return out;
    }
    out.lambda = frob_dot(t1, t2) / (n2 * n2);
    out.residual = frob_norm(axpy(-out.lambda, t2, t1)) / std::max(1.0, frob_norm(t1));
    return out;
}

struct RankScanEntry {
    double alpha = 0.0;
    int rank = 0;
    double sigma_next = 0.0;  // first singular value below the rank cut
};

struct QuasiScan {
    std::vector<RankScanEntry> candidates;  // refined, sorted by rank then alpha
    bool has_real_candidate = false;
    int rank_S = 0;        // numerical rank of S itself
    int min_rank = 0;      // best achievable rank over alpha
    double best_alpha = 0.0;
    bool is_einstein = false;
    bool is_ricci_simple = false;
    bool is_quasi_einstein = false;      // rank(S - alpha g) <= 1
    bool is_2_quasi_einstein = false;    // rank(S - alpha g) <= 2
    bool rank_exactly_2 = false;
};

// Candidate alphas are the real eigenvalues of the Ricci operator plus an
// optional chart-provided value; each is refined by golden section on the
// first singular value below the current rank cut.
QuasiScan quasi_rank_scan(const Sym2& S, const PointFrame& frame,
                          std::optional<double> chart_alpha = std::nullopt,
                          double rank_tol_factor = 1e-8);

struct PartialEinsteinFit {
    double lambda = 0.0;
    double mu = 0.0;
    double residual = 0.0;
    bool verdict = false;
    double identity_residual = 0.0;  // trace-removed restatement with the fitted lambda
};

PartialEinsteinFit partially_einstein_fit(const Sym2& S, const Sym2& S2,
                                          const PointFrame& frame);

struct RoterFit {
    std::string status = "ok";  // ok | outside-us-uc | ill-posed
    double phi1 = 0.0, mu1 = 0.0, eta1 = 0.0;
    double residual = 0.0;
    bool verdict = false;
    double cond = 0.0;
    // consequence: S2 = alpha1 S + alpha2 g with the fitted coefficients
    double alpha1 = 0.0, alpha2 = 0.0, s2_residual = 0.0;
};

RoterFit roter_fit(const CurvaturePack& pack);

struct GenRoterFit {
    std::string status = "ok";
    // coefficient order: phi3, phi2, phi1, mu2, mu1, eta1 for the span
    // {S2^S2/2, S^S2, S^S/2, g^S2, g^S, g^g/2}
    std::array<double, 6> coeff{};
    double residual = 0.0;
    bool verdict = false;
    int basis_rank = 0;
    std::vector<int> dropped;
};

GenRoterFit gen_roter_fit(const CurvaturePack& pack);

struct ClassFlags {
    bool flat = false;
    QuasiScan scan;
    PartialEinsteinFit partial;
    RoterFit roter;
    GenRoterFit gen_roter;
    Proportionality e_c;  // E = lambda C
    bool e_c_degenerate = false;
};

ClassFlags classify_point(const CurvaturePack& pack,
                          std::optional<double> chart_alpha = std::nullopt,
                          double rank_tol_factor = 1e-8);

}  // namespace curv
