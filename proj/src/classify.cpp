#include "curv/classify.hpp"

#include <algorithm>
#include <cmath>

namespace curv {

namespace {

Mat sub_alpha_g(const Sym2& S, const PointFrame& frame, double alpha) {
    Mat m = S.as_mat();
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m(i, j) -= alpha * frame.g(i, j);
    return m;
}

// The cut is anchored to the cancellation scale ||S|| + |alpha| ||g|| of the
// shift, not to the shifted matrix itself, so an exact multiple of g reads
// as rank zero.
int numerical_rank(const std::vector<double>& sv_desc, double tol_factor, int n, double anchor,
                   double* sigma_next = nullptr) {
    const double cut = n * tol_factor * std::max(anchor, 1e-300);
    int rank = 0;
    for (double s : sv_desc)
        if (s > cut) ++rank;
    if (sigma_next) *sigma_next = (rank < static_cast<int>(sv_desc.size())) ? sv_desc[rank] : 0.0;
    return rank;
}

// Golden-section minimization of the k-th singular value (0-indexed) of
// S - alpha g over a bracket around alpha0.
double refine_alpha(const Sym2& S, const PointFrame& frame, double alpha0, int k) {
    auto f = [&](double a) {
        const auto sv = sym_singular_values(sub_alpha_g(S, frame, a));
        return (k < static_cast<int>(sv.size())) ? sv[k] : 0.0;
    };
    const double gr = 0.6180339887498949;
    const double width = std::max(1e-3, 0.05 * std::fabs(alpha0));
    double lo = alpha0 - width, hi = alpha0 + width;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f(x2);
        }
    }
    const double mid = 0.5 * (lo + hi);
    return f(mid) <= f(alpha0) ? mid : alpha0;
}

}  // namespace

QuasiScan quasi_rank_scan(const Sym2& S, const PointFrame& frame,
                          std::optional<double> chart_alpha, double rank_tol_factor) {
    const int n = frame.n;
    QuasiScan out;

    const double sigS = sym_singular_values(S.as_mat()).front();
    const double sigG = sym_singular_values(frame.g).front();
    auto anchor = [&](double alpha) { return sigS + std::fabs(alpha) * sigG; };

    {
        const auto sv = sym_singular_values(S.as_mat());
        out.rank_S = numerical_rank(sv, rank_tol_factor, n, anchor(0.0));
        out.is_ricci_simple = (out.rank_S == 1);
    }

    // Ricci operator g^-1 S; real eigenvalues are the alpha candidates.
    std::vector<double> cands = real_eigenvalues(matmul(frame.g_inv, S.as_mat()));
    out.has_real_candidate = !cands.empty();
    if (chart_alpha) cands.push_back(*chart_alpha);
    cands.push_back(0.0);  // rank of S itself participates in the scan

    out.min_rank = n + 1;
    for (size_t ci = 0; ci < cands.size(); ++ci) {
        double a0 = cands[ci];
        double sigma_next = 0.0;
        auto sv = sym_singular_values(sub_alpha_g(S, frame, a0));
        int rank = numerical_rank(sv, rank_tol_factor, n, anchor(a0), &sigma_next);
        if (rank > 0) {
            const double refined = refine_alpha(S, frame, a0, rank - 1);
            double sn2 = 0.0;
            const auto sv2 = sym_singular_values(sub_alpha_g(S, frame, refined));
            const int rank2 = numerical_rank(sv2, rank_tol_factor, n, anchor(refined), &sn2);
            if (rank2 < rank) {
                a0 = refined;
                rank = rank2;
                sigma_next = sn2;
            }
        }
        out.candidates.push_back({a0, rank, sigma_next});
        // Chart-provided alpha wins ties against eigenvalue candidates.
        const bool is_chart = chart_alpha && ci == cands.size() - 2;
        if (rank < out.min_rank || (is_chart && rank == out.min_rank)) {
            out.min_rank = rank;
            out.best_alpha = a0;
        }
    }
    std::sort(out.candidates.begin(), out.candidates.end(),
              [](const RankScanEntry& a, const RankScanEntry& b) {
                  return a.rank != b.rank ? a.rank < b.rank : a.alpha < b.alpha;
              });

    out.is_einstein = (out.min_rank == 0);
    out.is_quasi_einstein = (out.min_rank <= 1);
    out.is_2_quasi_einstein = (out.min_rank <= 2);
    out.rank_exactly_2 = (out.min_rank == 2);
    return out;
}

PartialEinsteinFit partially_einstein_fit(const Sym2& S, const Sym2& S2,
                                          const PointFrame& frame) {
    const int n = frame.n;
    const size_t m = S.c.size();
    Mat A(static_cast<int>(m), 2);
    std::vector<double> b(m);
    for (size_t t = 0; t < m; ++t) {
        A(static_cast<int>(t), 0) = S.c[t];
        A(static_cast<int>(t), 1) = frame.g.a[t];
        b[t] = S2.c[t];
    }
    const LsqResult fit = lsq_colpiv(A, b);
    PartialEinsteinFit out;
    out.lambda = fit.coeffs[0];
    out.mu = fit.coeffs[1];
    out.residual = fit.residual_norm / std::max(1.0, frob_norm(S2));
    out.verdict = out.residual < 1e-9;

    // Trace-removed restatement with the fitted lambda.
    const double kap = trace_g(S, frame);
    const double tr2 = trace_g(S2, frame);
    Sym2 lhs = S2, rhs = S;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            lhs(i, j) -= tr2 / n * frame.g(i, j);
            rhs(i, j) -= kap / n * frame.g(i, j);
        }
    out.identity_residual = rel_residual(lhs, scaled(out.lambda, rhs));
    return out;
}

namespace {

bool in_us_uc(const CurvaturePack& pack) {
    const int n = pack.frame.n;
    Sym2 dev = pack.S;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dev(i, j) -= pack.kappa / n * pack.frame.g(i, j);
    const bool us = frob_norm(dev) > 1e-10 * std::max(1.0, frob_norm(pack.S));
    const bool uc = pack.C.n == n && frob_norm(pack.C) > 1e-10 * std::max(1.0, frob_norm(pack.R));
    return us && uc;
}

}  // namespace

RoterFit roter_fit(const CurvaturePack& pack) {
    RoterFit out;
    if (!in_us_uc(pack)) {
        out.status = "outside-us-uc";
        return out;
    }
    const int n = pack.frame.n;
    const Sym2 g = Sym2::from_mat(pack.frame.g);
    const Curv4 ss = scaled(0.5, wedge22(pack.S, pack.S));
    const Curv4 gs = wedge22(g, pack.S);
    const Curv4 gg = scaled(0.5, wedge22(g, g));

    const size_t m = pack.R.c.size();
    Mat A(static_cast<int>(m), 3);
    for (size_t t = 0; t < m; ++t) {
        A(static_cast<int>(t), 0) = ss.c[t];
        A(static_cast<int>(t), 1) = gs.c[t];
        A(static_cast<int>(t), 2) = gg.c[t];
    }
    const LsqResult fit = lsq_colpiv(A, pack.R.c, 1e-13);
    if (fit.rank < 3 || fit.cond > 1e10) {
        out.status = "ill-posed";
        out.cond = fit.cond;
        return out;
    }
    out.phi1 = fit.coeffs[0];
    out.mu1 = fit.coeffs[1];
    out.eta1 = fit.coeffs[2];
    out.cond = fit.cond;
    out.residual = fit.residual_norm / std::max(1.0, frob_norm(pack.R));
    out.verdict = out.residual < 1e-8;

    if (out.verdict && out.phi1 != 0.0) {
        out.alpha1 = pack.kappa + ((n - 2) * out.mu1 - 1.0) / out.phi1;
        out.alpha2 = (out.mu1 * pack.kappa + (n - 1) * out.eta1) / out.phi1;
        Sym2 rhs = sym2_axpy(out.alpha1, pack.S, scaled(out.alpha2, g));
        out.s2_residual = rel_residual(pack.S2, rhs);
    }
    return out;
}

GenRoterFit gen_roter_fit(const CurvaturePack& pack) {
    GenRoterFit out;
    if (!in_us_uc(pack)) {
        out.status = "outside-us-uc";
        return out;
    }
    const Sym2 g = Sym2::from_mat(pack.frame.g);
    const Curv4 cols[6] = {
        scaled(0.5, wedge22(pack.S2, pack.S2)), wedge22(pack.S, pack.S2),
        scaled(0.5, wedge22(pack.S, pack.S)),   wedge22(g, pack.S2),
        wedge22(g, pack.S),                     scaled(0.5, wedge22(g, g))};
    const size_t m = pack.R.c.size();
    Mat A(static_cast<int>(m), 6);
    for (int c = 0; c < 6; ++c)
        for (size_t t = 0; t < m; ++t) A(static_cast<int>(t), c) = cols[c].c[t];
    // Near-dependent columns (rank-2 Ricci collapses the S2 wedges onto the
    // lower span) are dropped and reported with zero coefficients.
    const LsqResult fit = lsq_colpiv(A, pack.R.c, 1e-10);
    out.basis_rank = fit.rank;
    out.dropped = fit.dropped;
    for (int c = 0; c < 6; ++c) out.coeff[static_cast<size_t>(c)] = fit.coeffs[c];
    out.residual = fit.residual_norm / std::max(1.0, frob_norm(pack.R));
    out.verdict = out.residual < 1e-8;
    if (fit.rank == 0) out.status = "ill-posed";
    return out;
}

ClassFlags classify_point(const CurvaturePack& pack, std::optional<double> chart_alpha,
                          double rank_tol_factor) {
    ClassFlags out;
    out.flat = frob_norm(pack.R) < 1e-12 * std::max(1.0, norm1(pack.frame.g));
    out.scan = quasi_rank_scan(pack.S, pack.frame, chart_alpha, rank_tol_factor);
    out.partial = partially_einstein_fit(pack.S, pack.S2, pack.frame);
    if (pack.frame.n >= 4) {
        out.roter = roter_fit(pack);
        out.gen_roter = gen_roter_fit(pack);
        const double escale = std::max(1.0, frob_norm(pack.S) * frob_norm(pack.S));
        out.e_c_degenerate =
            frob_norm(pack.E) < 1e-10 * escale || frob_norm(pack.C) < 1e-12;
        if (!out.e_c_degenerate) out.e_c = proportionality(pack.E, pack.C);
    }
    return out;
}

}  // namespace curv
