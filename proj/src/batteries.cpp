#include "curv/batteries.hpp"

#include <cmath>

#include "curv/catalog.hpp"
#include "curv/classify.hpp"
#include "curv/curvature.hpp"
#include "curv/pseudosym.hpp"
#include "curv/tensor_ops.hpp"

namespace curv {

namespace {

PointFrame draw_frame(int n, Rng& rng) {
    switch (rng.uniform_int(0, 3)) {
        case 0: return euclidean_frame(n);
        case 1: return minkowski_frame(n);
        case 2: return random_frame(n, 0, rng);
        default: return random_frame(n, 1, rng);
    }
}

// Residual of "sum of terms = 0", scaled by the largest term.
template <typename T>
double zero_sum_residual(const std::vector<T>& terms) {
    T sum = terms[0];
    double scale = frob_norm(terms[0]);
    for (size_t i = 1; i < terms.size(); ++i) {
        sum = add(sum, terms[i]);
        scale = std::max(scale, frob_norm(terms[i]));
    }
    return frob_norm(sum) / std::max(1.0, scale);
}

Sym2 sym2_combo(double a, const Sym2& X, double b, const Sym2& Y) {
    Sym2 r = scaled(a, X);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b * Y.c[i];
    return r;
}

bool square_independent(const Sym2& A, const Sym2& A2, const PointFrame& frame) {
    // Reject draws where A2 nearly lies in span{g, A}.
    const size_t m = A.c.size();
    Mat M(static_cast<int>(m), 2);
    for (size_t t = 0; t < m; ++t) {
        M(static_cast<int>(t), 0) = frame.g.a[t];
        M(static_cast<int>(t), 1) = A.c[t];
    }
    const LsqResult fit = lsq_colpiv(M, A2.c);
    return fit.residual_norm > 1e-3 * std::max(1.0, frob_norm(A2));
}

}  // namespace

void BatteryResult::absorb(const std::string& what, double residual) {
    ++instances;
    if (residual > max_residual) max_residual = residual;
    if (residual > tolerance && pass) {
        pass = false;
        notes.push_back(what + " residual " + std::to_string(residual));
    }
}

BatteryResult battery_wedge_tachibana(int instances_per_n, double tol, uint64_t seed) {
    BatteryResult out;
    out.id = "wedge-tachibana";
    out.tolerance = tol;
    Rng rng(seed);
    for (int n = 4; n <= 6; ++n)
        for (int inst = 0; inst < instances_per_n; ++inst) {
            const PointFrame frame = draw_frame(n, rng);
            const Sym2 A1 = random_sym2(n, rng);
            const Sym2 A2 = random_sym2(n, rng);
            const Sym2 F = random_sym2(n, rng);

            // Q(A1, A2^F) + Q(A2, A1^F) + Q(F, A1^A2) = 0
            out.absorb("Q-cyclic",
                       zero_sum_residual<Tens6>({tachibana24(A1, wedge22(A2, F)),
                                                 tachibana24(A2, wedge22(A1, F)),
                                                 tachibana24(F, wedge22(A1, A2))}));
            // A1^Q(A2,F) + A2^Q(A1,F) + Q(F, A1^A2) = 0
            out.absorb("wedge-cyclic",
                       zero_sum_residual<Tens6>({wedge24(A1, tachibana22(A2, F)),
                                                 wedge24(A2, tachibana22(A1, F)),
                                                 tachibana24(F, wedge22(A1, A2))}));
            // A^Q(A,F) = -Q(F, A^A/2)
            const Curv4 AAhalf = scaled(0.5, wedge22(A1, A1));
            out.absorb("wedge-self", rel_residual(wedge24(A1, tachibana22(A1, F)),
                                                  scaled(-1.0, tachibana24(F, AAhalf))));
            // Q(A, A^F) = -Q(F, A^A/2)
            out.absorb("Q-self", rel_residual(tachibana24(A1, wedge22(A1, F)),
                                              scaled(-1.0, tachibana24(F, AAhalf))));
            // Q(A, A) = 0 and Q(g, g^g) = 0
            out.absorb("Q-diag", frob_norm(tachibana22(A1, A1)) /
                                     std::max(1.0, frob_norm(A1) * frob_norm(A1)));
            const Sym2 g = Sym2::from_mat(frame.g);
            out.absorb("Q-g-gg", frob_norm(tachibana24(g, wedge22(g, g))) /
                                     std::max(1.0, frob_norm(wedge22(g, g))));
        }
    return out;
}

BatteryResult battery_rank2(int instances_per_n, double tol, uint64_t seed) {
    BatteryResult out;
    out.id = "rank2-identities";
    out.tolerance = tol;
    Rng rng(seed);
    for (int n = 4; n <= 6; ++n)
        for (int inst = 0; inst < instances_per_n; ++inst) {
            const PointFrame frame = draw_frame(n, rng);
            const Sym2 g = Sym2::from_mat(frame.g);
            const Sym2 A = random_rank2(n, rng);
            const Sym2 A2 = sym2_square(A, frame);
            const Sym2 A3 = sym2_mul(A2, A, frame);
            const Sym2 A4 = sym2_mul(A2, A2, frame);
            const double trA = trace_g(A, frame);
            const double trA2 = trace_g(A2, frame);
            const double disc = trA2 - trA * trA;  // tr A^2 - (tr A)^2

            // A^3 = trA A^2 + disc/2 A
            out.absorb("cube", rel_residual(A3, sym2_combo(trA, A2, 0.5 * disc, A)));
            // A ^ A2 = trA/2 A^A
            out.absorb("wedge-square",
                       rel_residual(wedge22(A, A2), scaled(0.5 * trA, wedge22(A, A))));
            // A2 ^ A2 = -disc/2 A^A ... note disc here is tr(A^2) - (trA)^2
            out.absorb("square-square",
                       rel_residual(wedge22(A2, A2), scaled(-0.5 * disc, wedge22(A, A))));
            // (A2 - trA A)^(A2 - trA A) = -disc/2 A^A
            const Sym2 D = sym2_combo(1.0, A2, -trA, A);
            out.absorb("shifted-square",
                       rel_residual(wedge22(D, D), scaled(-0.5 * disc, wedge22(A, A))));
            // Q(A, A2^g) + Q(A2, A^g) = -trA Q(g, A^A/2)
            const Curv4 AAhalf = scaled(0.5, wedge22(A, A));
            out.absorb("Q-mixed",
                       rel_residual(add(tachibana24(A, wedge22(A2, g)),
                                        tachibana24(A2, wedge22(A, g))),
                                    scaled(-trA, tachibana24(g, AAhalf))));
            // A^Q(g,A2) + A2^Q(g,A) = trA Q(g, A^A/2)
            out.absorb("wedge-mixed",
                       rel_residual(add(wedge24(A, tachibana22(g, A2)),
                                        wedge24(A2, tachibana22(g, A))),
                                    scaled(trA, tachibana24(g, AAhalf))));
            // A^4 = ((trA2 + trA^2) A2 + trA (trA2 - trA^2) A)/2
            out.absorb("quartic",
                       rel_residual(A4, sym2_combo(0.5 * (trA2 + trA * trA), A2,
                                                   0.5 * trA * disc, A)));
            // A^4 - 2 trA A^3 + trA^2 A^2 = disc/2 (A2 - trA A)
            {
                Sym2 lhs = A4;
                for (size_t t = 0; t < lhs.c.size(); ++t)
                    lhs.c[t] += -2.0 * trA * A3.c[t] + trA * trA * A2.c[t];
                out.absorb("quartic-shifted", rel_residual(lhs, scaled(0.5 * disc, D)));
            }
            // Q(A2, A^A/2) = 0
            out.absorb("Q-square-wedge",
                       frob_norm(tachibana24(A2, AAhalf)) /
                           std::max(1.0, frob_norm(A2) * frob_norm(AAhalf)));
            // (A^A/2).(A^A/2) = 0
            out.absorb("wedge-dot-wedge",
                       frob_norm(dot44(AAhalf, AAhalf, frame)) /
                           std::max(1.0, frob_norm(AAhalf) * frob_norm(AAhalf)));
            // (g^D).(g^D) = disc/2 Q(g, g^D)
            const Curv4 gD = wedge22(g, D);
            out.absorb("gD-dot-gD", rel_residual(dot44(gD, gD, frame),
                                                 scaled(0.5 * disc, tachibana24(g, gD))));
            // (A^A/2).(g^D) + (g^D).(A^A/2) = disc/2 Q(g, A^A/2)
            out.absorb("cross-dot",
                       rel_residual(add(dot44(AAhalf, gD, frame), dot44(gD, AAhalf, frame)),
                                    scaled(0.5 * disc, tachibana24(g, AAhalf))));
            // six-term span collapses onto the four-term span
            {
                const double p0 = rng.uniform(-1, 1), p2 = rng.uniform(-1, 1),
                             p3 = rng.uniform(-1, 1), p4 = rng.uniform(-1, 1),
                             p5 = rng.uniform(-1, 1), p6 = rng.uniform(-1, 1);
                Curv4 B6 = scaled(0.5 * p0, wedge22(A, A));
                B6 = axpy(p2, wedge22(g, A), B6);
                B6 = axpy(0.5 * p3, wedge22(g, g), B6);
                B6 = axpy(p4, wedge22(g, A2), B6);
                B6 = axpy(p5, wedge22(A, A2), B6);
                B6 = axpy(0.5 * p6, wedge22(A2, A2), B6);
                const double p1 = p0 + trA * p5 - 0.5 * disc * p6;
                Curv4 B4 = scaled(0.5 * p1, wedge22(A, A));
                B4 = axpy(p2, wedge22(g, A), B4);
                B4 = axpy(0.5 * p3, wedge22(g, g), B4);
                B4 = axpy(p4, wedge22(g, A2), B4);
                out.absorb("span-reduction", rel_residual(B6, B4));
            }
        }
    return out;
}

BatteryResult battery_rank2_pseudosymmetry(int instances_per_n, double tol, uint64_t seed) {
    BatteryResult out;
    out.id = "rank2-pseudosymmetry";
    out.tolerance = tol;
    Rng rng(seed);
    for (int n = 4; n <= 6; ++n)
        for (int inst = 0; inst < instances_per_n; ++inst) {
            const PointFrame frame = draw_frame(n, rng);
            const Sym2 g = Sym2::from_mat(frame.g);
            const Sym2 A = random_rank2(n, rng);
            const Sym2 A2 = sym2_square(A, frame);
            const double trA = trace_g(A, frame);
            const double trA2 = trace_g(A2, frame);
            const double disc = trA2 - trA * trA;
            const Sym2 D = sym2_combo(1.0, A2, -trA, A);

            // core = g^D + (n-2)/2 A^A satisfies core.core = disc/2 Q(g, core)
            Curv4 core = wedge22(g, D);
            core = axpy(0.5 * (n - 2), wedge22(A, A), core);
            out.absorb("core", rel_residual(dot44(core, core, frame),
                                            scaled(0.5 * disc, tachibana24(g, core))));

            double lam = rng.uniform(-2.0, 2.0);
            if (std::fabs(lam) < 0.1) lam = 0.5;
            const double mu = rng.uniform(-2.0, 2.0);
            Curv4 B = scaled(lam, core);
            B = axpy(0.5 * mu, wedge22(g, g), B);
            out.absorb("scaled",
                       rel_residual(dot44(B, B, frame),
                                    scaled(mu + 0.5 * lam * disc, tachibana24(g, B))));
        }
    return out;
}

BatteryResult battery_e_tensor(int instances_per_n, double tol, uint64_t seed) {
    BatteryResult out;
    out.id = "e-tensor";
    out.tolerance = tol;
    Rng rng(seed);
    for (int n = 4; n <= 6; ++n)
        for (int inst = 0; inst < instances_per_n; ++inst) {
            const PointFrame frame = draw_frame(n, rng);
            const Sym2 g = Sym2::from_mat(frame.g);

            // E(g) = 0
            out.absorb("E-of-g", frob_norm(e_tensor(g, frame)));

            // E(A + lambda g) = E(A)
            const Sym2 A = random_sym2(n, rng);
            const double lam = rng.uniform(-2.0, 2.0);
            out.absorb("shift-invariance",
                       rel_residual(e_tensor(sym2_combo(1.0, A, lam, g), frame),
                                    e_tensor(A, frame)));

            // rank-one shift of g: E vanishes, and both consequences hold
            double rho0 = 0.0;
            const Sym2 Q = random_rank1_shift(n, frame, rng, &rho0);
            const double scaleQ = std::max(1.0, frob_norm(Q) * frob_norm(Q));
            out.absorb("rank1-shift-E", frob_norm(e_tensor(Q, frame)) / scaleQ);
            {
                const Sym2 Q2 = sym2_square(Q, frame);
                const double trQ = trace_g(Q, frame);
                const double trQ2 = trace_g(Q2, frame);
                const Sym2 devQ2 = sym2_combo(1.0, Q2, -trQ2 / n, g);
                const Sym2 devQ = sym2_combo(1.0, Q, -trQ / n, g);
                const Proportionality pr = proportionality(devQ2, devQ);
                out.absorb("rank1-affine", pr.residual);
                const double shift = (trQ - pr.lambda) / (n - 2.0);
                const Sym2 W = sym2_combo(1.0, Q, -shift, g);
                out.absorb("rank1-wedge", frob_norm(wedge22(W, W)) / scaleQ);
            }
        }
    return out;
}

BatteryResult battery_weyl_linearity(int instances_per_n, double tol, uint64_t seed) {
    BatteryResult out;
    out.id = "weyl-linearity";
    out.tolerance = tol;
    Rng rng(seed);
    for (int n = 4; n <= 6; ++n)
        for (int inst = 0; inst < instances_per_n; ++inst) {
            const PointFrame frame = draw_frame(n, rng);
            const Sym2 g = Sym2::from_mat(frame.g);

            // A genuine pack: R from the Gauss equation of a random H.
            const Sym2 H = random_sym2(n, rng);
            const double eps = rng.uniform(-1.0, 1.0) < 0 ? -1.0 : 1.0;
            const double kt = rng.uniform(-3.0, 3.0);
            const CurvaturePack pack = gauss_pack(H, frame, eps, kt);

            const double a1 = rng.uniform(-2, 2), a2 = rng.uniform(-2, 2),
                         a3 = rng.uniform(-2, 2), a4 = rng.uniform(-2, 2),
                         a5 = rng.uniform(-2, 2);
            Curv4 T = scaled(a1, pack.R);
            T = axpy(0.5 * a2, wedge22(pack.S, pack.S), T);
            T = axpy(a3, wedge22(g, pack.S), T);
            T = axpy(a4, wedge22(g, pack.S2), T);
            T = axpy(0.5 * a5, wedge22(g, g), T);
            Curv4 expect = scaled(a1, pack.C);
            expect = axpy(a2 / (n - 2.0), pack.E, expect);
            out.absorb("combo", rel_residual(weyl(T, frame), expect));

            // alpha1 = 0 with a rank-2 seed: Weyl of the combination is the
            // E-tensor of the seed.
            const Sym2 A = random_rank2(n, rng);
            const Sym2 As = sym2_square(A, frame);
            Curv4 Rb = scaled(0.5 * a2, wedge22(A, A));
            Rb = axpy(a3, wedge22(g, A), Rb);
            Rb = axpy(a4, wedge22(g, As), Rb);
            Rb = axpy(0.5 * a5, wedge22(g, g), Rb);
            out.absorb("built", rel_residual(weyl(Rb, frame),
                                             scaled(a2 / (n - 2.0), e_tensor(A, frame))));
        }
    return out;
}

BatteryResult battery_block_weyl(double tol, uint64_t seed) {
    BatteryResult out;
    out.id = "block-weyl";
    out.tolerance = tol;
    Rng rng(seed);
    for (int n = 4; n <= 6; ++n)
        for (int p = 2; p <= n - 2; ++p)
            for (int variant = 0; variant < 4; ++variant) {
                const PointFrame frame =
                    (variant % 2) ? minkowski_frame(n) : euclidean_frame(n);
                double tau = rng.uniform(-3.0, 3.0);
                if (std::fabs(tau) < 0.1) tau = 1.0;
                const Curv4 W = fixture_block_weyl(n, p, tau, frame);
                out.absorb("gencurv", gencurv_check(W).worst());
                out.absorb("traceless", frob_norm(ricci(W, frame)) /
                                            std::max(1.0, frob_norm(W)));
                const Sym2 g = Sym2::from_mat(frame.g);
                const double L = -tau / (p * (n - p));
                out.absorb("dot", rel_residual(dot44(W, W, frame),
                                               scaled(L, tachibana24(g, W))));
                if (tau == 1.0 && n == 4) {
                    // tau = 0 gives the zero tensor
                    const Curv4 Z = fixture_block_weyl(n, p, 0.0, frame);
                    out.absorb("tau-zero", frob_norm(Z));
                }
            }
    return out;
}

BatteryResult battery_rank2_construction(int instances, double coeff_tol, double ident_tol,
                                         uint64_t seed) {
    BatteryResult out;
    out.id = "rank2-construction";
    out.tolerance = coeff_tol;
    Rng rng(seed);
    int done = 0;
    while (done < instances) {
        const int n = 4 + (done % 3);
        const PointFrame frame = draw_frame(n, rng);
        const Sym2 g = Sym2::from_mat(frame.g);
        const Sym2 A = random_rank2(n, rng);
        const Sym2 A2 = sym2_square(A, frame);
        if (!square_independent(A, A2, frame)) continue;
        double psi3 = rng.uniform(-2.0, 2.0);
        if (std::fabs(psi3) < 0.05) psi3 = 0.5;
        const double rho = rng.uniform(-1.0, 1.0);
        const double eps = rng.uniform(-1.0, 1.0) < 0 ? -1.0 : 1.0;
        ++done;

        const double trA = trace_g(A, frame);
        const double trA2 = trace_g(A2, frame);
        const Section5Coeffs c = section5_coeffs(trA, trA2, rho, eps, psi3, n);
        const Curv4 B = section5_build(A, rho, eps, psi3, frame);

        // Ric(B) = A + eps rho g and Weyl(B) = psi3 E(A)
        const Sym2 ric = ricci(B, frame);
        out.absorb("ricci-inversion",
                   rel_residual(ric, sym2_combo(1.0, A, eps * rho, g)));
        const Curv4 W = weyl(B, frame);
        out.absorb("weyl-form", rel_residual(W, scaled(psi3, e_tensor(A, frame))));

        const Sym2 ric2 = sym2_square(ric, frame);
        const Tens6 BB = dot44(B, B, frame);
        const Tens6 QricB = tachibana24(ric, B);
        const Tens6 QgW = tachibana24(g, W);
        const Tens6 WW = dot44(W, W, frame);

        // fitted coefficients against the closed forms
        {
            const ConditionResult f =
                fit_condition("a1", "L", sub(BB, QricB), QgW, 1e-8);
            out.absorb("cond-a1-holds", f.residual);
            out.absorb("fit-alpha1", std::fabs(f.coeff("L") - c.alpha1) /
                                         std::max(1.0, std::fabs(c.alpha1)));
        }
        {
            const ConditionResult f = fit_condition("a2", "L", WW, QgW, 1e-8);
            out.absorb("cond-a2-holds", f.residual);
            out.absorb("fit-alpha2", std::fabs(f.coeff("L") - c.alpha2) /
                                         std::max(1.0, std::fabs(c.alpha2)));
        }
        {
            const Curv4 target = dot42(B, ric, frame);
            const Curv4 cols[3] = {tachibana22(g, ric), tachibana22(g, ric2),
                                   tachibana22(ric, ric2)};
            const size_t m = target.c.size();
            Mat M(static_cast<int>(m), 3);
            for (int cc = 0; cc < 3; ++cc)
                for (size_t t = 0; t < m; ++t) M(static_cast<int>(t), cc) = cols[cc].c[t];
            const LsqResult fit = lsq_colpiv(M, target.c);
            out.absorb("cond-a345-holds",
                       fit.residual_norm / std::max(1.0, frob_norm(target)));
            const double pred[3] = {c.alpha3, c.alpha4, c.alpha5};
            const char* names[3] = {"fit-alpha3", "fit-alpha4", "fit-alpha5"};
            for (int cc = 0; cc < 3; ++cc)
                out.absorb(names[cc], std::fabs(fit.coeffs[cc] - pred[cc]) /
                                          std::max(1.0, std::fabs(pred[cc])));
        }

        // internal coefficient identities, at the tighter tolerance
        auto ident = [&](const std::string& what, double lhs, double rhs) {
            const double r = std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs));
            ++out.instances;
            if (r > out.max_residual) out.max_residual = std::max(out.max_residual, r);
            if (r > ident_tol && out.pass) {
                out.pass = false;
                out.notes.push_back(what + " residual " + std::to_string(r));
            }
        };
        ident("psi2", c.psi2, (n - 2) * c.psi3);
        ident("tau2", c.tau2, eps * rho / (n - 2.0));
        ident("tau1", c.tau1, (1.0 - trA * c.psi2) / (n - 1.0));
        const double disc02 = trA2 - trA * trA;  // tr(A^2) - (trA)^2
        ident("beta1-def", c.beta1, 0.5 * disc02 * c.psi3 + c.psi0);
        ident("chen36-a", c.beta1, (n - 2) * c.beta3 * c.psi3 + c.psi0);
        ident("chen36-b", c.beta2, (n - 2) * c.beta3 * c.psi3 + trA / (n - 2.0) + c.psi0);
        ident("chen36-c", c.beta2, c.beta1 + trA / (n - 2.0));

        // derivation-action expansions used in the construction
        {
            const Curv4 BA = dot42(B, A, frame);
            Curv4 rhs = scaled((n - 3.0) * c.psi3, tachibana22(A, A2));
            rhs = axpy(1.0 / (n - 2.0), tachibana22(g, A2), rhs);
            rhs = axpy(c.beta1, tachibana22(g, A), rhs);
            out.absorb("BA-expansion", rel_residual(BA, rhs));

            const Curv4 BA2 = dot42(B, A2, frame);
            Curv4 rhs2 = scaled(c.beta2, tachibana22(g, A2));
            rhs2 = axpy(c.beta3, tachibana22(g, A), rhs2);
            rhs2 = axpy(trA * c.psi2 + c.psi1, tachibana22(A, A2), rhs2);
            out.absorb("BA2-expansion", rel_residual(BA2, rhs2));
        }
    }
    return out;
}

BatteryResult battery_hypersurface(int instances_per_n, double tol, uint64_t seed) {
    BatteryResult out;
    out.id = "hypersurface";
    out.tolerance = tol;
    Rng rng(seed);
    for (int n = 4; n <= 6; ++n)
        for (int inst = 0; inst < instances_per_n; ++inst) {
            const PointFrame frame = draw_frame(n, rng);
            const Sym2 g = Sym2::from_mat(frame.g);
            const double eps = rng.uniform(-1.0, 1.0) < 0 ? -1.0 : 1.0;
            const double kt = rng.uniform(-4.0, 4.0);

            {  // generic H: R.R = Q(S,R) - (n-2)kt/(n(n+1)) Q(g,C)
                const Sym2 H = random_sym2(n, rng);
                const CurvaturePack pack = gauss_pack(H, frame, eps, kt);
                const Tens6 lhs = sub(dot44(pack.R, pack.R, pack.frame),
                                      tachibana24(pack.S, pack.R));
                const double L = -(n - 2.0) * kt / (n * (n + 1.0));
                out.absorb("two-term",
                           rel_residual(lhs, scaled(L, tachibana24(g, pack.C))));
                // closed-form S and kappa
                const double trH = trace_g(H, frame);
                const Sym2 H2 = sym2_square(H, frame);
                Sym2 Sc = sym2_combo(eps * trH, H, -eps, H2);
                Sc = sym2_combo(1.0, Sc, (n - 1.0) * kt / (n * (n + 1.0)), g);
                out.absorb("gauss-ricci", rel_residual(pack.S, Sc));
                const double kap = eps * (trH * trH - trace_g(H2, frame)) +
                                   (n - 1.0) * kt / (n + 1.0);
                out.absorb("gauss-scalar", std::fabs(pack.kappa - kap) /
                                               std::max(1.0, std::fabs(kap)));
            }
            {  // flat ambient: R.R = Q(S,R)
                const Sym2 H = random_sym2(n, rng);
                const CurvaturePack pack = gauss_pack(H, frame, eps, 0.0);
                out.absorb("flat-ambient",
                           rel_residual(dot44(pack.R, pack.R, pack.frame),
                                        tachibana24(pack.S, pack.R)));
            }
            {  // rank-2 H: type number two
                const Sym2 H = random_rank2(n, rng);
                const CurvaturePack pack = gauss_pack(H, frame, eps, kt);
                const Sym2 H2 = sym2_square(H, frame);
                const double disc = trace_g(H2, frame) -
                                    trace_g(H, frame) * trace_g(H, frame);
                const double LC = (n - 3.0) * eps * disc / (2.0 * (n - 2.0) * (n - 1.0));
                out.absorb("type2-weyl",
                           rel_residual(dot44(pack.C, pack.C, pack.frame),
                                        scaled(LC, tachibana24(g, pack.C))));
                out.absorb("type2-const",
                           rel_residual(dot44(pack.R, pack.R, pack.frame),
                                        scaled(kt / (n * (n + 1.0)),
                                               tachibana24(g, pack.R))));
            }
            {  // rank-one shifted H (2-quasi-umbilical)
                double rho = 0.0;
                const Sym2 H = random_rank1_shift(n, frame, rng, &rho);
                const CurvaturePack pack = gauss_pack(H, frame, eps, kt);
                const Sym2 A = sym2_combo(1.0, H, -rho, g);
                const Sym2 A2 = sym2_square(A, frame);
                const double disc = trace_g(A2, frame) -
                                    trace_g(A, frame) * trace_g(A, frame);
                const double LC = (n - 3.0) * eps * disc / (2.0 * (n - 2.0) * (n - 1.0));
                out.absorb("quasi2-weyl",
                           rel_residual(dot44(pack.C, pack.C, pack.frame),
                                        scaled(LC, tachibana24(g, pack.C))));
                // conformally flat ambient: C = eps/(n-2) E(H)
                out.absorb("weyl-from-H",
                           rel_residual(pack.C,
                                        scaled(eps / (n - 2.0), e_tensor(H, frame))));
            }
        }
    return out;
}

BatteryResult battery_roter_fixtures(int instances, double tol, uint64_t seed) {
    BatteryResult out;
    out.id = "roter-fixtures";
    out.tolerance = tol;
    Rng rng(seed);
    int done = 0;
    while (done < instances) {
        const int n = 4 + (done % 3);
        const PointFrame frame = (done % 2) ? minkowski_frame(n) : euclidean_frame(n);
        const Sym2 g = Sym2::from_mat(frame.g);

        // Two-eigenvalue A: c1 on a p-block, c2 on the rest.
        const int p = rng.uniform_int(2, n - 2);
        const double c1 = rng.uniform(-2.0, 2.0);
        const double c2 = rng.uniform(-2.0, 2.0);
        if (std::fabs(c1 - c2) < 0.2 || std::fabs(c1) < 0.1 || std::fabs(c2) < 0.1) continue;
        Sym2 A(n);
        for (int i = 0; i < n; ++i) A(i, i) = (i < p ? c1 : c2) * frame.g(i, i);

        double phi1 = rng.uniform(-2.0, 2.0);
        if (std::fabs(phi1) < 0.2) phi1 = 1.0;
        const double mu1 = rng.uniform(-1.0, 1.0);
        const double eta1 = rng.uniform(-1.0, 1.0);

        Curv4 B = scaled(0.5 * phi1, wedge22(A, A));
        B = axpy(mu1, wedge22(g, A), B);
        B = axpy(0.5 * eta1, wedge22(g, g), B);

        // A^2 = a A + b g, so Ric(B) = pcoef A + qcoef g.
        const double a = c1 + c2, b = -c1 * c2;
        const double trA = trace_g(A, frame);
        const double pcoef = phi1 * trA + (n - 2) * mu1 - phi1 * a;
        const double qcoef = mu1 * trA + (n - 1) * eta1 - phi1 * b;
        if (std::fabs(pcoef) < 0.1) continue;
        const Sym2 ric = ricci(B, frame);
        const double ric_resid =
            rel_residual(ric, sym2_combo(pcoef, A, qcoef, g));
        if (frob_norm(weyl(B, frame)) < 1e-6) continue;  // need a Weyl part
        ++done;
        out.absorb("ricci-closed-form", ric_resid);

        const double phi1p = phi1 / (pcoef * pcoef);
        const double mu1p = mu1 / pcoef - phi1 * qcoef / (pcoef * pcoef);
        const double eta1p =
            eta1 - 2.0 * mu1 * qcoef / pcoef + phi1 * qcoef * qcoef / (pcoef * pcoef);

        // B equals its own Roter-type combination in Ric(B)
        Curv4 Bcheck = scaled(0.5 * phi1p, wedge22(ric, ric));
        Bcheck = axpy(mu1p, wedge22(g, ric), Bcheck);
        Bcheck = axpy(0.5 * eta1p, wedge22(g, g), Bcheck);
        out.absorb("roter-form", rel_residual(B, Bcheck));

        for (const ConditionResult& r : roter_suite(B, frame, phi1p, mu1p, eta1p, tol))
            out.absorb(r.id, r.residual);

        // Generic-A identities: B.B decomposition and the A^2 closed form.
        {
            const Sym2 Afull = random_sym2(n, rng);
            Curv4 Bf = scaled(0.5 * phi1, wedge22(Afull, Afull));
            Bf = axpy(mu1, wedge22(g, Afull), Bf);
            Bf = axpy(0.5 * eta1, wedge22(g, g), Bf);
            const Sym2 ricf = ricci(Bf, frame);
            const Curv4 Wf = weyl(Bf, frame);
            const double LW = (n - 2.0) * (mu1 * mu1 - phi1 * eta1) / phi1;
            out.absorb("generic-BB",
                       rel_residual(dot44(Bf, Bf, frame),
                                    axpy(LW, tachibana24(g, Wf),
                                         tachibana24(ricf, Bf))));
            // A^2 = phi1^-1 ((phi1 trA + (n-2) mu1) A + (mu1 trA + (n-1) eta1) g - Ric)
            const double trAf = trace_g(Afull, frame);
            Sym2 rhs = sym2_combo((phi1 * trAf + (n - 2) * mu1) / phi1, Afull,
                                  (mu1 * trAf + (n - 1) * eta1) / phi1, g);
            rhs = sym2_combo(1.0, rhs, -1.0 / phi1, ricf);
            out.absorb("generic-A2", rel_residual(sym2_square(Afull, frame), rhs));
            // B.A = Q(Ric + (n-2)(mu1^2 - phi1 eta1)/phi1 g, A + mu1/phi1 g)
            const Sym2 left = sym2_combo(1.0, ricf,
                                         (n - 2.0) * (mu1 * mu1 - phi1 * eta1) / phi1, g);
            const Sym2 right = sym2_combo(1.0, Afull, mu1 / phi1, g);
            out.absorb("generic-BA", rel_residual(dot42(Bf, Afull, frame),
                                                  tachibana22(left, right)));
            // phi1 = 0 forces Weyl(B) = 0
            Curv4 B0 = wedge22(g, Afull);
            B0 = axpy(0.5 * eta1, wedge22(g, g), scaled(mu1, B0));
            out.absorb("phi1-zero-weyl", frob_norm(weyl(B0, frame)) /
                                             std::max(1.0, frob_norm(B0)));
        }
    }
    return out;
}

}  // namespace curv
