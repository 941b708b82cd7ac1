#include "curv/pseudosym.hpp"

#include <cmath>

namespace curv {

double ConditionResult::coeff(const std::string& name) const {
    for (const auto& [k, v] : coeffs)
        if (k == name) return v;
    return 0.0;
}

namespace {

constexpr double kZeroAbs = 1e-12;

template <typename T>
ConditionResult fit_scalar(const std::string& id, const std::string& coeff_name, const T& left,
                           const T& right, double tol) {
    ConditionResult out;
    out.id = id;
    const double nl = frob_norm(left);
    const double nr = frob_norm(right);
    if (nl < kZeroAbs && nr < kZeroAbs) {
        out.status = "trivial";
        out.coeffs = {{coeff_name, 0.0}};
        out.verdict = true;
        return out;
    }
    if (nr < kZeroAbs) {
        out.status = "degenerate";
        out.coeffs = {{coeff_name, 0.0}};
        out.residual = 1.0;
        out.verdict = false;
        return out;
    }
    const double L = frob_dot(left, right) / (nr * nr);
    out.coeffs = {{coeff_name, L}};
    out.residual = frob_norm(axpy(-L, right, left)) / std::max(1.0, std::max(nl, nr));
    out.verdict = out.residual < tol;
    return out;
}

void attach_prediction(ConditionResult& r, const std::string& name, double value) {
    r.predicted[name] = value;
    r.delta[name] = std::fabs(r.coeff(name) - value) / std::max(1.0, std::fabs(value));
}

}  // namespace

ConditionResult fit_condition(const std::string& id, const std::string& coeff_name,
                              const Tens6& left, const Tens6& right, double tol) {
    return fit_scalar(id, coeff_name, left, right, tol);
}

ConditionResult fit_condition4(const std::string& id, const std::string& coeff_name,
                               const Curv4& left, const Curv4& right, double tol) {
    return fit_scalar(id, coeff_name, left, right, tol);
}

ConditionResult fit_pseudosymmetric(const CurvaturePack& pack) {
    const Sym2 g = Sym2::from_mat(pack.frame.g);
    const Tens6 rr = dot44(pack.R, pack.R, pack.frame);
    const Tens6 qgr = tachibana24(g, pack.R);
    ConditionResult r = fit_condition("RR=L_R.Q(g,R)", "L_R", rr, qgr);
    if (r.status == "trivial") r.status = "semisymmetric";
    return r;
}

ConditionResult fit_ricci_pseudosymmetric(const CurvaturePack& pack) {
    const Sym2 g = Sym2::from_mat(pack.frame.g);
    const Curv4 rs = dot42(pack.R, pack.S, pack.frame);
    const Curv4 qgs = tachibana22(g, pack.S);
    return fit_condition4("RS=L_S.Q(g,S)", "L_S", rs, qgs);
}

ConditionResult fit_weyl_pseudosymmetric(const CurvaturePack& pack,
                                         const WarpedInvariants* inv) {
    const int n = pack.frame.n;
    const Sym2 g = Sym2::from_mat(pack.frame.g);
    const Tens6 cc = dot44(pack.C, pack.C, pack.frame);
    const Tens6 qgc = tachibana24(g, pack.C);
    ConditionResult r = fit_condition("CC=L_C.Q(g,C)", "L_C", cc, qgc);
    if (inv) attach_prediction(r, "L_C", -inv->rho / (2.0 * (n - 2)));
    return r;
}

ConditionResult fit_two_term(const CurvaturePack& pack, const WarpedInvariants* inv) {
    const int n = pack.frame.n;
    const Sym2 g = Sym2::from_mat(pack.frame.g);
    const Tens6 rr = dot44(pack.R, pack.R, pack.frame);
    const Tens6 qsr = tachibana24(pack.S, pack.R);
    const Tens6 qgc = tachibana24(g, pack.C);
    ConditionResult r = fit_condition("RR=Q(S,R)+L.Q(g,C)", "L", sub(rr, qsr), qgc);
    if (r.status == "ok" && std::fabs(r.coeff("L")) < 1e-10) r.status = "special:RR=Q(S,R)";
    if (inv) {
        const auto pred = warped_alpha_predictions(n, pack.kappa, *inv);
        attach_prediction(r, "L", pred.at("alpha1"));
    }
    return r;
}

ConditionResult fit_ricci_three_term(const CurvaturePack& pack, const WarpedInvariants* inv) {
    const int n = pack.frame.n;
    const Sym2 g = Sym2::from_mat(pack.frame.g);
    const Curv4 target = dot42(pack.R, pack.S, pack.frame);
    const Curv4 cols[3] = {tachibana22(g, pack.S), tachibana22(g, pack.S2),
                           tachibana22(pack.S, pack.S2)};

    ConditionResult out;
    out.id = "RS=a3.Q(g,S)+a4.Q(g,S2)+a5.Q(S,S2)";
    double basis_norm = 0.0;
    for (const auto& c : cols) basis_norm = std::max(basis_norm, frob_norm(c));
    if (frob_norm(target) < kZeroAbs && basis_norm < kZeroAbs) {
        out.status = "trivial";
        out.verdict = true;
        out.coeffs = {{"alpha3", 0.0}, {"alpha4", 0.0}, {"alpha5", 0.0}};
        return out;
    }

    const size_t m = target.c.size();
    Mat A(static_cast<int>(m), 3);
    for (int c = 0; c < 3; ++c)
        for (size_t t = 0; t < m; ++t) A(static_cast<int>(t), c) = cols[c].c[t];
    const LsqResult fit = lsq_colpiv(A, target.c, 1e-10);
    out.basis_rank = fit.rank;
    out.coeffs = {{"alpha3", fit.coeffs[0]}, {"alpha4", fit.coeffs[1]}, {"alpha5", fit.coeffs[2]}};
    out.residual = fit.residual_norm / std::max(1.0, frob_norm(target));
    out.verdict = out.residual < 1e-9;
    if (fit.rank < 3) out.status = "ill-posed";
    if (inv) {
        const auto pred = warped_alpha_predictions(n, pack.kappa, *inv);
        attach_prediction(out, "alpha3", pred.at("alpha3"));
        attach_prediction(out, "alpha4", pred.at("alpha4"));
        attach_prediction(out, "alpha5", pred.at("alpha5"));
    }
    return out;
}

ConditionResult fit_mixed(const CurvaturePack& pack, const WarpedInvariants* inv) {
    const int n = pack.frame.n;
    const Sym2 g = Sym2::from_mat(pack.frame.g);
    const Tens6 rc = dot44(pack.R, pack.C, pack.frame);
    const Tens6 cr = dot44(pack.C, pack.R, pack.frame);
    const Tens6 qsc = tachibana24(pack.S, pack.C);
    const Tens6 qgc = tachibana24(g, pack.C);
    ConditionResult r =
        fit_condition("RC+CR=Q(S,C)+a6.Q(g,C)", "alpha6", sub(add(rc, cr), qsc), qgc);
    if (inv) {
        const auto pred = warped_alpha_predictions(n, pack.kappa, *inv);
        attach_prediction(r, "alpha6", pred.at("alpha6"));
    }
    return r;
}

std::map<std::string, double> warped_alpha_predictions(int n, double kappa,
                                                       const WarpedInvariants& inv) {
    const double tau1 = inv.tau1, rho = inv.rho, phi = inv.phi;
    std::map<std::string, double> out;
    out["alpha1"] = (n - 3) * phi / ((n - 2) * rho) - (n - 4) * tau1 / (n - 2) -
                    kappa / ((n - 2.0) * (n - 1)) - rho / (2.0 * (n - 2));
    out["alpha2"] = -rho / (2.0 * (n - 2));
    // tau1^2 alpha5 - 2 tau1/(n-2) + beta1, written out in the invariants
    out["alpha3"] = rho * tau1 * tau1 / ((n - 2) * phi) - kappa / ((n - 2.0) * (n - 1)) -
                    rho / (2.0 * (n - 2));
    out["alpha4"] = (phi - tau1 * rho) / ((n - 2) * phi);
    out["alpha5"] = rho / ((n - 2) * phi);
    out["alpha6"] = -(kappa / (n - 1.0) + (n - 4) * tau1 + rho) / (n - 2.0);
    return out;
}

std::vector<ConditionResult> roter_suite(const Curv4& B, const PointFrame& frame, double phi1,
                                         double mu1, double eta1, double tol) {
    std::vector<ConditionResult> out;
    const int n = frame.n;
    if (std::fabs(phi1) < 1e-10) {
        ConditionResult r;
        r.id = "roter-suite";
        r.status = "degenerate";  // phi1 = 0 forces a vanishing Weyl tensor
        out.push_back(r);
        return out;
    }

    const Sym2 g = Sym2::from_mat(frame.g);
    const Sym2 ric = ricci(B, frame);
    const double kap = trace_g(ric, frame);
    const Sym2 ric2 = sym2_square(ric, frame);
    const Curv4 W = weyl(B, frame);
    const Curv4 G = scaled(0.5, wedge22(g, g));

    const double a1 = kap + ((n - 2) * mu1 - 1.0) / phi1;
    const double a2 = (mu1 * kap + (n - 1) * eta1) / phi1;
    const double LB = ((n - 2) * (mu1 * mu1 - phi1 * eta1) - mu1) / phi1;
    const double L = LB + mu1 / phi1;
    const double LW = LB + (kap / (n - 1.0) - a1) / (n - 2.0);

    const Tens6 BB = dot44(B, B, frame);
    const Tens6 BW = dot44(B, W, frame);
    const Tens6 WB = dot44(W, B, frame);
    const Tens6 WW = dot44(W, W, frame);
    const Tens6 QgB = tachibana24(g, B);
    const Tens6 QgW = tachibana24(g, W);
    const Tens6 QricB = tachibana24(ric, B);
    const Tens6 QricW = tachibana24(ric, W);
    const Tens6 QgGR = tachibana24(g, wedge22(g, ric));

    auto push = [&](ConditionResult r, const char* cname, double pred) {
        attach_prediction(r, cname, pred);
        out.push_back(std::move(r));
    };

    {  // Ric^2 = a1 Ric + a2 g
        ConditionResult r;
        r.id = "Ric2=a1.Ric+a2.g";
        r.coeffs = {{"a1", a1}, {"a2", a2}};
        r.residual = rel_residual(ric2, sym2_axpy(a1, ric, scaled(a2, g)));
        r.verdict = r.residual < tol;
        out.push_back(r);
    }
    push(fit_condition("BB=L_B.Q(g,B)", "L_B", BB, QgB, tol), "L_B", LB);
    push(fit_condition("BW=L_B.Q(g,W)", "L_B", BW, QgW, tol), "L_B", LB);
    push(fit_condition("BB=Q(Ric,B)+L.Q(g,W)", "L", sub(BB, QricB), QgW, tol), "L", L);
    push(fit_condition("WB=L_W.Q(g,B)", "L_W", WB, QgB, tol), "L_W", LW);
    push(fit_condition("WW=L_W.Q(g,W)", "L_W", WW, QgW, tol), "L_W", LW);
    {
        const Curv4 BS = dot42(B, ric, frame);
        const Curv4 WS = dot42(W, ric, frame);
        const Curv4 QgS = tachibana22(g, ric);
        push(fit_condition4("BS=L_B.Q(g,Ric)", "L_B", BS, QgS, tol), "L_B", LB);
        push(fit_condition4("WS=L_W.Q(g,Ric)", "L_W", WS, QgS, tol), "L_W", LW);
    }
    {  // Q(Ric,W) expansion
        ConditionResult r;
        r.id = "Q(Ric,W)=c1.Q(g,B)+c2.Q(g,g^Ric)";
        const double c1 = (1.0 / (n - 2) - mu1) / phi1;
        const double c2 = (LB - kap / (n - 1.0)) / (n - 2.0);
        r.coeffs = {{"c1", c1}, {"c2", c2}};
        Tens6 rhs = axpy(c1, QgB, scaled(c2, QgGR));
        r.residual = rel_residual(QricW, rhs);
        r.verdict = r.residual < tol;
        out.push_back(r);
    }
    {  // WB + BW = Q(Ric,W) + (L + LW - 1/((n-2)phi1)) Q(g,W)
        ConditionResult r;
        r.id = "WB+BW=Q(Ric,W)+c.Q(g,W)";
        const double c = L + LW - 1.0 / ((n - 2) * phi1);
        r.coeffs = {{"c", c}};
        r.residual = rel_residual(add(WB, BW), axpy(c, QgW, QricW));
        r.verdict = r.residual < tol;
        out.push_back(r);
    }
    {  // BW - WB = (phi1^-1 (mu1 - 1/(n-2)) + kap/(n-1)) Q(g,B)
       //           - (phi1^-1 mu1 (mu1 - 1/(n-2)) - eta1) Q(g, g^Ric)
        ConditionResult r;
        r.id = "BW-WB=c1.Q(g,B)-c2.Q(g,g^Ric)";
        const double c1 = (mu1 - 1.0 / (n - 2)) / phi1 + kap / (n - 1.0);
        const double c2 = mu1 * (mu1 - 1.0 / (n - 2)) / phi1 - eta1;
        r.coeffs = {{"c1", c1}, {"c2", c2}};
        r.residual = rel_residual(sub(BW, WB), axpy(c1, QgB, scaled(-c2, QgGR)));
        r.verdict = r.residual < tol;
        out.push_back(r);
    }
    {  // BW - WB = Q((mu1 kap/(n-1) + eta1) g + (1/(n-2) - mu1 - phi1 kap/(n-1)) Ric, g^Ric)
        ConditionResult r;
        r.id = "BW-WB=Q(c1.g+c2.Ric,g^Ric)";
        const double c1 = mu1 * kap / (n - 1.0) + eta1;
        const double c2 = 1.0 / (n - 2.0) - mu1 - phi1 * kap / (n - 1.0);
        r.coeffs = {{"c1", c1}, {"c2", c2}};
        const Sym2 mix = sym2_axpy(c2, ric, scaled(c1, g));
        r.residual = rel_residual(sub(BW, WB), tachibana24(mix, wedge22(g, ric)));
        r.verdict = r.residual < tol;
        out.push_back(r);
    }
    {  // WB - BW = Q(Ric,W) - kap/(n-1) Q(g,W)
        ConditionResult r;
        r.id = "WB-BW=Q(Ric,W)-kap/(n-1).Q(g,W)";
        r.residual = rel_residual(sub(WB, BW), axpy(-kap / (n - 1.0), QgW, QricW));
        r.verdict = r.residual < tol;
        out.push_back(r);
    }
    {  // (B - L_B G).(B - L_B G) = 0
        ConditionResult r;
        r.id = "(B-L_B.G).(B-L_B.G)=0";
        const Curv4 Bm = axpy(-LB, G, B);
        const Tens6 z = dot44(Bm, Bm, frame);
        r.residual = frob_norm(z) / std::max(1.0, frob_norm(BB));
        r.verdict = r.residual < tol;
        out.push_back(r);
    }
    {  // (W - L_W G).(W - L_W G) = 0
        ConditionResult r;
        r.id = "(W-L_W.G).(W-L_W.G)=0";
        const Curv4 Wm = axpy(-LW, G, W);
        const Tens6 z = dot44(Wm, Wm, frame);
        r.residual = frob_norm(z) / std::max(1.0, std::max(frob_norm(WW), frob_norm(BB)));
        r.verdict = r.residual < tol;
        out.push_back(r);
    }
    return out;
}

Section5Coeffs section5_coeffs(double trA, double trA2, double rho, double eps, double psi3,
                               int n) {
    Section5Coeffs c;
    const double disc = trA * trA - trA2;  // (trA)^2 - trA2
    c.psi3 = psi3;
    c.psi2 = (n - 2) * psi3;
    c.psi1 = 1.0 / (n - 2) - trA * psi3;
    c.psi0 = (eps * rho - trA / (n - 2.0) + disc * psi3) / (n - 1.0);
    c.psi4 = disc / (n - 1.0) * psi3;

    c.beta1 = (eps * rho - trA / (n - 2.0)) / (n - 1.0) -
              (n - 3.0) * disc * c.psi2 / (2.0 * (n - 2) * (n - 1));
    c.beta2 = (eps * rho + trA) / (n - 1.0) -
              (n - 3.0) * disc * c.psi2 / (2.0 * (n - 2) * (n - 1));
    c.beta3 = -disc / (2.0 * (n - 2));

    c.tau0 = eps * rho / (n - 1.0) + 1.0 / ((n - 2) * c.psi2) - trA / ((n - 2.0) * (n - 1)) -
             (n - 3.0) * disc * c.psi2 / (2.0 * (n - 2) * (n - 1));
    c.tau1 = (1.0 - trA * c.psi2) / (n - 1.0);
    c.tau2 = eps * rho / (n - 2.0);

    c.alpha1 = 1.0 / ((n - 2) * c.psi2) - (n - 2.0) * eps * rho / (n - 1.0) -
               trA / ((n - 2.0) * (n - 1)) -
               (n - 3.0) * disc * c.psi2 / (2.0 * (n - 2) * (n - 1));
    c.alpha2 = -(n - 3.0) * disc * c.psi2 / (2.0 * (n - 2) * (n - 1));
    c.alpha5 = (n - 3.0) / (n - 2.0) * c.psi2;
    // alpha3 through the B.A expansion route: rho^2 alpha5 - 2 eps rho/(n-2)
    // + beta1 (the expanded display drops the psi2 factor on rho^2).
    c.alpha3 = rho * rho * c.alpha5 - 2.0 * eps * rho / (n - 2.0) + c.beta1;
    c.alpha4 = (1.0 - (n - 3.0) * eps * rho * c.psi2) / (n - 2.0);
    return c;
}

Curv4 section5_build(const Sym2& A, double rho, double eps, double psi3,
                     const PointFrame& frame) {
    const int n = frame.n;
    const Sym2 g = Sym2::from_mat(frame.g);
    const Sym2 A2 = sym2_square(A, frame);
    const double trA = trace_g(A, frame);
    const double trA2 = trace_g(A2, frame);
    const Section5Coeffs c = section5_coeffs(trA, trA2, rho, eps, psi3, n);

    const Curv4 gA2 = wedge22(g, A2);
    const Curv4 AA = wedge22(A, A);
    const Curv4 gA = wedge22(g, A);
    const Curv4 gg = wedge22(g, g);
    Curv4 B(n);
    for (size_t t = 0; t < B.c.size(); ++t)
        B.c[t] = c.psi3 * gA2.c[t] + 0.5 * c.psi2 * AA.c[t] + c.psi1 * gA.c[t] +
                 0.5 * c.psi0 * gg.c[t];
    return B;
}

}  // namespace curv
