#pragma once

#include <map>
#include <string>
#include <vector>

#include "curv/curvature.hpp"
#include "curv/tensor_ops.hpp"

namespace curv {

// Outcome of one curvature-condition evaluation. "Condition holds" and
// "coefficients match the closed forms" are reported separately: when the
// fit basis is near-dependent, the fitted point can drift while the
// condition itself still holds.
struct ConditionResult {
    std::string id;
    std::string status = "ok";  // ok | trivial | degenerate | ill-posed
    std::vector<std::pair<std::string, double>> coeffs;  // fitted, in basis order
    double residual = 0.0;
    bool verdict = false;
    int basis_rank = -1;
    std::map<std::string, double> predicted;  // closed forms when available
    std::map<std::string, double> delta;      // |fitted - predicted| / max(1, |predicted|)

    double coeff(const std::string& name) const;
};

// Scalar proportionality conditions left = L * right, with both-zero
// reported as "trivial" (semisymmetric-type) and zero right side with a
// non-zero left as a failed verdict.
ConditionResult fit_condition(const std::string& id, const std::string& coeff_name,
                              const Tens6& left, const Tens6& right, double tol = 1e-9);
ConditionResult fit_condition4(const std::string& id, const std::string& coeff_name,
                               const Curv4& left, const Curv4& right, double tol = 1e-9);

// R.R = L_R Q(g,R)
ConditionResult fit_pseudosymmetric(const CurvaturePack& pack);
// R.S = L_S Q(g,S)
ConditionResult fit_ricci_pseudosymmetric(const CurvaturePack& pack);
// C.C = L_C Q(g,C)
ConditionResult fit_weyl_pseudosymmetric(const CurvaturePack& pack,
                                         const WarpedInvariants* inv = nullptr);
// R.R = Q(S,R) + L Q(g,C)
ConditionResult fit_two_term(const CurvaturePack& pack, const WarpedInvariants* inv = nullptr);
// R.S = a3 Q(g,S) + a4 Q(g,S2) + a5 Q(S,S2)
ConditionResult fit_ricci_three_term(const CurvaturePack& pack,
                                     const WarpedInvariants* inv = nullptr);
// R.C + C.R = Q(S,C) + a6 Q(g,C)
ConditionResult fit_mixed(const CurvaturePack& pack, const WarpedInvariants* inv = nullptr);

// Closed-form coefficients predicted for a warped chart (n >= 4) from
// kappa, tau1, rho, phi.
std::map<std::string, double> warped_alpha_predictions(int n, double kappa,
                                                       const WarpedInvariants& inv);

// Consequence suite of a Roter-type tensor B with
// B = phi1/2 Ric^Ric + mu1 g^Ric + eta1/2 g^g: every listed identity is
// evaluated with its predicted constant.
std::vector<ConditionResult> roter_suite(const Curv4& B, const PointFrame& frame, double phi1,
                                         double mu1, double eta1, double tol = 1e-7);

// Rank-2 construction machinery: coefficients of the pseudosymmetry-type
// conditions satisfied by B = psi3 g^A2 + psi2/2 A^A + psi1 g^A + psi0/2 g^g
// with Ric(B) = A + eps*rho*g.
struct Section5Coeffs {
    double psi0 = 0, psi1 = 0, psi2 = 0, psi3 = 0, psi4 = 0;
    double beta1 = 0, beta2 = 0, beta3 = 0;
    double tau0 = 0, tau1 = 0, tau2 = 0;
    double alpha1 = 0, alpha2 = 0, alpha3 = 0, alpha4 = 0, alpha5 = 0;
};

Section5Coeffs section5_coeffs(double trA, double trA2, double rho, double eps, double psi3,
                               int n);

// The generalized curvature tensor built from A with the coefficient set
// above (requires rank(A) = 2 for the advertised identities).
Curv4 section5_build(const Sym2& A, double rho, double eps, double psi3,
                     const PointFrame& frame);

}  // namespace curv
