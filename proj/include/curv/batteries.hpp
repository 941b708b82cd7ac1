#pragma once

#include <string>
#include <vector>

#include "curv/testgen.hpp"

namespace curv {

// A property battery: many random instances of one identity family, the
// worst relative residual kept. Shared by the unit tests (small counts)
// and the acceptance suite (full counts).
struct BatteryResult {
    std::string id;
    int instances = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    std::vector<std::string> notes;

    void absorb(const std::string& what, double residual);
};

// Tachibana/wedge commutator identities for arbitrary symmetric tensors.
BatteryResult battery_wedge_tachibana(int instances_per_n, double tol, uint64_t seed);

// Rank-two identity toolbox (powers, wedges, derivation actions).
BatteryResult battery_rank2(int instances_per_n, double tol, uint64_t seed);

// B = lambda (g^(A2 - trA A) + (n-2)/2 A^A) + mu/2 g^g with rank-2 A is
// pseudosymmetric with the predicted coefficient.
BatteryResult battery_rank2_pseudosymmetry(int instances_per_n, double tol, uint64_t seed);

// E-tensor properties: shift invariance, vanishing on rank-one shifts of g,
// and the rank-one-shift consequence pair.
BatteryResult battery_e_tensor(int instances_per_n, double tol, uint64_t seed);

// Weyl functor linearity on wedge combinations (chart packs included).
BatteryResult battery_weyl_linearity(int instances_per_n, double tol, uint64_t seed);

// Block-constant Weyl fixtures: Weyl.Weyl = -tau/(p(n-p)) Q(g,Weyl).
BatteryResult battery_block_weyl(double tol, uint64_t seed);

// Rank-two construction end-to-end: built tensors reproduce the three
// pseudosymmetry-type conditions with coefficients matching the closed
// forms, plus the internal coefficient identities.
BatteryResult battery_rank2_construction(int instances, double coeff_tol, double ident_tol,
                                         uint64_t seed);

// Hypersurface identities from the Gauss equation.
BatteryResult battery_hypersurface(int instances_per_n, double tol, uint64_t seed);

// Roter-type tensors: the full consequence suite with predicted constants.
BatteryResult battery_roter_fixtures(int instances, double tol, uint64_t seed);

}  // namespace curv
