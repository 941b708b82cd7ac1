#pragma once

#include "curv/tensor.hpp"

namespace curv {

// Pointwise tensor algebra on dense components. The (0,6)-producing kernels
// are OpenMP-parallel; serial counterparts live in tensor_ops_ref.hpp and the
// test suite checks both routes agree.

// Kulkarni-Nomizu product of two symmetric (0,2) tensors:
// (A^F)_hijk = A_hk F_ij + A_ij F_hk - A_hj F_ik - A_ik F_hj
Curv4 wedge22(const Sym2& A, const Sym2& F);

// Kulkarni-Nomizu product of a symmetric (0,2) with a (0,4):
// (A^T)_hijklm = A_hk T_ijlm + A_ij T_hklm - A_hj T_iklm - A_ik T_hjlm
Tens6 wedge24(const Sym2& A, const Curv4& T);

// Tachibana tensor Q(A,F) of two symmetric (0,2) tensors:
// Q(A,F)_hijk = A_hj F_ik + A_ij F_hk - A_hk F_ij - A_ik F_hj
Curv4 tachibana22(const Sym2& A, const Sym2& F);

// Tachibana tensor Q(A,T) of a symmetric (0,2) with a (0,4).
Tens6 tachibana24(const Sym2& A, const Curv4& T);

// Derivation action of a curvature-type tensor B on a symmetric (0,2):
// (B.A)_hklm = g^rs (A_rk B_shlm + A_hr B_sklm)
Curv4 dot42(const Curv4& B, const Sym2& A, const PointFrame& frame);

// Derivation action of B on a (0,4) tensor:
// (B.T)_hijklm = g^rs (T_rijk B_shlm + T_hrjk B_silm + T_hirk B_sjlm + T_hijr B_sklm)
Tens6 dot44(const Curv4& B, const Curv4& T, const PointFrame& frame);

// Ricci contraction Ric(B)_ij = g^rs B_rijs, its trace, and the Weyl part
// Weyl(B) = B - g^Ric(B)/(n-2) + kappa(B) g^g / (2(n-2)(n-1)).
Sym2 ricci(const Curv4& B, const PointFrame& frame);
double trace_g(const Sym2& A, const PointFrame& frame);
Curv4 weyl(const Curv4& B, const PointFrame& frame);

// E(A) = g^A2 + (n-2)/2 A^A - tr(A) g^A + ((trA)^2 - trA2)/(2(n-1)) g^g
Curv4 e_tensor(const Sym2& A, const PointFrame& frame);

// A2_ij = A_ir g^rs A_sj
Sym2 sym2_square(const Sym2& A, const PointFrame& frame);

// (X g^-1 Y)_ij for symmetric X, Y that commute as g-endomorphisms.
Sym2 sym2_mul(const Sym2& X, const Sym2& Y, const PointFrame& frame);

Sym2 sym2_axpy(double alpha, const Sym2& x, const Sym2& y);

// Generalized-curvature symmetry checks, each returned as a relative
// residual: antisymmetry in (h,i), antisymmetry in (j,k), pair exchange,
// first Bianchi sum.
struct GencurvCheck {
    double antisym_first = 0.0;
    double antisym_last = 0.0;
    double pair_exchange = 0.0;
    double bianchi = 0.0;
    double worst() const;
};
GencurvCheck gencurv_check(const Curv4& B);

// Antisymmetry of a (0,6) tensor in its final index pair.
double last_pair_antisym_residual(const Tens6& T);

// n = 2 identity toolbox: residuals of the Cayley-Hamilton style
// reductions valid for any symmetric A on a 2-dimensional frame.
struct Dim2Identities {
    double det_decomposition = 0.0;  // A_ad A_bc - A_ac A_bd vs (kappaT/2)(g_ad g_bc - g_ac g_bd)
    double square_reduction = 0.0;   // A2 = trA A - kappaT/2 g
    double wedge_reduction = 0.0;    // g^A pattern vs trA (g_ad g_bc - g_ac g_bd)
    double kappaT = 0.0;             // (trA)^2 - trA2
};
Dim2Identities dim2_toolbox(const Sym2& A, const PointFrame& frame);

}  // namespace curv
