#pragma once

#include "curv/tensor.hpp"

namespace curv::ref {

// Serial reference kernels: straight transliterations of the component
// formulas, one index at a time, no precomputed raised slots and no
// threading. Kept for testing the parallel kernels and for the benchmark.

Curv4 wedge22(const Sym2& A, const Sym2& F);
Tens6 wedge24(const Sym2& A, const Curv4& T);
Curv4 tachibana22(const Sym2& A, const Sym2& F);
Tens6 tachibana24(const Sym2& A, const Curv4& T);
Curv4 dot42(const Curv4& B, const Sym2& A, const PointFrame& frame);
Tens6 dot44(const Curv4& B, const Curv4& T, const PointFrame& frame);

}  // namespace curv::ref
