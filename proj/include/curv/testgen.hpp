#pragma once

#include <cstdint>
#include <random>

#include "curv/tensor.hpp"

namespace curv {

// Deterministic generators for property batteries. Fixed seeds keep the
// suite output reproducible run to run.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(eng_);
    }
    int uniform_int(int lo, int hi) {  // inclusive
        std::uniform_int_distribution<int> d(lo, hi);
        return d(eng_);
    }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

PointFrame euclidean_frame(int n);
PointFrame minkowski_frame(int n);

// Invertible, possibly indefinite metric: M^T diag(signs) M with M a random
// perturbation of the identity.
PointFrame random_frame(int n, int negative_signs, Rng& rng);

Sym2 random_sym2(int n, Rng& rng, double scale = 1.0);

// Exact rank-2 symmetric tensor u (x) u +/- v (x) v; near-parallel u, v
// draws (|cos| > 0.99) are rejected.
Sym2 random_rank2(int n, Rng& rng);

// rho * g + w (x) w: a rank-1 shift of the metric.
Sym2 random_rank1_shift(int n, const PointFrame& frame, Rng& rng, double* rho_out = nullptr);

// Random generalized curvature tensor: a random 4-index array projected
// onto the pair-antisymmetric, pair-exchange-symmetric, Bianchi-free class.
Curv4 random_gencurv(int n, Rng& rng);

}  // namespace curv
