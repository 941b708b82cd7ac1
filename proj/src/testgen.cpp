#include "curv/testgen.hpp"

#include <cmath>

namespace curv {

PointFrame euclidean_frame(int n) { return PointFrame::from_metric(Mat::identity(n)); }

PointFrame minkowski_frame(int n) {
    Mat g = Mat::identity(n);
    g(0, 0) = -1.0;
    return PointFrame::from_metric(g);
}

PointFrame random_frame(int n, int negative_signs, Rng& rng) {
    Mat M = Mat::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) += 0.25 * rng.uniform(-1.0, 1.0);
    Mat D(n, n);
    for (int i = 0; i < n; ++i) D(i, i) = (i < negative_signs) ? -1.0 : 1.0;
    Mat g = matmul(transpose(M), matmul(D, M));
    // exact symmetry against roundoff
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (g(i, j) + g(j, i));
            g(i, j) = g(j, i) = v;
        }
    return PointFrame::from_metric(g);
}

Sym2 random_sym2(int n, Rng& rng, double scale) {
    Sym2 A(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = scale * rng.uniform(-1.0, 1.0);
            A(i, j) = A(j, i) = v;
        }
    return A;
}

Sym2 random_rank2(int n, Rng& rng) {
    for (;;) {
        std::vector<double> u(n), v(n);
        double uu = 0.0, vv = 0.0, uv = 0.0;
        for (int i = 0; i < n; ++i) {
            u[i] = rng.uniform(-1.0, 1.0);
            v[i] = rng.uniform(-1.0, 1.0);
            uu += u[i] * u[i];
            vv += v[i] * v[i];
            uv += u[i] * v[i];
        }
        if (uu < 1e-2 || vv < 1e-2) continue;
        if (std::fabs(uv) / std::sqrt(uu * vv) > 0.99) continue;
        const double sign = rng.uniform(-1.0, 1.0) < 0.0 ? -1.0 : 1.0;
        Sym2 A(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = u[i] * u[j] + sign * v[i] * v[j];
        return A;
    }
}

Sym2 random_rank1_shift(int n, const PointFrame& frame, Rng& rng, double* rho_out) {
    const double rho = rng.uniform(-1.0, 1.0);
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = rng.uniform(-1.0, 1.0);
    Sym2 A(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = rho * frame.g(i, j) + w[i] * w[j];
    if (rho_out) *rho_out = rho;
    return A;
}

Curv4 random_gencurv(int n, Rng& rng) {
    Curv4 raw(n);
    for (double& x : raw.c) x = rng.uniform(-1.0, 1.0);

    // Antisymmetrize both pairs, symmetrize the pair exchange.
    Curv4 B(n);
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const double a = raw(h, i, j, k) - raw(i, h, j, k) - raw(h, i, k, j) +
                                     raw(i, h, k, j);
                    const double b = raw(j, k, h, i) - raw(k, j, h, i) - raw(j, k, i, h) +
                                     raw(k, j, i, h);
                    B(h, i, j, k) = 0.125 * (a + b);
                }

    // Remove the totally antisymmetric part so the first Bianchi sum closes.
    Curv4 out(n);
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    out(h, i, j, k) =
                        B(h, i, j, k) -
                        (B(h, i, j, k) + B(i, j, h, k) + B(j, h, i, k)) / 3.0;
    return out;
}

}  // namespace curv
