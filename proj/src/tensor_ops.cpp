#include "curv/tensor_ops.hpp"

#include <algorithm>
#include <stdexcept>

namespace curv {

PointFrame PointFrame::from_metric(const Mat& metric) {
    PointFrame f;
    f.n = metric.rows;
    f.g = metric;
    double cond = 0.0;
    f.g_inv = lu_invert(metric, &cond);
    const std::vector<double> ev = jacobi_eigenvalues(metric);
    f.signature.reserve(f.n);
    for (double e : ev) f.signature.push_back(e >= 0.0 ? 1 : -1);
    return f;
}

namespace {

void require_same_dim(int a, int b) {
    if (a != b) throw std::invalid_argument("tensor dimension mismatch");
}

}  // namespace

Curv4 wedge22(const Sym2& A, const Sym2& F) {
    require_same_dim(A.n, F.n);
    const int n = A.n;
    Curv4 W(n);
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    W(h, i, j, k) = A(h, k) * F(i, j) + A(i, j) * F(h, k) -
                                    A(h, j) * F(i, k) - A(i, k) * F(h, j);
    return W;
}

Curv4 tachibana22(const Sym2& A, const Sym2& F) {
    require_same_dim(A.n, F.n);
    const int n = A.n;
    Curv4 Q(n);
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    Q(h, i, j, k) = A(h, j) * F(i, k) + A(i, j) * F(h, k) -
                                    A(h, k) * F(i, j) - A(i, k) * F(h, j);
    return Q;
}

Tens6 wedge24(const Sym2& A, const Curv4& T) {
    require_same_dim(A.n, T.n);
    const int n = A.n;
    Tens6 W(n);
#pragma omp parallel for collapse(2) schedule(static)
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l)
                        for (int m = 0; m < n; ++m)
                            W(h, i, j, k, l, m) =
                                A(h, k) * T(i, j, l, m) + A(i, j) * T(h, k, l, m) -
                                A(h, j) * T(i, k, l, m) - A(i, k) * T(h, j, l, m);
    return W;
}

Tens6 tachibana24(const Sym2& A, const Curv4& T) {
    require_same_dim(A.n, T.n);
    const int n = A.n;
    Tens6 Q(n);
#pragma omp parallel for collapse(2) schedule(static)
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l)
                        for (int m = 0; m < n; ++m)
                            Q(h, i, j, k, l, m) =
                                A(h, l) * T(m, i, j, k) + A(i, l) * T(h, m, j, k) +
                                A(j, l) * T(h, i, m, k) + A(k, l) * T(h, i, j, m) -
                                A(h, m) * T(l, i, j, k) - A(i, m) * T(h, l, j, k) -
                                A(j, m) * T(h, i, l, k) - A(k, m) * T(h, i, j, l);
    return Q;
}

Curv4 dot42(const Curv4& B, const Sym2& A, const PointFrame& frame) {
    require_same_dim(B.n, A.n);
    const int n = B.n;
    // Raise one slot of A once: Ar(s,k) = g^sr A_rk.
    Mat Ar = matmul(frame.g_inv, A.as_mat());
    Curv4 R(n);
    for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m) {
                    double s = 0.0;
                    for (int r = 0; r < n; ++r)
                        s += Ar(r, k) * B(r, h, l, m) + Ar(r, h) * B(r, k, l, m);
                    R(h, k, l, m) = s;
                }
    return R;
}

Tens6 dot44(const Curv4& B, const Curv4& T, const PointFrame& frame) {
    require_same_dim(B.n, T.n);
    const int n = B.n;
    // U(r; h,l,m) = g^rs B_shlm
    Curv4 U(n);
    for (int r = 0; r < n; ++r)
        for (int h = 0; h < n; ++h)
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m) {
                    double s = 0.0;
                    for (int q = 0; q < n; ++q) s += frame.g_inv(r, q) * B(q, h, l, m);
                    U(r, h, l, m) = s;
                }
    Tens6 R(n);
#pragma omp parallel for collapse(2) schedule(static)
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l)
                        for (int m = 0; m < n; ++m) {
                            double s = 0.0;
                            for (int r = 0; r < n; ++r)
                                s += T(r, i, j, k) * U(r, h, l, m) +
                                     T(h, r, j, k) * U(r, i, l, m) +
                                     T(h, i, r, k) * U(r, j, l, m) +
                                     T(h, i, j, r) * U(r, k, l, m);
                            R(h, i, j, k, l, m) = s;
                        }
    return R;
}

Sym2 ricci(const Curv4& B, const PointFrame& frame) {
    const int n = B.n;
    Sym2 S(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int r = 0; r < n; ++r)
                for (int q = 0; q < n; ++q) s += frame.g_inv(r, q) * B(r, i, j, q);
            S(i, j) = s;
        }
    return S;
}

double trace_g(const Sym2& A, const PointFrame& frame) {
    double s = 0.0;
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) s += frame.g_inv(i, j) * A(i, j);
    return s;
}

Curv4 weyl(const Curv4& B, const PointFrame& frame) {
    const int n = B.n;
    if (n < 4) throw std::invalid_argument("weyl: requires n >= 4");
    const Sym2 ric = ricci(B, frame);
    const double kap = trace_g(ric, frame);
    const Sym2 g = Sym2::from_mat(frame.g);
    Curv4 W = B;
    const Curv4 gric = wedge22(g, ric);
    const Curv4 gg = wedge22(g, g);
    const double c1 = -1.0 / (n - 2);
    const double c2 = kap / (2.0 * (n - 2) * (n - 1));
    for (size_t t = 0; t < W.c.size(); ++t) W.c[t] += c1 * gric.c[t] + c2 * gg.c[t];
    return W;
}

Curv4 e_tensor(const Sym2& A, const PointFrame& frame) {
    const int n = A.n;
    if (n < 4) throw std::invalid_argument("e_tensor: requires n >= 4");
    const Sym2 g = Sym2::from_mat(frame.g);
    const Sym2 A2 = sym2_square(A, frame);
    const double trA = trace_g(A, frame);
    const double trA2 = trace_g(A2, frame);
    const Curv4 gA2 = wedge22(g, A2);
    const Curv4 AA = wedge22(A, A);
    const Curv4 gA = wedge22(g, A);
    const Curv4 gg = wedge22(g, g);
    Curv4 E(n);
    const double c_aa = 0.5 * (n - 2);
    const double c_gg = (trA * trA - trA2) / (2.0 * (n - 1));
    for (size_t t = 0; t < E.c.size(); ++t)
        E.c[t] = gA2.c[t] + c_aa * AA.c[t] - trA * gA.c[t] + c_gg * gg.c[t];
    return E;
}

Sym2 sym2_square(const Sym2& A, const PointFrame& frame) {
    Mat m = matmul(A.as_mat(), matmul(frame.g_inv, A.as_mat()));
    return Sym2::from_mat(m);
}

Sym2 sym2_mul(const Sym2& X, const Sym2& Y, const PointFrame& frame) {
    Mat m = matmul(X.as_mat(), matmul(frame.g_inv, Y.as_mat()));
    return Sym2::from_mat(m);
}

Sym2 sym2_axpy(double alpha, const Sym2& x, const Sym2& y) {
    Sym2 r = y;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += alpha * x.c[i];
    return r;
}

double GencurvCheck::worst() const {
    return std::max(std::max(antisym_first, antisym_last), std::max(pair_exchange, bianchi));
}

GencurvCheck gencurv_check(const Curv4& B) {
    const int n = B.n;
    const double scale = std::max(1.0, frob_norm(B));
    double a1 = 0.0, a2 = 0.0, pe = 0.0, bi = 0.0;
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const double b = B(h, i, j, k);
                    a1 += std::pow(b + B(i, h, j, k), 2);
                    a2 += std::pow(b + B(h, i, k, j), 2);
                    pe += std::pow(b - B(j, k, h, i), 2);
                    bi += std::pow(b + B(i, j, h, k) + B(j, h, i, k), 2);
                }
    GencurvCheck r;
    r.antisym_first = std::sqrt(a1) / scale;
    r.antisym_last = std::sqrt(a2) / scale;
    r.pair_exchange = std::sqrt(pe) / scale;
    r.bianchi = std::sqrt(bi) / scale;
    return r;
}

double last_pair_antisym_residual(const Tens6& T) {
    const int n = T.n;
    const double scale = std::max(1.0, frob_norm(T));
    double s = 0.0;
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l)
                        for (int m = 0; m < n; ++m)
                            s += std::pow(T(h, i, j, k, l, m) + T(h, i, j, k, m, l), 2);
    return std::sqrt(s) / scale;
}

Dim2Identities dim2_toolbox(const Sym2& A, const PointFrame& frame) {
    if (A.n != 2 || frame.n != 2) throw std::invalid_argument("dim2_toolbox: requires n = 2");
    const Sym2 g = Sym2::from_mat(frame.g);
    const Sym2 A2 = sym2_square(A, frame);
    const double trA = trace_g(A, frame);
    const double trA2 = trace_g(A2, frame);
    const double kappaT = trA * trA - trA2;

    Dim2Identities out;
    out.kappaT = kappaT;

    // T_abcd = A_ad A_bc - A_ac A_bd equals (kappaT/2) (g_ad g_bc - g_ac g_bd)
    Curv4 lhs(2), rhs(2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    lhs(a, b, c, d) = A(a, d) * A(b, c) - A(a, c) * A(b, d);
                    rhs(a, b, c, d) = 0.5 * kappaT * (g(a, d) * g(b, c) - g(a, c) * g(b, d));
                }
    out.det_decomposition = rel_residual(lhs, rhs);

    // A2 = trA A - (kappaT/2) g
    Sym2 red = sym2_axpy(trA, A, scaled(-0.5 * kappaT, g));
    out.square_reduction = rel_residual(A2, red);

    // g_ad A_bc + g_bc A_ad - g_ac A_bd - g_bd A_ac = trA (g_ad g_bc - g_ac g_bd)
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    lhs(a, b, c, d) = g(a, d) * A(b, c) + g(b, c) * A(a, d) -
                                      g(a, c) * A(b, d) - g(b, d) * A(a, c);
                    rhs(a, b, c, d) = trA * (g(a, d) * g(b, c) - g(a, c) * g(b, d));
                }
    out.wedge_reduction = rel_residual(lhs, rhs);
    return out;
}

}  // namespace curv
