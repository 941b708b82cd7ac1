#include "curv/tensor_ops_ref.hpp"

namespace curv::ref {

Curv4 wedge22(const Sym2& A, const Sym2& F) {
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

Tens6 wedge24(const Sym2& A, const Curv4& T) {
    const int n = A.n;
    Tens6 W(n);
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

Curv4 tachibana22(const Sym2& A, const Sym2& F) {
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

Tens6 tachibana24(const Sym2& A, const Curv4& T) {
    const int n = A.n;
    Tens6 Q(n);
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
    const int n = B.n;
    Curv4 R(n);
    for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m) {
                    double s = 0.0;
                    for (int r = 0; r < n; ++r)
                        for (int q = 0; q < n; ++q)
                            s += frame.g_inv(r, q) *
                                 (A(r, k) * B(q, h, l, m) + A(h, r) * B(q, k, l, m));
                    R(h, k, l, m) = s;
                }
    return R;
}

Tens6 dot44(const Curv4& B, const Curv4& T, const PointFrame& frame) {
    const int n = B.n;
    Tens6 R(n);
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l)
                        for (int m = 0; m < n; ++m) {
                            double s = 0.0;
                            for (int r = 0; r < n; ++r)
                                for (int q = 0; q < n; ++q)
                                    s += frame.g_inv(r, q) *
                                         (T(r, i, j, k) * B(q, h, l, m) +
                                          T(h, r, j, k) * B(q, i, l, m) +
                                          T(h, i, r, k) * B(q, j, l, m) +
                                          T(h, i, j, r) * B(q, k, l, m));
                            R(h, i, j, k, l, m) = s;
                        }
    return R;
}

}  // namespace curv::ref
