#pragma once

#include <cmath>
#include <vector>

#include "curv/linalg.hpp"

namespace curv {

// Metric data at one chart point.
struct PointFrame {
    int n = 0;
    Mat g;
    Mat g_inv;
    std::vector<int> signature;  // signs of the eigenvalues of g, ascending eigenvalue order

    static PointFrame from_metric(const Mat& metric);
};

// Symmetric (0,2) tensor, dense n x n.
struct Sym2 {
    int n = 0;
    std::vector<double> c;

    Sym2() = default;
    explicit Sym2(int dim) : n(dim), c(static_cast<size_t>(dim) * dim, 0.0) {}

    double& operator()(int i, int j) { return c[static_cast<size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return c[static_cast<size_t>(i) * n + j]; }

    Mat as_mat() const {
        Mat m(n, n);
        m.a = c;
        return m;
    }
    static Sym2 from_mat(const Mat& m) {
        Sym2 s(m.rows);
        s.c = m.a;
        return s;
    }
};

// Dense (0,4) tensor, index order (h,i,j,k).
struct Curv4 {
    int n = 0;
    std::vector<double> c;

    Curv4() = default;
    explicit Curv4(int dim)
        : n(dim), c(static_cast<size_t>(dim) * dim * dim * dim, 0.0) {}

    size_t idx(int h, int i, int j, int k) const {
        return ((static_cast<size_t>(h) * n + i) * n + j) * n + k;
    }
    double& operator()(int h, int i, int j, int k) { return c[idx(h, i, j, k)]; }
    double operator()(int h, int i, int j, int k) const { return c[idx(h, i, j, k)]; }
};

// Dense (0,6) tensor, index order (h,i,j,k,l,m).
struct Tens6 {
    int n = 0;
    std::vector<double> c;

    Tens6() = default;
    explicit Tens6(int dim)
        : n(dim), c(static_cast<size_t>(dim) * dim * dim * dim * dim * dim, 0.0) {}

    size_t idx(int h, int i, int j, int k, int l, int m) const {
        return ((((static_cast<size_t>(h) * n + i) * n + j) * n + k) * n + l) * n + m;
    }
    double& operator()(int h, int i, int j, int k, int l, int m) {
        return c[idx(h, i, j, k, l, m)];
    }
    double operator()(int h, int i, int j, int k, int l, int m) const {
        return c[idx(h, i, j, k, l, m)];
    }
};

// Flat-component helpers shared by all three tensor types.
template <typename T>
double frob_norm(const T& t) {
    double s = 0.0;
    for (double x : t.c) s += x * x;
    return std::sqrt(s);
}

template <typename T>
double frob_dot(const T& a, const T& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.c.size(); ++i) s += a.c[i] * b.c[i];
    return s;
}

template <typename T>
T axpy(double alpha, const T& x, const T& y) {  // alpha*x + y
    T r = y;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += alpha * x.c[i];
    return r;
}

template <typename T>
T scaled(double alpha, const T& x) {
    T r = x;
    for (double& v : r.c) v *= alpha;
    return r;
}

template <typename T>
T sub(const T& a, const T& b) {
    T r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

template <typename T>
T add(const T& a, const T& b) {
    T r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

// Scale-free residual used throughout: ||L-R|| / max(1, ||L||, ||R||).
template <typename T>
double rel_residual(const T& lhs, const T& rhs) {
    double num = 0.0, nl = 0.0, nr = 0.0;
    for (size_t i = 0; i < lhs.c.size(); ++i) {
        const double d = lhs.c[i] - rhs.c[i];
        num += d * d;
        nl += lhs.c[i] * lhs.c[i];
        nr += rhs.c[i] * rhs.c[i];
    }
    return std::sqrt(num) / std::max(1.0, std::max(std::sqrt(nl), std::sqrt(nr)));
}

}  // namespace curv
