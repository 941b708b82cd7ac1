#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "curv/linalg.hpp"

namespace curv {

// Truncated second-order Taylor value over nvars chart variables: value,
// gradient and (symmetric) Hessian. This is all the depth the curvature
// pipeline needs, since Riemann consumes second derivatives of the metric
// and nothing deeper. A jet with nvars() == 0 is a scalar constant and
// broadcasts against any width.
class Jet2 {
public:
    Jet2() = default;
    /* implicit */ Jet2(double value) : v_(value) {}
    Jet2(int nvars, double value)
        : nv_(nvars), v_(value), g_(nvars, 0.0), h_(static_cast<size_t>(nvars) * nvars, 0.0) {}

    static Jet2 constant(int nvars, double value) { return Jet2(nvars, value); }
    static Jet2 variable(int nvars, int index, double value) {
        Jet2 j(nvars, value);
        j.g_[index] = 1.0;
        return j;
    }

    int nvars() const { return nv_; }
    double value() const { return v_; }
    double grad(int a) const { return g_[a]; }
    double hess(int a, int b) const { return h_[static_cast<size_t>(a) * nv_ + b]; }

    double& value() { return v_; }
    double& grad(int a) { return g_[a]; }
    double& hess(int a, int b) { return h_[static_cast<size_t>(a) * nv_ + b]; }

    bool is_constant(double tol = 0.0) const {
        for (double x : g_)
            if (std::fabs(x) > tol) return false;
        for (double x : h_)
            if (std::fabs(x) > tol) return false;
        return true;
    }

    Jet2 operator-() const {
        Jet2 r = *this;
        r.v_ = -r.v_;
        for (double& x : r.g_) x = -x;
        for (double& x : r.h_) x = -x;
        return r;
    }

    friend Jet2 operator+(const Jet2& a0, const Jet2& b0) {
        auto [a, b] = aligned(a0, b0);
        a.v_ += b.v_;
        for (size_t i = 0; i < a.g_.size(); ++i) a.g_[i] += b.g_[i];
        for (size_t i = 0; i < a.h_.size(); ++i) a.h_[i] += b.h_[i];
        return a;
    }

    friend Jet2 operator-(const Jet2& a0, const Jet2& b0) {
        auto [a, b] = aligned(a0, b0);
        a.v_ -= b.v_;
        for (size_t i = 0; i < a.g_.size(); ++i) a.g_[i] -= b.g_[i];
        for (size_t i = 0; i < a.h_.size(); ++i) a.h_[i] -= b.h_[i];
        return a;
    }

    friend Jet2 operator*(const Jet2& a0, const Jet2& b0) {
        auto [a, b] = aligned(a0, b0);
        const int n = a.nv_;
        Jet2 r(n, a.v_ * b.v_);
        for (int i = 0; i < n; ++i) r.g_[i] = a.v_ * b.g_[i] + b.v_ * a.g_[i];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                r.hess(i, j) = a.v_ * b.hess(i, j) + b.v_ * a.hess(i, j) + a.g_[i] * b.g_[j] +
                               a.g_[j] * b.g_[i];
        return r;
    }

    // Direct quotient rule, so the value part agrees bit-for-bit with
    // plain double division.
    friend Jet2 operator/(const Jet2& a0, const Jet2& b0) {
        if (b0.v_ == 0.0) throw std::domain_error("jet division by zero value part");
        auto [a, b] = aligned(a0, b0);
        const int n = a.nv_;
        Jet2 q(n, a.v_ / b.v_);
        for (int i = 0; i < n; ++i) q.g_[i] = (a.g_[i] - q.v_ * b.g_[i]) / b.v_;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                q.hess(i, j) = (a.hess(i, j) - q.g_[i] * b.g_[j] - q.g_[j] * b.g_[i] -
                                q.v_ * b.hess(i, j)) /
                               b.v_;
        return q;
    }

    Jet2& operator+=(const Jet2& o) { return *this = *this + o; }
    Jet2& operator-=(const Jet2& o) { return *this = *this - o; }
    Jet2& operator*=(const Jet2& o) { return *this = *this * o; }

    // f(u) with f, f', f'' evaluated at the value part (chain rule).
    friend Jet2 unary_chain(const Jet2& u, double f, double fp, double fpp) {
        const int n = u.nv_;
        Jet2 r(n, f);
        for (int i = 0; i < n; ++i) r.g_[i] = fp * u.g_[i];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                r.hess(i, j) = fp * u.hess(i, j) + fpp * u.g_[i] * u.g_[j];
        return r;
    }

    friend Jet2 reciprocal(const Jet2& u) {
        if (u.v_ == 0.0) throw std::domain_error("jet reciprocal of zero value part");
        const double iv = 1.0 / u.v_;
        return unary_chain(u, iv, -iv * iv, 2.0 * iv * iv * iv);
    }

private:
    static std::pair<Jet2, Jet2> aligned(const Jet2& a, const Jet2& b) {
        if (a.nv_ == b.nv_) return {a, b};
        if (a.nv_ == 0) return {Jet2(b.nv_, a.v_), b};
        if (b.nv_ == 0) return {a, Jet2(a.nv_, b.v_)};
        throw std::invalid_argument("jet variable count mismatch");
    }

    int nv_ = 0;
    double v_ = 0.0;
    std::vector<double> g_;
    std::vector<double> h_;
};

inline Jet2 exp(const Jet2& u) {
    const double e = std::exp(u.value());
    return unary_chain(u, e, e, e);
}
inline Jet2 log(const Jet2& u) {
    if (u.value() <= 0.0) throw std::domain_error("jet log of non-positive value part");
    const double iv = 1.0 / u.value();
    return unary_chain(u, std::log(u.value()), iv, -iv * iv);
}
inline Jet2 sqrt(const Jet2& u) {
    if (u.value() < 0.0) throw std::domain_error("jet sqrt of negative value part");
    const double s = std::sqrt(u.value());
    return unary_chain(u, s, 0.5 / s, -0.25 / (s * u.value()));
}
inline Jet2 sin(const Jet2& u) {
    const double s = std::sin(u.value()), c = std::cos(u.value());
    return unary_chain(u, s, c, -s);
}
inline Jet2 cos(const Jet2& u) {
    const double s = std::sin(u.value()), c = std::cos(u.value());
    return unary_chain(u, c, -s, -c);
}
inline Jet2 tan(const Jet2& u) {
    const double t = std::tan(u.value());
    const double sec2 = 1.0 + t * t;
    return unary_chain(u, t, sec2, 2.0 * t * sec2);
}
inline Jet2 sinh(const Jet2& u) {
    const double s = std::sinh(u.value()), c = std::cosh(u.value());
    return unary_chain(u, s, c, s);
}
inline Jet2 cosh(const Jet2& u) {
    const double s = std::sinh(u.value()), c = std::cosh(u.value());
    return unary_chain(u, c, s, c);
}
inline Jet2 abs(const Jet2& u) {
    const double sg = u.value() >= 0.0 ? 1.0 : -1.0;
    return unary_chain(u, std::fabs(u.value()), sg, 0.0);
}

inline Jet2 ring_pow_int(const Jet2& x, long k) {
    if (k == 0) return Jet2::constant(x.nvars(), 1.0);
    const bool neg = k < 0;
    unsigned long e = neg ? -static_cast<unsigned long>(k) : static_cast<unsigned long>(k);
    Jet2 r = Jet2::constant(x.nvars(), 1.0);
    Jet2 base = x;
    while (e) {
        if (e & 1) r = r * base;
        if (e >>= 1) base = base * base;
    }
    return neg ? reciprocal(r) : r;
}

inline Jet2 pow(const Jet2& x, const Jet2& y) {
    const double yv = y.value();
    const double rounded = std::nearbyint(yv);
    if (y.is_constant() && std::fabs(yv - rounded) < 1e-12 && std::fabs(rounded) <= 1e6)
        return ring_pow_int(x, static_cast<long>(rounded));
    if (x.value() <= 0.0)
        throw std::domain_error("jet pow: non-integer power of non-positive base");
    return exp(y * log(x));
}

inline double ring_value_part(const Jet2& x) { return x.value(); }
inline bool ring_is_constant(const Jet2& x) { return x.is_constant(); }

template <typename Ring>
Ring ring_constant(double v);

template <>
inline Jet2 ring_constant<Jet2>(double v) {
    return Jet2(v);  // width-0 scalar, broadcasts on use
}

// Square matrix of jets (metric components with their derivatives).
struct JetMatrix {
    int n = 0;
    std::vector<Jet2> m;

    JetMatrix() = default;
    JetMatrix(int dim, int nvars) : n(dim), m(static_cast<size_t>(dim) * dim, Jet2(nvars, 0.0)) {}

    Jet2& at(int i, int j) { return m[static_cast<size_t>(i) * n + j]; }
    const Jet2& at(int i, int j) const { return m[static_cast<size_t>(i) * n + j]; }

    Mat value_matrix() const {
        Mat v(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) v(i, j) = at(i, j).value();
        return v;
    }
};

class SingularMetricError : public std::runtime_error {
public:
    explicit SingularMetricError(const std::string& msg) : std::runtime_error(msg) {}
};

// Inverse of a jet matrix: value part by LU with partial pivoting,
// derivative parts by d(M^-1) = -M^-1 dM M^-1 and its second-order analogue.
JetMatrix invert(const JetMatrix& M);

}  // namespace curv
