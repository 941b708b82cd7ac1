#include "curv/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace curv {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat matmul(const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("matmul: shape mismatch");
    Mat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const double aik = A(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < B.cols; ++j) C(i, j) += aik * B(k, j);
        }
    return C;
}

Mat transpose(const Mat& A) {
    Mat T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
    return T;
}

double norm1(const Mat& A) {
    double best = 0.0;
    for (int j = 0; j < A.cols; ++j) {
        double s = 0.0;
        for (int i = 0; i < A.rows; ++i) s += std::fabs(A(i, j));
        best = std::max(best, s);
    }
    return best;
}

Mat lu_invert(const Mat& A, double* cond_est) {
    if (A.rows != A.cols) throw std::invalid_argument("lu_invert: not square");
    const int n = A.rows;
    Mat lu = A;
    std::vector<int> piv(n);
    for (int i = 0; i < n; ++i) piv[i] = i;

    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(lu(i, k)) > std::fabs(lu(p, k))) p = i;
        if (lu(p, k) == 0.0) throw std::runtime_error("lu_invert: singular matrix");
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(lu(p, j), lu(k, j));
            std::swap(piv[p], piv[k]);
        }
        for (int i = k + 1; i < n; ++i) {
            lu(i, k) /= lu(k, k);
            const double f = lu(i, k);
            for (int j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }

    Mat inv(n, n);
    std::vector<double> col(n), x(n);
    for (int c = 0; c < n; ++c) {
        for (int i = 0; i < n; ++i) col[i] = (piv[i] == c) ? 1.0 : 0.0;
        // forward
        for (int i = 0; i < n; ++i) {
            x[i] = col[i];
            for (int j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
        }
        // backward
        for (int i = n - 1; i >= 0; --i) {
            for (int j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
            x[i] /= lu(i, i);
        }
        for (int i = 0; i < n; ++i) inv(i, c) = x[i];
    }
    if (cond_est) *cond_est = norm1(A) * norm1(inv);
    return inv;
}

double det(const Mat& A) {
    if (A.rows != A.cols) throw std::invalid_argument("det: not square");
    const int n = A.rows;
    Mat lu = A;
    double d = 1.0;
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(lu(i, k)) > std::fabs(lu(p, k))) p = i;
        if (lu(p, k) == 0.0) return 0.0;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(lu(p, j), lu(k, j));
            d = -d;
        }
        d *= lu(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double f = lu(i, k) / lu(k, k);
            for (int j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }
    return d;
}

std::vector<double> jacobi_eigenvalues(const Mat& sym) {
    const int n = sym.rows;
    Mat a = sym;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off < 1e-30) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

std::vector<double> sym_singular_values(const Mat& sym) {
    std::vector<double> sv = jacobi_eigenvalues(sym);
    for (double& v : sv) v = std::fabs(v);
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

std::vector<double> real_eigenvalues(const Mat& M, double imag_tol) {
    const int n = M.rows;
    Eigen::MatrixXd em(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) em(i, j) = M(i, j);
    Eigen::EigenSolver<Eigen::MatrixXd> es(em, false);
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(es.eigenvalues()[i]));
    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
        const auto ev = es.eigenvalues()[i];
        if (std::fabs(ev.imag()) <= imag_tol * std::max(1.0, scale)) out.push_back(ev.real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

LsqResult lsq_colpiv(const Mat& A, const std::vector<double>& b, double rank_tol) {
    const int m = A.rows;
    const int k = A.cols;
    if (static_cast<int>(b.size()) != m) throw std::invalid_argument("lsq_colpiv: size mismatch");

    Mat R = A;
    std::vector<double> y = b;
    std::vector<int> perm(k);
    std::vector<double> colnorm(k);
    for (int j = 0; j < k; ++j) {
        perm[j] = j;
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += R(i, j) * R(i, j);
        colnorm[j] = s;
    }

    const int steps = std::min(m, k);
    int rank = 0;
    double r00 = 0.0, rlast = 0.0;

    for (int c = 0; c < steps; ++c) {
        int best = c;
        for (int j = c + 1; j < k; ++j)
            if (colnorm[j] > colnorm[best]) best = j;
        if (best != c) {
            for (int i = 0; i < m; ++i) std::swap(R(i, c), R(i, best));
            std::swap(colnorm[c], colnorm[best]);
            std::swap(perm[c], perm[best]);
        }

        double alpha = 0.0;
        for (int i = c; i < m; ++i) alpha += R(i, c) * R(i, c);
        alpha = std::sqrt(alpha);
        if (c == 0) r00 = alpha;
        if (alpha <= rank_tol * std::max(r00, 1e-300)) break;

        if (R(c, c) > 0) alpha = -alpha;
        std::vector<double> v(m, 0.0);
        v[c] = R(c, c) - alpha;
        for (int i = c + 1; i < m; ++i) v[i] = R(i, c);
        double vtv = 0.0;
        for (int i = c; i < m; ++i) vtv += v[i] * v[i];
        if (vtv > 0) {
            for (int j = c; j < k; ++j) {
                double dotv = 0.0;
                for (int i = c; i < m; ++i) dotv += v[i] * R(i, j);
                const double f = 2.0 * dotv / vtv;
                for (int i = c; i < m; ++i) R(i, j) -= f * v[i];
            }
            double dotb = 0.0;
            for (int i = c; i < m; ++i) dotb += v[i] * y[i];
            const double f = 2.0 * dotb / vtv;
            for (int i = c; i < m; ++i) y[i] -= f * v[i];
        }
        R(c, c) = alpha;
        rlast = std::fabs(alpha);
        ++rank;
        for (int j = c + 1; j < k; ++j) colnorm[j] -= R(c, j) * R(c, j);
    }

    LsqResult res;
    res.rank = rank;
    res.cond = (rank > 0 && rlast > 0) ? std::fabs(r00) / rlast : 0.0;

    std::vector<double> xp(k, 0.0);
    for (int i = rank - 1; i >= 0; --i) {
        double s = y[i];
        for (int j = i + 1; j < rank; ++j) s -= R(i, j) * xp[j];
        xp[i] = s / R(i, i);
    }
    res.coeffs.assign(k, 0.0);
    for (int j = 0; j < rank; ++j) res.coeffs[perm[j]] = xp[j];
    for (int j = rank; j < k; ++j) res.dropped.push_back(perm[j]);
    std::sort(res.dropped.begin(), res.dropped.end());

    double rn = 0.0;
    for (int i = rank; i < m; ++i) rn += y[i] * y[i];
    res.residual_norm = std::sqrt(rn);
    return res;
}

}  // namespace curv
