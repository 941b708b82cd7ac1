#pragma once

#include <cstddef>
#include <vector>

namespace curv {

// Dense row-major matrix, sized for chart dimensions (n <= 8) and for the
// tall design matrices of the least-squares fits.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n);
};

Mat matmul(const Mat& A, const Mat& B);
Mat transpose(const Mat& A);
double norm1(const Mat& A);

// Inverse by LU with partial pivoting. cond_est (optional) receives the
// 1-norm condition estimate ||A||_1 * ||A^-1||_1.
Mat lu_invert(const Mat& A, double* cond_est = nullptr);
double det(const Mat& A);

// Eigenvalues of a symmetric matrix by cyclic Jacobi, ascending order.
std::vector<double> jacobi_eigenvalues(const Mat& sym);

// Singular values of a symmetric matrix (|eigenvalues|), descending.
std::vector<double> sym_singular_values(const Mat& sym);

// Real eigenvalues of a general square matrix; eigenvalues with
// |imag| > imag_tol * scale are discarded.
std::vector<double> real_eigenvalues(const Mat& M, double imag_tol = 1e-8);

// Least squares min ||A x - b|| by Householder QR with column pivoting.
// Columns whose pivot falls below rank_tol * |R_00| are dropped (their
// coefficient is reported as zero).
struct LsqResult {
    std::vector<double> coeffs;
    double residual_norm = 0.0;
    int rank = 0;
    double cond = 0.0;              // |R_00| / |R_kk| over retained columns
    std::vector<int> dropped;       // indices of dropped columns
};

LsqResult lsq_colpiv(const Mat& A, const std::vector<double>& b, double rank_tol = 1e-12);

}  // namespace curv
