#include "curv/jet.hpp"

namespace curv {

namespace {

int jet_width(const JetMatrix& M) {
    for (const Jet2& j : M.m)
        if (j.nvars() > 0) return j.nvars();
    return 0;
}

Mat partial(const JetMatrix& M, int a) {
    Mat d(M.n, M.n);
    for (int i = 0; i < M.n; ++i)
        for (int j = 0; j < M.n; ++j) d(i, j) = M.at(i, j).nvars() ? M.at(i, j).grad(a) : 0.0;
    return d;
}

Mat second_partial(const JetMatrix& M, int a, int b) {
    Mat d(M.n, M.n);
    for (int i = 0; i < M.n; ++i)
        for (int j = 0; j < M.n; ++j) d(i, j) = M.at(i, j).nvars() ? M.at(i, j).hess(a, b) : 0.0;
    return d;
}

}  // namespace

JetMatrix invert(const JetMatrix& M) {
    const int n = M.n;
    const int nv = jet_width(M);

    double cond = 0.0;
    Mat V;
    try {
        V = lu_invert(M.value_matrix(), &cond);
    } catch (const std::runtime_error&) {
        throw SingularMetricError("metric value part is singular");
    }
    if (cond > 1e12) throw SingularMetricError("metric condition number above 1e12");

    std::vector<Mat> D(nv), VD(nv);  // dM/dx^a and V * dM * V
    for (int a = 0; a < nv; ++a) {
        D[a] = partial(M, a);
        VD[a] = matmul(matmul(V, D[a]), V);
    }

    JetMatrix R(n, nv);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R.at(i, j).value() = V(i, j);
    for (int a = 0; a < nv; ++a)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) R.at(i, j).grad(a) = -VD[a](i, j);

    // d_a d_b (M^-1) = -V H_ab V + V D_a V D_b V + V D_b V D_a V
    for (int a = 0; a < nv; ++a)
        for (int b = a; b < nv; ++b) {
            const Mat H = second_partial(M, a, b);
            const Mat t0 = matmul(matmul(V, H), V);
            const Mat t1 = matmul(VD[a], matmul(D[b], V));
            const Mat t2 = matmul(VD[b], matmul(D[a], V));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double v = -t0(i, j) + t1(i, j) + t2(i, j);
                    R.at(i, j).hess(a, b) = v;
                    R.at(i, j).hess(b, a) = v;
                }
        }
    return R;
}

}  // namespace curv
