#pragma once

#include "curv/chart.hpp"
#include "curv/jet.hpp"
#include "curv/tensor.hpp"

namespace curv {

// Everything the classification and condition fits consume at one point.
struct CurvaturePack {
    PointFrame frame;
    std::vector<double> gamma;  // n^3 Christoffel symbols, index (h,i,j)
    Curv4 R;
    Sym2 S;
    Sym2 S2;
    double kappa = 0.0;
    double trS2 = 0.0;
    Curv4 C;  // n >= 4 only (empty otherwise)
    Curv4 E;  // n >= 4 only

    double& Gamma(int h, int i, int j) {
        return gamma[(static_cast<size_t>(h) * frame.n + i) * frame.n + j];
    }
    double Gamma(int h, int i, int j) const {
        return gamma[(static_cast<size_t>(h) * frame.n + i) * frame.n + j];
    }
};

// Block-formula data specific to warped products with 2-dimensional base.
struct WarpedInvariants {
    double tau1 = 0.0;
    double rho = 0.0;
    double phi = 0.0;
    double DeltaF = 0.0;   // Laplacian of the warping function on the base
    double Delta1F = 0.0;  // squared gradient of the warping function
    double trT = 0.0;
    Sym2 T;                // 2x2 Hessian-type tensor on the base
    double kappa_base = 0.0;
    double det_identity_residual = 0.0;    // base-block determinant identity
    double trace_identity_residual = 0.0;  // (trA)^2 - trA2 = (n-1) phi, A = S - tau1 g
};

// Christoffel symbols of the chart at a point, index (h,i,j), n^3 values.
std::vector<double> christoffel(const MetricChart& chart, const Point& p);

// Metric jets at a point (warped charts are expanded first).
JetMatrix metric_jets(const MetricChart& chart, const Point& p);

// Full curvature data from second-order jets of the metric.
CurvaturePack curvature_pack(const MetricChart& chart, const Point& p);

// Warped-product block formulas; cross-checked against curvature_pack by
// the test suite. Requires a chart in warped mode.
std::pair<CurvaturePack, WarpedInvariants> warped_components(const MetricChart& chart,
                                                             const Point& p);

// Curvature of a hypersurface with second fundamental form H in an ambient
// space of constant curvature (scalar curvature ambient_kappa):
// R = (eps/2) H^H + ambient_kappa/(2n(n+1)) g^g.
CurvaturePack gauss_pack(const Sym2& H, const PointFrame& frame, double eps,
                         double ambient_kappa);

}  // namespace curv
