#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "curv/expr.hpp"

namespace curv {

using Point = std::map<std::string, double>;

// Malformed chart description (bad dimensions, name collisions, ...).
class ChartError : public std::runtime_error {
public:
    explicit ChartError(const std::string& msg) : std::runtime_error(msg) {}
};

// Point outside the chart domain (singular metric, pole, F <= 0, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A metric chart: either an explicit n x n grid of component expressions,
// or a warped product of a 2-dimensional base with a constant-curvature
// fiber entering through its scalar curvature.
struct MetricChart {
    enum class Mode { Full, Warped };

    Mode mode = Mode::Full;
    int n = 0;
    std::vector<std::string> coords;         // all n coordinate names
    std::map<std::string, double> params;

    // Full mode
    std::vector<Expr> grid;                  // n*n, row-major

    // Warped mode
    std::vector<Expr> base_grid;             // 2x2, row-major, over coords[0..1]
    Expr warping;                            // F > 0 on the domain
    int fiber_dim = 0;
    double fiber_kappa = 0.0;                // fiber scalar curvature
    std::string fiber_signature;             // e.g. "++"; non-Riemannian flagged

    // Coordinates that must stay away from sin = 0 (sphere-chart poles).
    std::vector<std::string> sin_guards;
    // Coordinates that must stay away from sinh = 0 (hyperbolic cone point).
    std::vector<std::string> sinh_guards;

    bool fiber_is_riemannian() const {
        for (char c : fiber_signature)
            if (c == '-') return false;
        return true;
    }
};

MetricChart make_full_chart(std::vector<std::string> coords, std::vector<Expr> grid,
                            std::map<std::string, double> params);

// coords may be empty, in which case fiber coordinate names are generated
// (theta/phi for a 2-dimensional fiber, y1.. otherwise).
MetricChart make_warped_chart(std::vector<std::string> base_coords, std::vector<Expr> base_grid,
                              Expr warping, int fiber_dim, double fiber_kappa,
                              std::string fiber_signature, std::map<std::string, double> params,
                              std::vector<std::string> coords = {});

// Explicit constant-curvature model metric of the fiber: diagonal entries
// as expressions over the fiber coordinates.
std::vector<Expr> fiber_model_entries(const MetricChart& chart);
std::vector<std::string> fiber_coord_names(const MetricChart& chart);

// Expand a warped chart into an explicit full-grid chart (identity on
// charts already in full mode).
MetricChart instantiate_full(const MetricChart& chart);

// Fill in default fiber coordinates (equator values) for entries missing
// from the point; base coordinates must be present.
Point complete_point(const MetricChart& chart, const Point& p);

// Throws DomainError when a guarded angle sits within 1e-3 of a pole.
void check_guards(const MetricChart& chart, const Point& p);

}  // namespace curv
