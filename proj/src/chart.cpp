#include "curv/chart.hpp"

#include <cmath>
#include <set>

namespace curv {

namespace {

void check_param_collisions(const std::vector<std::string>& coords,
                            const std::map<std::string, double>& params) {
    std::set<std::string> seen;
    for (const auto& c : coords) {
        if (!seen.insert(c).second) throw ChartError("duplicate coordinate name '" + c + "'");
        if (is_known_function(c))
            throw ChartError("coordinate '" + c + "' shadows a built-in function");
    }
    for (const auto& [name, _] : params) {
        if (seen.count(name))
            throw ChartError("name '" + name + "' used as both coordinate and parameter");
        if (is_known_function(name))
            throw ChartError("parameter '" + name + "' shadows a built-in function");
    }
}

}  // namespace

MetricChart make_full_chart(std::vector<std::string> coords, std::vector<Expr> grid,
                            std::map<std::string, double> params) {
    MetricChart c;
    c.mode = MetricChart::Mode::Full;
    c.n = static_cast<int>(coords.size());
    if (c.n < 2) throw ChartError("chart dimension must be at least 2");
    if (c.n > 8) throw ChartError("chart dimension is capped at 8 (dense tensor storage)");
    if (static_cast<int>(grid.size()) != c.n * c.n)
        throw ChartError("metric grid shape does not match dimension");
    c.coords = std::move(coords);
    c.grid = std::move(grid);
    c.params = std::move(params);
    check_param_collisions(c.coords, c.params);
    return c;
}

std::vector<std::string> fiber_coord_names(const MetricChart& chart) {
    return {chart.coords.begin() + 2, chart.coords.end()};
}

MetricChart make_warped_chart(std::vector<std::string> base_coords, std::vector<Expr> base_grid,
                              Expr warping, int fiber_dim, double fiber_kappa,
                              std::string fiber_signature, std::map<std::string, double> params,
                              std::vector<std::string> coords) {
    MetricChart c;
    c.mode = MetricChart::Mode::Warped;
    if (base_coords.size() != 2) throw ChartError("warped mode requires a 2-dimensional base");
    if (base_grid.size() != 4) throw ChartError("warped base metric must be 2x2");
    if (fiber_dim < 2) throw ChartError("fiber dimension must be at least 2");
    if (fiber_dim > 6) throw ChartError("chart dimension is capped at 8 (dense tensor storage)");
    c.n = 2 + fiber_dim;
    c.fiber_dim = fiber_dim;
    c.fiber_kappa = fiber_kappa;

    if (fiber_signature.empty()) fiber_signature = std::string(fiber_dim, '+');
    if (static_cast<int>(fiber_signature.size()) != fiber_dim)
        throw ChartError("fiber signature length does not match fiber dimension");
    for (char ch : fiber_signature)
        if (ch != '+' && ch != '-') throw ChartError("fiber signature must use only '+'/'-'");
    c.fiber_signature = std::move(fiber_signature);
    if (!c.fiber_is_riemannian() && fiber_kappa != 0.0)
        throw ChartError("curved non-Riemannian fibers are not supported");

    if (coords.empty()) {
        coords = base_coords;
        std::vector<std::string> fnames;
        if (fiber_dim == 2)
            fnames = {"theta", "phi"};
        else
            for (int i = 1; i <= fiber_dim; ++i) fnames.push_back("y" + std::to_string(i));
        bool clash = false;
        for (const auto& f : fnames)
            if (f == base_coords[0] || f == base_coords[1]) clash = true;
        if (clash) {
            fnames.clear();
            for (int i = 1; i <= fiber_dim; ++i) fnames.push_back("fy" + std::to_string(i));
        }
        coords.insert(coords.end(), fnames.begin(), fnames.end());
    } else {
        if (static_cast<int>(coords.size()) != c.n)
            throw ChartError("coordinate list must cover base and fiber");
        if (coords[0] != base_coords[0] || coords[1] != base_coords[1])
            throw ChartError("base coordinates must come first in the coordinate list");
    }
    c.coords = std::move(coords);
    c.base_grid = std::move(base_grid);
    c.warping = std::move(warping);
    c.params = std::move(params);
    check_param_collisions(c.coords, c.params);

    // Pole guards of the constant-curvature model charts.
    const auto fnames = fiber_coord_names(c);
    if (c.fiber_kappa > 0.0) {
        for (int i = 0; i + 1 < fiber_dim; ++i) c.sin_guards.push_back(fnames[i]);
    } else if (c.fiber_kappa < 0.0) {
        c.sinh_guards.push_back(fnames[0]);
        for (int i = 1; i + 1 < fiber_dim; ++i) c.sin_guards.push_back(fnames[i]);
    }
    return c;
}

std::vector<Expr> fiber_model_entries(const MetricChart& chart) {
    const int fd = chart.fiber_dim;
    const auto names = fiber_coord_names(chart);
    std::vector<Expr> entries;
    entries.reserve(fd);

    if (chart.fiber_kappa == 0.0) {
        for (int i = 0; i < fd; ++i)
            entries.push_back(expr_number(chart.fiber_signature[i] == '-' ? -1.0 : 1.0));
        return entries;
    }

    const double a2 = fd * (fd - 1) / std::fabs(chart.fiber_kappa);
    const bool spherical = chart.fiber_kappa > 0.0;
    // Round model: a^2 (dy1^2 + q(y1)^2 dy2^2 + q(y1)^2 sin(y2)^2 dy3^2 + ...)
    // with q = sin for positive curvature and q = sinh for negative.
    for (int i = 0; i < fd; ++i) {
        Expr e = expr_number(a2);
        for (int j = 0; j < i; ++j) {
            const std::string fn = (j == 0 && !spherical) ? "sinh" : "sin";
            Expr factor = parse_expression_or_throw(fn + "(" + names[j] + ")^2");
            e = expr_mul(e, factor);
        }
        entries.push_back(e);
    }
    return entries;
}

MetricChart instantiate_full(const MetricChart& chart) {
    if (chart.mode == MetricChart::Mode::Full) return chart;

    const int n = chart.n;
    std::vector<Expr> grid(static_cast<size_t>(n) * n, expr_number(0.0));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) grid[a * n + b] = chart.base_grid[a * 2 + b];

    const auto fiber = fiber_model_entries(chart);
    for (int i = 0; i < chart.fiber_dim; ++i) {
        const int d = 2 + i;
        grid[d * n + d] = expr_mul(chart.warping, fiber[i]);
    }

    MetricChart full = make_full_chart(chart.coords, std::move(grid), chart.params);
    full.sin_guards = chart.sin_guards;
    full.sinh_guards = chart.sinh_guards;
    return full;
}

Point complete_point(const MetricChart& chart, const Point& p) {
    Point out = p;
    for (int i = 0; i < chart.n; ++i) {
        const std::string& name = chart.coords[i];
        if (out.count(name)) continue;
        if (chart.mode == MetricChart::Mode::Warped && i >= 2) {
            // Equator-style defaults keep clear of chart poles.
            const auto fnames = fiber_coord_names(chart);
            const int fi = i - 2;
            double v = 0.0;
            if (chart.fiber_kappa > 0.0)
                v = (fi + 1 < chart.fiber_dim) ? 1.5707963267948966 : 0.0;
            else if (chart.fiber_kappa < 0.0)
                v = (fi == 0) ? 1.0 : ((fi + 1 < chart.fiber_dim) ? 1.5707963267948966 : 0.0);
            out[fnames[fi]] = v;
            continue;
        }
        throw DomainError("point does not bind coordinate '" + name + "'");
    }
    return out;
}

void check_guards(const MetricChart& chart, const Point& p) {
    for (const auto& name : chart.sin_guards) {
        auto it = p.find(name);
        if (it != p.end() && std::fabs(std::sin(it->second)) < 1e-3)
            throw DomainError("coordinate '" + name + "' is within 1e-3 of a chart pole");
    }
    for (const auto& name : chart.sinh_guards) {
        auto it = p.find(name);
        if (it != p.end() && std::fabs(std::sinh(it->second)) < 1e-3)
            throw DomainError("coordinate '" + name + "' is at the hyperbolic chart origin");
    }
}

}  // namespace curv
