#include "curv/curvature.hpp"

#include <cmath>

#include "curv/tensor_ops.hpp"

namespace curv {

namespace {

constexpr double kSymmetryTol = 1e-10;

std::map<std::string, Jet2> jet_bindings(const MetricChart& chart, const Point& p) {
    const int n = chart.n;
    std::map<std::string, Jet2> b;
    for (int i = 0; i < n; ++i) {
        auto it = p.find(chart.coords[i]);
        if (it == p.end())
            throw DomainError("point does not bind coordinate '" + chart.coords[i] + "'");
        b[chart.coords[i]] = Jet2::variable(n, i, it->second);
    }
    for (const auto& [name, value] : chart.params) b[name] = Jet2::constant(n, value);
    return b;
}

// Gamma and dGamma from the metric jets.
struct Connection {
    int n = 0;
    std::vector<double> gamma;   // (h,i,j)
    std::vector<double> dgamma;  // (k,h,i,j): d_k Gamma^h_ij

    double& G(int h, int i, int j) { return gamma[(static_cast<size_t>(h) * n + i) * n + j]; }
    double G(int h, int i, int j) const {
        return gamma[(static_cast<size_t>(h) * n + i) * n + j];
    }
    double& dG(int k, int h, int i, int j) {
        return dgamma[((static_cast<size_t>(k) * n + h) * n + i) * n + j];
    }
    double dG(int k, int h, int i, int j) const {
        return dgamma[((static_cast<size_t>(k) * n + h) * n + i) * n + j];
    }
};

Connection connection_from_jets(const JetMatrix& G, const JetMatrix& Ginv) {
    const int n = G.n;
    Connection c;
    c.n = n;
    c.gamma.assign(static_cast<size_t>(n) * n * n, 0.0);
    c.dgamma.assign(static_cast<size_t>(n) * n * n * n, 0.0);

    // Gamma^h_ij = 1/2 g^hs (d_i g_js + d_j g_is - d_s g_ij)
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double s = 0.0;
                for (int t = 0; t < n; ++t)
                    s += Ginv.at(h, t).value() *
                         (G.at(j, t).grad(i) + G.at(i, t).grad(j) - G.at(i, j).grad(t));
                c.G(h, i, j) = 0.5 * s;
                c.G(h, j, i) = 0.5 * s;
            }

    for (int k = 0; k < n; ++k)
        for (int h = 0; h < n; ++h)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    double s = 0.0;
                    for (int t = 0; t < n; ++t) {
                        const double bracket = G.at(j, t).grad(i) + G.at(i, t).grad(j) -
                                               G.at(i, j).grad(t);
                        const double dbracket = G.at(j, t).hess(k, i) + G.at(i, t).hess(k, j) -
                                                G.at(i, j).hess(k, t);
                        s += Ginv.at(h, t).grad(k) * bracket + Ginv.at(h, t).value() * dbracket;
                    }
                    c.dG(k, h, i, j) = 0.5 * s;
                    c.dG(k, h, j, i) = 0.5 * s;
                }
    return c;
}

Curv4 riemann_from_connection(const Connection& c, const Mat& g) {
    const int n = c.n;
    // R^s_ijk = d_k Gamma^s_ij - d_j Gamma^s_ik
    //           + Gamma^r_ij Gamma^s_rk - Gamma^r_ik Gamma^s_rj
    Curv4 Rup(n);
    for (int s = 0; s < n; ++s)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double v = c.dG(k, s, i, j) - c.dG(j, s, i, k);
                    for (int r = 0; r < n; ++r)
                        v += c.G(r, i, j) * c.G(s, r, k) - c.G(r, i, k) * c.G(s, r, j);
                    Rup(s, i, j, k) = v;
                }
    Curv4 R(n);
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double v = 0.0;
                    for (int s = 0; s < n; ++s) v += g(h, s) * Rup(s, i, j, k);
                    R(h, i, j, k) = v;
                }
    return R;
}

void finish_pack(CurvaturePack& pack) {
    const int n = pack.frame.n;
    const GencurvCheck chk = gencurv_check(pack.R);
    if (chk.worst() > kSymmetryTol)
        throw DomainError("curvature tensor failed its symmetry check (residual " +
                          std::to_string(chk.worst()) + ")");
    pack.S = ricci(pack.R, pack.frame);
    pack.kappa = trace_g(pack.S, pack.frame);
    pack.S2 = sym2_square(pack.S, pack.frame);
    pack.trS2 = trace_g(pack.S2, pack.frame);
    if (n >= 4) {
        pack.C = weyl(pack.R, pack.frame);
        pack.E = e_tensor(pack.S, pack.frame);
    }
}

}  // namespace

JetMatrix metric_jets(const MetricChart& chart_in, const Point& p_in) {
    const MetricChart chart = instantiate_full(chart_in);
    const Point p = complete_point(chart_in, p_in);
    check_guards(chart_in, p);
    const int n = chart.n;
    const auto bindings = jet_bindings(chart, p);

    JetMatrix G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet2 v = eval<Jet2>(chart.grid[static_cast<size_t>(i) * n + j], bindings);
            if (v.nvars() == 0) v = Jet2::constant(n, v.value());
            G.at(i, j) = v;
        }

    // Symmetric as given, then symmetrized exactly.
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::fabs(G.at(i, j).value()));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (std::fabs(G.at(i, j).value() - G.at(j, i).value()) >
                1e-9 * std::max(1.0, scale))
                throw ChartError("metric grid is not symmetric at the evaluation point");
            Jet2 avg = (G.at(i, j) + G.at(j, i)) * Jet2(0.5);
            G.at(i, j) = avg;
            G.at(j, i) = avg;
        }
    return G;
}

std::vector<double> christoffel(const MetricChart& chart, const Point& p) {
    const JetMatrix G = metric_jets(chart, p);
    const JetMatrix Ginv = invert(G);
    return connection_from_jets(G, Ginv).gamma;
}

CurvaturePack curvature_pack(const MetricChart& chart, const Point& p) {
    const JetMatrix G = metric_jets(chart, p);
    JetMatrix Ginv;
    try {
        Ginv = invert(G);
    } catch (const SingularMetricError& e) {
        throw DomainError(e.what());
    }
    const Connection conn = connection_from_jets(G, Ginv);

    CurvaturePack pack;
    pack.frame = PointFrame::from_metric(G.value_matrix());
    pack.gamma = conn.gamma;
    pack.R = riemann_from_connection(conn, pack.frame.g);
    finish_pack(pack);
    return pack;
}

std::pair<CurvaturePack, WarpedInvariants> warped_components(const MetricChart& chart,
                                                             const Point& p_in) {
    if (chart.mode != MetricChart::Mode::Warped)
        throw ChartError("warped_components requires a chart in warped mode");
    const int n = chart.n;
    const int fd = chart.fiber_dim;
    const double kt = chart.fiber_kappa;
    const Point p = complete_point(chart, p_in);
    check_guards(chart, p);

    // Base pipeline on the 2-dimensional chart.
    std::vector<std::string> base_coords(chart.coords.begin(), chart.coords.begin() + 2);
    MetricChart base = make_full_chart(base_coords, chart.base_grid, chart.params);
    const CurvaturePack bpack = curvature_pack(base, p);
    const Mat& gb = bpack.frame.g;
    const Mat& gbi = bpack.frame.g_inv;

    // Warping function jets over the base coordinates.
    std::map<std::string, Jet2> bb;
    for (int i = 0; i < 2; ++i) bb[base_coords[i]] = Jet2::variable(2, i, p.at(base_coords[i]));
    for (const auto& [name, value] : chart.params) bb[name] = Jet2::constant(2, value);
    const Jet2 F = eval<Jet2>(chart.warping, bb);
    const double Fv = F.value();
    if (Fv <= 0.0) throw DomainError("warping function is non-positive at the point");

    // T_ab = Hess(F)_ab - F_a F_b / (2F), with the base connection.
    Sym2 hessF(2), T(2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            double v = F.hess(a, b);
            for (int c = 0; c < 2; ++c) v -= bpack.Gamma(c, a, b) * F.grad(c);
            hessF(a, b) = v;
            T(a, b) = v - F.grad(a) * F.grad(b) / (2.0 * Fv);
        }
    double DeltaF = 0.0, Delta1F = 0.0, trT = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            DeltaF += gbi(a, b) * hessF(a, b);
            Delta1F += gbi(a, b) * F.grad(a) * F.grad(b);
            trT += gbi(a, b) * T(a, b);
        }
    const double kbar = bpack.kappa;

    // Fiber model values at the fiber point.
    const auto fentries = fiber_model_entries(chart);
    const auto fnames = fiber_coord_names(chart);
    std::map<std::string, double> fb;
    for (const auto& name : fnames) fb[name] = p.at(name);
    for (const auto& [name, value] : chart.params) fb[name] = value;
    std::vector<double> gf(fd);
    for (int i = 0; i < fd; ++i) gf[i] = eval<double>(fentries[i], fb);

    // Assemble the full metric (block diagonal, fiber scaled by F).
    Mat g(n, n);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) g(a, b) = gb(a, b);
    for (int i = 0; i < fd; ++i) g(2 + i, 2 + i) = Fv * gf[i];

    CurvaturePack pack;
    pack.frame = PointFrame::from_metric(g);

    // Riemann blocks. Fiber factor: Rt_abcd = kt/(fd(fd-1)) (gt_ad gt_bc - gt_ac gt_bd).
    const double cfiber = (fd >= 2) ? kt / (static_cast<double>(fd) * (fd - 1)) : 0.0;
    auto is_fiber = [](int idx) { return idx >= 2; };
    auto gt = [&](int al, int be) -> double {
        return (al == be) ? gf[al - 2] : 0.0;  // model metric is diagonal
    };
    Curv4 R(n);
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const int nf = is_fiber(h) + is_fiber(i) + is_fiber(j) + is_fiber(k);
                    if (nf == 0) {
                        R(h, i, j, k) = bpack.R(h, i, j, k);
                    } else if (nf == 4) {
                        const double rt =
                            cfiber * (gt(h, k) * gt(i, j) - gt(h, j) * gt(i, k));
                        R(h, i, j, k) = Fv * rt - 0.25 * Delta1F *
                                                      (gt(h, k) * gt(i, j) -
                                                       gt(h, j) * gt(i, k));
                    } else if (nf == 2) {
                        // Nonzero only with one fiber index in each pair:
                        // R_(alpha b c beta) = -1/2 T_bc gt_(alpha beta).
                        const bool f1 = is_fiber(h) != is_fiber(i);
                        const bool f2 = is_fiber(j) != is_fiber(k);
                        if (f1 && f2) {
                            const int al = is_fiber(h) ? h : i;
                            const int b = is_fiber(h) ? i : h;
                            const int be = is_fiber(k) ? k : j;
                            const int c = is_fiber(k) ? j : k;
                            const double s1 = is_fiber(h) ? 1.0 : -1.0;
                            const double s2 = is_fiber(k) ? 1.0 : -1.0;
                            R(h, i, j, k) = -0.5 * s1 * s2 * T(b, c) * gt(al, be);
                        }
                    }
                }
    pack.R = R;

    // Ricci blocks and scalar curvature.
    const double tau1 = kt / ((n - 2) * Fv) - trT / (2.0 * Fv) -
                        (n - 3) * Delta1F / (4.0 * Fv * Fv);
    Sym2 S(n);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) S(a, b) = bpack.S(a, b) - (n - 2) / (2.0 * Fv) * T(a, b);
    for (int i = 0; i < fd; ++i) S(2 + i, 2 + i) = tau1 * g(2 + i, 2 + i);
    pack.S = S;
    pack.kappa = kbar + kt / Fv -
                 (n - 2) / Fv * (DeltaF + (n - 5) * Delta1F / (4.0 * Fv));
    pack.S2 = sym2_square(S, pack.frame);
    pack.trS2 = trace_g(pack.S2, pack.frame);

    // Weyl blocks from the closed form; E from its definition.
    const double rho = 2.0 * (n - 3) / (n - 1.0) *
                       (kbar / 2.0 + kt / ((n - 3) * (n - 2) * Fv) +
                        (DeltaF - Delta1F / Fv) / (2.0 * Fv));
    if (n >= 4) {
        Curv4 C(n);
        for (int h = 0; h < n; ++h)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        const int nf = is_fiber(h) + is_fiber(i) + is_fiber(j) + is_fiber(k);
                        if (nf == 0) {
                            C(h, i, j, k) = 0.5 * rho *
                                            (g(h, k) * g(i, j) - g(h, j) * g(i, k));
                        } else if (nf == 4) {
                            C(h, i, j, k) = rho / ((n - 3) * (n - 2.0)) *
                                            (g(h, k) * g(i, j) - g(h, j) * g(i, k));
                        } else if (nf == 2) {
                            const bool f1 = is_fiber(h) != is_fiber(i);
                            const bool f2 = is_fiber(j) != is_fiber(k);
                            if (f1 && f2) {
                                const int al = is_fiber(h) ? h : i;
                                const int b = is_fiber(h) ? i : h;
                                const int be = is_fiber(k) ? k : j;
                                const int c = is_fiber(k) ? j : k;
                                const double s1 = is_fiber(h) ? 1.0 : -1.0;
                                const double s2 = is_fiber(k) ? 1.0 : -1.0;
                                C(h, i, j, k) = -s1 * s2 * rho / (2.0 * (n - 2)) * g(b, c) *
                                                ((al == be) ? g(al, be) : 0.0);
                            }
                        }
                    }
        pack.C = C;
        pack.E = e_tensor(S, pack.frame);
    }

    // Full Christoffel symbols of the warped product.
    pack.gamma.assign(static_cast<size_t>(n) * n * n, 0.0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) pack.Gamma(a, b, c) = bpack.Gamma(a, b, c);
    {
        // Fiber Christoffels of the model chart.
        MetricChart fiber_chart;
        if (fd >= 2) {
            std::vector<Expr> fgrid(static_cast<size_t>(fd) * fd, expr_number(0.0));
            for (int i = 0; i < fd; ++i) fgrid[static_cast<size_t>(i) * fd + i] = fentries[i];
            fiber_chart = make_full_chart(fnames, std::move(fgrid), chart.params);
            Point fp;
            for (const auto& name : fnames) fp[name] = p.at(name);
            const auto fgamma = christoffel(fiber_chart, fp);
            for (int al = 0; al < fd; ++al)
                for (int be = 0; be < fd; ++be)
                    for (int ga = 0; ga < fd; ++ga)
                        pack.Gamma(2 + al, 2 + be, 2 + ga) =
                            fgamma[(static_cast<size_t>(al) * fd + be) * fd + ga];
        }
        // Gamma^a_(alpha beta) = -1/2 gb^ab F_b gt_(alpha beta),
        // Gamma^alpha_(a beta) = F_a/(2F) delta^alpha_beta.
        for (int a = 0; a < 2; ++a)
            for (int al = 0; al < fd; ++al)
                for (int be = 0; be < fd; ++be) {
                    double v = 0.0;
                    for (int b = 0; b < 2; ++b) v += gbi(a, b) * F.grad(b);
                    pack.Gamma(a, 2 + al, 2 + be) = -0.5 * v * gt(2 + al, 2 + be);
                }
        for (int al = 0; al < fd; ++al)
            for (int a = 0; a < 2; ++a) {
                const double v = F.grad(a) / (2.0 * Fv);
                pack.Gamma(2 + al, a, 2 + al) = v;
                pack.Gamma(2 + al, 2 + al, a) = v;
            }
    }

    WarpedInvariants inv;
    inv.tau1 = tau1;
    inv.rho = rho;
    inv.DeltaF = DeltaF;
    inv.Delta1F = Delta1F;
    inv.trT = trT;
    inv.T = T;
    inv.kappa_base = kbar;
    inv.phi = n * tau1 * tau1 - 2.0 * pack.kappa * tau1 +
              (pack.kappa * pack.kappa - pack.trS2) / (n - 1.0);

    // Base-block determinant identity for A = S - tau1 g.
    {
        const double a11 = S(0, 0) - tau1 * g(0, 0);
        const double a12 = S(0, 1) - tau1 * g(0, 1);
        const double a22 = S(1, 1) - tau1 * g(1, 1);
        const double lhs = a11 * a22 - a12 * a12;
        const double rhs = 0.5 * (n - 1) * inv.phi * (g(0, 0) * g(1, 1) - g(0, 1) * g(0, 1));
        inv.det_identity_residual =
            std::fabs(lhs - rhs) / std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
    }
    {
        Sym2 A = sym2_axpy(-tau1, Sym2::from_mat(g), S);
        const double trA = trace_g(A, pack.frame);
        const double trA2 = trace_g(sym2_square(A, pack.frame), pack.frame);
        const double lhs = trA * trA - trA2;
        const double rhs = (n - 1.0) * inv.phi;
        inv.trace_identity_residual =
            std::fabs(lhs - rhs) / std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
    }
    return {pack, inv};
}

CurvaturePack gauss_pack(const Sym2& H, const PointFrame& frame, double eps,
                         double ambient_kappa) {
    const int n = frame.n;
    const Sym2 g = Sym2::from_mat(frame.g);
    CurvaturePack pack;
    pack.frame = frame;
    const Curv4 HH = wedge22(H, H);
    const Curv4 gg = wedge22(g, g);
    pack.R = Curv4(n);
    const double cg = ambient_kappa / (2.0 * n * (n + 1));
    for (size_t t = 0; t < pack.R.c.size(); ++t)
        pack.R.c[t] = 0.5 * eps * HH.c[t] + cg * gg.c[t];
    finish_pack(pack);
    return pack;
}

}  // namespace curv
