#include "curv/catalog.hpp"

#include <cmath>
#include <stdexcept>

#include "curv/jet.hpp"
#include "curv/tensor_ops.hpp"

namespace curv {

namespace {

// ---- oracle evaluation helpers ----------------------------------------

// Value, d/dr and d2/dr2 of an expression of r (and parameters).
struct RadialJet {
    double v = 0, d = 0, dd = 0;
};

RadialJet radial_jet(const Expr& e, double r, const std::map<std::string, double>& params) {
    std::map<std::string, Jet2> b;
    b["r"] = Jet2::variable(1, 0, r);
    for (const auto& [k, v] : params) b[k] = Jet2::constant(1, v);
    const Jet2 j = eval<Jet2>(e, b);
    return {j.value(), j.nvars() ? j.grad(0) : 0.0, j.nvars() ? j.hess(0, 0) : 0.0};
}

Expr oracle(const char* text) { return parse_expression_or_throw(text); }

// Closed forms for a warped product over the static diagonal base
// gbar = diag(-e1(r), e2(r)) with warping F(r) and fiber scalar curvature
// kt: base curvature, warping Laplacians, tau1, rho, kappa, phi and the
// E = lambda C ratio. Each step is carried as expression text and
// evaluated over the bindings accumulated so far.
const std::vector<std::pair<const char*, const char*>>& diag_master_formulas() {
    static const std::vector<std::pair<const char*, const char*>> v = {
        {"kbar", "-(dde1 - de1^2/(2*e1) - de1*de2/(2*e2))/(e1*e2)"},
        {"DF", "de1*dF/(2*e1*e2) + ddF/e2 - de2*dF/(2*e2^2)"},
        {"D1F", "dF^2/e2"},
        {"trT", "DF - D1F/(2*F)"},
        {"tau1", "kt/((n-2)*F) - DF/(2*F) - (n-4)*D1F/(4*F^2)"},
        {"rho", "2*(n-3)/(n-1)*(kbar/2 + kt/((n-3)*(n-2)*F) + (DF - D1F/F)/(2*F))"},
        {"kappa", "kbar + kt/F - (n-2)/F*(DF + (n-5)*D1F/(4*F))"},
        {"Ttt", "-de1*dF/(2*e2)"},
        {"Trr", "ddF - de2*dF/(2*e2) - dF^2/(2*F)"},
        {"Stt", "-kbar*e1/2 - (n-2)*Ttt/(2*F)"},
        {"Srr", "kbar*e2/2 - (n-2)*Trr/(2*F)"},
        {"trS2", "(Stt/e1)^2 + (Srr/e2)^2 + (n-2)*tau1^2"},
        {"phi", "n*tau1^2 - 2*kappa*tau1 + (kappa^2 - trS2)/(n-1)"},
        {"lambda_ec", "(n-3)*(n-2)*phi/rho"},
    };
    return v;
}

// Evaluate the master chain for a family whose base metric is
// diag(-e1, e2) over (t, r) with all functions depending on r only.
std::map<std::string, double> diag_master_oracles(const Expr& e1, const Expr& e2, const Expr& F,
                                                  double kt, int n, double r,
                                                  const std::map<std::string, double>& params) {
    const RadialJet j1 = radial_jet(e1, r, params);
    const RadialJet j2 = radial_jet(e2, r, params);
    const RadialJet jF = radial_jet(F, r, params);
    std::map<std::string, double> b = {
        {"e1", j1.v},    {"de1", j1.d},  {"dde1", j1.dd}, {"e2", j2.v},
        {"de2", j2.d},   {"dde2", j2.dd}, {"F", jF.v},     {"dF", jF.d},
        {"ddF", jF.dd},  {"kt", kt},      {"n", static_cast<double>(n)},
    };
    for (const auto& [key, text] : diag_master_formulas()) b[key] = eval<double>(oracle(text), b);
    std::map<std::string, double> out;
    for (const char* key : {"kbar", "tau1", "rho", "kappa", "phi", "lambda_ec"})
        out[key] = b[key];
    return out;
}

double numeric_arg(const FamilyArgs& a, const std::string& name) {
    auto it = a.numeric.find(name);
    if (it == a.numeric.end()) throw ChartError("missing numeric parameter '" + name + "'");
    return it->second;
}

const std::string& text_arg(const FamilyArgs& a, const std::string& name) {
    auto it = a.text.find(name);
    if (it == a.text.end()) throw ChartError("missing expression parameter '" + name + "'");
    return it->second;
}

std::map<std::string, double> chart_params(const FamilyArgs& a,
                                           const std::vector<std::string>& exclude = {}) {
    std::map<std::string, double> out = a.numeric;
    for (const auto& k : exclude) out.erase(k);
    return out;
}

// Largest-r obstruction (sign change or near-zero) of a set of functions
// that must stay positive, scanned on a grid; the sampling window starts
// 10% beyond it.
std::pair<double, double> positivity_window(const std::vector<Expr>& positive,
                                            const std::map<std::string, double>& params,
                                            double hi = 60.0) {
    double last_bad = 0.05;
    for (int i = 0; i <= 800; ++i) {
        const double r = 0.05 + (hi - 0.05) * i / 800.0;
        std::map<std::string, double> b = params;
        b["r"] = r;
        b["t"] = 1.0;
        bool ok = true;
        for (const auto& e : positive) {
            double v;
            try {
                v = eval<double>(e, b);
            } catch (const EvalError&) {
                ok = false;
                break;
            }
            if (!(v > 1e-3)) {
                ok = false;
                break;
            }
        }
        if (!ok) last_bad = r;
    }
    const double lo = std::max(1.1 * last_bad, 0.5);
    const double width = std::max(2.0, 0.5 * lo);
    return {lo, lo + width};
}

Point default_point(double t, double r) { return Point{{"t", t}, {"r", r}}; }

// ---- family builders ---------------------------------------------------

MetricChart build_h_form(const std::string& h_text, int n, double kt,
                         const std::map<std::string, double>& params) {
    // gbar = diag(-h, 1/h) over (t, r), F = r^2, (n-2)-dimensional fiber.
    std::vector<Expr> base = {parse_expression_or_throw("-(" + h_text + ")"),
                              expr_number(0.0), expr_number(0.0),
                              parse_expression_or_throw("1/(" + h_text + ")")};
    return make_warped_chart({"t", "r"}, std::move(base), parse_expression_or_throw("r^2"),
                             n - 2, kt, "", params);
}

std::map<std::string, double> h_form_oracles(const std::string& h_text, int n, double kt,
                                             const std::map<std::string, double>& params,
                                             const Point& p) {
    const double r = p.at("r");
    const Expr h = parse_expression_or_throw(h_text);
    const RadialJet hj = radial_jet(h, r, params);

    std::map<std::string, double> b = {{"h", hj.v}, {"hp", hj.d},
                                       {"hpp", hj.dd}, {"kt", kt},
                                       {"n", static_cast<double>(n)}, {"r", r}};
    std::map<std::string, double> out;
    out["tau1"] = eval<double>(oracle("-(r*hp + (n-3)*h - kt/(n-2))/r^2"), b);
    out["rho"] = eval<double>(
        oracle("-(n-3)/((n-1)*r^2)*(r^2*hpp - 2*r*hp + 2*h - 2*kt/((n-3)*(n-2)))"), b);
    out["phi"] = eval<double>(
        oracle("(r^2*hpp + (n-4)*r*hp - 2*(n-3)*h + 2*kt/(n-2))^2/(2*(n-1)*r^4)"), b);
    out["kappa"] =
        eval<double>(oracle("-(r^2*hpp + 2*(n-2)*r*hp + (n-2)*(n-3)*h - kt)/r^2"), b);
    out["L_R"] = eval<double>(oracle("-hp/(2*r)"), b);
    if (out["rho"] != 0.0)
        out["lambda_ec"] = (n - 3.0) * (n - 2.0) * out["phi"] / out["rho"];

    // Cross-check route: the same invariants through the diagonal-base
    // chain. Unlike the display formulas, it needs 1/h, so it is skipped
    // where h vanishes (horizons).
    try {
        const auto master =
            diag_master_oracles(h, parse_expression_or_throw("1/(" + h_text + ")"),
                                parse_expression_or_throw("r^2"), kt, n, r, params);
        out["tau1_master"] = master.at("tau1");
        out["rho_master"] = master.at("rho");
        out["phi_master"] = master.at("phi");
        out["kappa_master"] = master.at("kappa");
    } catch (const EvalError&) {
    }
    return out;
}

}  // namespace

// ---- registry -----------------------------------------------------------

const std::vector<FamilySpec>& family_registry() {
    static const std::vector<FamilySpec> registry = [] {
        std::vector<FamilySpec> fams;

        {
            FamilySpec f;
            f.id = "example63";
            f.summary = "diag(-h(r), 1/h(r)) base, F = r^2, constant-curvature fiber";
            f.params = {{"h", true, 0, "1 - 2*m/r", "metric function h(r)"},
                        {"n", false, 4, "", "total dimension"},
                        {"kt", false, 2, "", "fiber scalar curvature"},
                        {"m", false, 1, "", "free parameter of the default h"}};
            f.build = [](const FamilyArgs& a) {
                return build_h_form(text_arg(a, "h"), static_cast<int>(numeric_arg(a, "n")),
                                    numeric_arg(a, "kt"), chart_params(a, {"n", "kt"}));
            };
            f.oracles = [](const FamilyArgs& a, const Point& p) {
                return h_form_oracles(text_arg(a, "h"), static_cast<int>(numeric_arg(a, "n")),
                                      numeric_arg(a, "kt"), chart_params(a, {"n", "kt"}), p);
            };
            f.sample_range = [](const FamilyArgs& a) {
                return positivity_window({parse_expression_or_throw(text_arg(a, "h"))},
                                         chart_params(a, {"n", "kt"}));
            };
            f.sample_point = [](const FamilyArgs& a) {
                const auto w = positivity_window({parse_expression_or_throw(text_arg(a, "h"))},
                                                 chart_params(a, {"n", "kt"}));
                return default_point(0.0, 0.5 * (w.first + w.second));
            };
            fams.push_back(f);
        }

        auto h_specialization = [&fams](const std::string& id, const std::string& summary,
                                        const std::string& h_text,
                                        std::vector<FamilyParam> extra) {
            FamilySpec f;
            f.id = id;
            f.summary = summary;
            f.params = std::move(extra);
            f.params.push_back({"n", false, 4, "", "total dimension"});
            f.params.push_back({"kt", false, 2, "", "fiber scalar curvature"});
            f.build = [h_text](const FamilyArgs& a) {
                return build_h_form(h_text, static_cast<int>(numeric_arg(a, "n")),
                                    numeric_arg(a, "kt"), chart_params(a, {"n", "kt"}));
            };
            f.oracles = [h_text](const FamilyArgs& a, const Point& p) {
                return h_form_oracles(h_text, static_cast<int>(numeric_arg(a, "n")),
                                      numeric_arg(a, "kt"), chart_params(a, {"n", "kt"}), p);
            };
            f.sample_range = [h_text](const FamilyArgs& a) {
                return positivity_window({parse_expression_or_throw(h_text)},
                                         chart_params(a, {"n", "kt"}));
            };
            f.sample_point = [h_text](const FamilyArgs& a) {
                const auto w = positivity_window({parse_expression_or_throw(h_text)},
                                                 chart_params(a, {"n", "kt"}));
                return default_point(0.0, 0.5 * (w.first + w.second));
            };
            fams.push_back(f);
        };

        h_specialization("schwarzschild", "h = 1 - 2m/r", "1 - 2*m/r",
                         {{"m", false, 1, "", "mass"}});
        h_specialization("reissner_nordstrom", "h = 1 - 2m/r + q^2/r^2",
                         "1 - 2*m/r + q^2/r^2",
                         {{"m", false, 1, "", "mass"}, {"q", false, 1, "", "charge"}});

        {
            FamilySpec f;
            f.id = "ssss_time_dependent";
            f.summary = "diag(-h(t,r), 1/h(t,r)) base, F = r^2, round 2-sphere fiber";
            f.params = {{"h", true, 0, "1 + (t^2 + 1)/(10*r)", "metric function h(t,r)"}};
            f.build = [](const FamilyArgs& a) {
                const std::string& h = text_arg(a, "h");
                std::vector<Expr> base = {parse_expression_or_throw("-(" + h + ")"),
                                          expr_number(0.0), expr_number(0.0),
                                          parse_expression_or_throw("1/(" + h + ")")};
                return make_warped_chart({"t", "r"}, std::move(base),
                                         parse_expression_or_throw("r^2"), 2, 2.0, "",
                                         chart_params(a));
            };
            f.oracles = [](const FamilyArgs& a, const Point& p) {
                const Expr h = parse_expression_or_throw(text_arg(a, "h"));
                std::map<std::string, Jet2> jb;
                jb["t"] = Jet2::variable(2, 0, p.at("t"));
                jb["r"] = Jet2::variable(2, 1, p.at("r"));
                for (const auto& [k, v] : a.numeric) jb[k] = Jet2::constant(2, v);
                const Jet2 j = eval<Jet2>(h, jb);
                std::map<std::string, double> b = {
                    {"h", j.value()},      {"ht", j.grad(0)},      {"hr", j.grad(1)},
                    {"htt", j.hess(0, 0)}, {"hrr", j.hess(1, 1)}, {"r", p.at("r")}};
                std::map<std::string, double> out;
                out["phi"] = eval<double>(
                    oracle("((h^3*(r^2*hrr - 2*h + 2) + r^2*(h*htt - 2*ht^2))^2"
                           " + 4*r^2*h^4*ht^2)/(6*r^4*h^6)"),
                    b);
                out["rho"] = eval<double>(
                    oracle("-(r^2*hrr - 2*r*hr + 2*h - 2 + r^2*htt/h^2 - 2*r^2*ht^2/h^3)"
                           "/(3*r^2)"),
                    b);
                if (out["rho"] != 0.0) out["lambda_ec"] = 2.0 * out["phi"] / out["rho"];
                return out;
            };
            f.sample_range = [](const FamilyArgs& a) {
                return positivity_window({parse_expression_or_throw(text_arg(a, "h"))},
                                         a.numeric, 20.0);
            };
            f.sample_point = [](const FamilyArgs& a) {
                const auto w = positivity_window({parse_expression_or_throw(text_arg(a, "h"))},
                                                 a.numeric, 20.0);
                return default_point(0.8, 0.5 * (w.first + w.second));
            };
            fams.push_back(f);
        }

        {
            FamilySpec f;
            f.id = "mm_family";
            f.summary = "diag(-b(r)^2, f1(r)^2) base, F = f2(r)^2, round 2-sphere fiber";
            f.params = {{"b", true, 0, "1 + 1/(4*r)", "lapse b(r)"},
                        {"f1", true, 0, "1 + 1/(2*r)", "radial factor f1(r)"},
                        {"f2", true, 0, "r + 1/(4*r)", "areal factor f2(r)"}};
            f.build = [](const FamilyArgs& a) {
                const std::string b = "(" + text_arg(a, "b") + ")";
                const std::string f1 = "(" + text_arg(a, "f1") + ")";
                const std::string f2 = "(" + text_arg(a, "f2") + ")";
                std::vector<Expr> base = {parse_expression_or_throw("-" + b + "^2"),
                                          expr_number(0.0), expr_number(0.0),
                                          parse_expression_or_throw(f1 + "^2")};
                return make_warped_chart({"t", "r"}, std::move(base),
                                         parse_expression_or_throw(f2 + "^2"), 2, 2.0, "",
                                         chart_params(a));
            };
            f.oracles = [](const FamilyArgs& a, const Point& p) {
                const std::string b = "(" + text_arg(a, "b") + ")";
                const std::string f1 = "(" + text_arg(a, "f1") + ")";
                const std::string f2 = "(" + text_arg(a, "f2") + ")";
                return diag_master_oracles(parse_expression_or_throw(b + "^2"),
                                           parse_expression_or_throw(f1 + "^2"),
                                           parse_expression_or_throw(f2 + "^2"), 2.0, 4,
                                           p.at("r"), a.numeric);
            };
            f.sample_range = [](const FamilyArgs& a) {
                return positivity_window({parse_expression_or_throw(text_arg(a, "b")),
                                          parse_expression_or_throw(text_arg(a, "f1")),
                                          parse_expression_or_throw(text_arg(a, "f2"))},
                                         a.numeric, 20.0);
            };
            f.sample_point = [](const FamilyArgs& a) {
                const auto w = positivity_window({parse_expression_or_throw(text_arg(a, "b")),
                                                  parse_expression_or_throw(text_arg(a, "f1")),
                                                  parse_expression_or_throw(text_arg(a, "f2"))},
                                                 a.numeric, 20.0);
                return default_point(0.0, 0.5 * (w.first + w.second));
            };
            fams.push_back(f);
        }

        {
            FamilySpec f;
            f.id = "bpsi_family";
            f.summary = "diag(-B(r)exp(psi(r)), 1/B(r)) base, F = r^2, round 2-sphere fiber";
            f.params = {{"B", true, 0, "1 - 1/(2*r)", "metric function B(r)"},
                        {"psi", true, 0, "1/(2*r)", "potential psi(r)"}};
            f.build = [](const FamilyArgs& a) {
                const std::string B = "(" + text_arg(a, "B") + ")";
                const std::string psi = "(" + text_arg(a, "psi") + ")";
                std::vector<Expr> base = {
                    parse_expression_or_throw("-" + B + "*exp(" + psi + ")"),
                    expr_number(0.0), expr_number(0.0),
                    parse_expression_or_throw("1/" + B)};
                return make_warped_chart({"t", "r"}, std::move(base),
                                         parse_expression_or_throw("r^2"), 2, 2.0, "",
                                         chart_params(a));
            };
            f.oracles = [](const FamilyArgs& a, const Point& p) {
                const std::string B = "(" + text_arg(a, "B") + ")";
                const std::string psi = "(" + text_arg(a, "psi") + ")";
                return diag_master_oracles(
                    parse_expression_or_throw(B + "*exp(" + psi + ")"),
                    parse_expression_or_throw("1/" + B), parse_expression_or_throw("r^2"),
                    2.0, 4, p.at("r"), a.numeric);
            };
            f.sample_range = [](const FamilyArgs& a) {
                return positivity_window({parse_expression_or_throw(text_arg(a, "B"))},
                                         a.numeric, 20.0);
            };
            f.sample_point = [](const FamilyArgs& a) {
                const auto w = positivity_window({parse_expression_or_throw(text_arg(a, "B"))},
                                                 a.numeric, 20.0);
                return default_point(0.0, 0.5 * (w.first + w.second));
            };
            fams.push_back(f);
        }

        {
            FamilySpec f;
            f.id = "morris_thorne";
            f.summary = "diag(-exp(2 psi(r)), 1/(1 - b(r)/r)) base, F = r^2, 2-sphere fiber";
            f.params = {{"b", true, 0, "0.5", "shape function b(r)"},
                        {"psi", true, 0, "1/(4*r)", "redshift function psi(r)"}};
            f.build = [](const FamilyArgs& a) {
                const std::string b = "(" + text_arg(a, "b") + ")";
                const std::string psi = "(" + text_arg(a, "psi") + ")";
                std::vector<Expr> base = {
                    parse_expression_or_throw("-exp(2*" + psi + ")"), expr_number(0.0),
                    expr_number(0.0), parse_expression_or_throw("1/(1 - " + b + "/r)")};
                return make_warped_chart({"t", "r"}, std::move(base),
                                         parse_expression_or_throw("r^2"), 2, 2.0, "",
                                         chart_params(a));
            };
            f.oracles = [](const FamilyArgs& a, const Point& p) {
                const std::string b = "(" + text_arg(a, "b") + ")";
                const std::string psi = "(" + text_arg(a, "psi") + ")";
                return diag_master_oracles(
                    parse_expression_or_throw("exp(2*" + psi + ")"),
                    parse_expression_or_throw("1/(1 - " + b + "/r)"),
                    parse_expression_or_throw("r^2"), 2.0, 4, p.at("r"), a.numeric);
            };
            f.sample_range = [](const FamilyArgs& a) {
                const std::string b = "(" + text_arg(a, "b") + ")";
                return positivity_window({parse_expression_or_throw("1 - " + b + "/r")},
                                         a.numeric, 20.0);
            };
            f.sample_point = [](const FamilyArgs& a) {
                const std::string b = "(" + text_arg(a, "b") + ")";
                const auto w = positivity_window(
                    {parse_expression_or_throw("1 - " + b + "/r")}, a.numeric, 20.0);
                return default_point(0.0, 0.5 * (w.first + w.second));
            };
            fams.push_back(f);
        }

        {
            FamilySpec f;
            f.id = "jnw";
            f.summary = "diag(-(1-b/r)^s, (1-b/r)^-s) base, F = r^2 (1-b/r)^(1-s)";
            f.params = {{"b", false, 1, "", "scale b > 0"},
                        {"s", false, 0.5, "", "exponent s in [0, 1]"}};
            f.build = [](const FamilyArgs& a) {
                std::vector<Expr> base = {
                    parse_expression_or_throw("-(1 - b/r)^s"), expr_number(0.0),
                    expr_number(0.0), parse_expression_or_throw("(1 - b/r)^(-s)")};
                return make_warped_chart(
                    {"t", "r"}, std::move(base),
                    parse_expression_or_throw("r^2*(1 - b/r)^(1 - s)"), 2, 2.0, "",
                    chart_params(a));
            };
            // In the sign convention fixed by the sphere canary (unit
            // 2-sphere scalar curvature +2), this family's S_rr, kappa and
            // alpha1 come out opposite to the source display; alpha2 is
            // unaffected. Transcribed with the convention-consistent signs,
            // cross-checked against both curvature routes and the fits.
            f.oracles = [](const FamilyArgs& a, const Point& p) {
                std::map<std::string, double> b = {{"b", numeric_arg(a, "b")},
                                                   {"s", numeric_arg(a, "s")},
                                                   {"r", p.at("r")}};
                std::map<std::string, double> out;
                out["S_rr"] =
                    eval<double>(oracle("b^2*(1 - s^2)/(2*r^4)*(1 - b/r)^(-2)"), b);
                out["kappa"] =
                    eval<double>(oracle("b^2*(1 - s^2)/(2*r^4)*(1 - b/r)^(s - 2)"), b);
                out["alpha1"] = eval<double>(
                    oracle("b*s*(b*s + b - 2*r)/(4*r^4)*(1 - b/r)^(s - 2)"), b);
                out["alpha2"] = eval<double>(
                    oracle("b*(b + 2*b*s^2 + 3*b*s - 6*r*s)/(12*r^4)*(1 - b/r)^(s - 2)"), b);
                return out;
            };
            f.sample_range = [](const FamilyArgs& a) {
                const double b = numeric_arg(a, "b");
                return std::pair<double, double>{1.5 * b, 6.0 * b};
            };
            f.sample_point = [](const FamilyArgs& a) {
                return default_point(0.0, 2.0 * numeric_arg(a, "b"));
            };
            fams.push_back(f);
        }

        {
            FamilySpec f;
            f.id = "minkowski";
            f.summary = "flat Lorentzian chart";
            f.params = {{"n", false, 4, "", "dimension"}};
            f.build = [](const FamilyArgs& a) {
                const int n = static_cast<int>(numeric_arg(a, "n"));
                std::vector<std::string> coords = {"t"};
                for (int i = 1; i < n; ++i) coords.push_back("x" + std::to_string(i));
                std::vector<Expr> grid(static_cast<size_t>(n) * n, expr_number(0.0));
                grid[0] = expr_number(-1.0);
                for (int i = 1; i < n; ++i)
                    grid[static_cast<size_t>(i) * n + i] = expr_number(1.0);
                return make_full_chart(coords, std::move(grid), {});
            };
            f.oracles = [](const FamilyArgs&, const Point&) {
                return std::map<std::string, double>{{"kappa", 0.0}};
            };
            f.sample_range = [](const FamilyArgs&) {
                return std::pair<double, double>{0.0, 0.0};
            };
            f.sample_point = [](const FamilyArgs& a) {
                Point p{{"t", 0.3}};
                const int n = static_cast<int>(numeric_arg(a, "n"));
                for (int i = 1; i < n; ++i) p["x" + std::to_string(i)] = 0.1 * i + 0.2;
                return p;
            };
            fams.push_back(f);
        }

        {
            FamilySpec f;
            f.id = "unit_sphere_product";
            f.summary = "unit 2-sphere times a flat plane";
            f.params = {};
            f.build = [](const FamilyArgs&) {
                std::vector<Expr> grid(16, expr_number(0.0));
                grid[0] = expr_number(1.0);
                grid[5] = parse_expression_or_throw("sin(theta)^2");
                grid[10] = expr_number(1.0);
                grid[15] = expr_number(1.0);
                MetricChart c = make_full_chart({"theta", "phi", "x", "y"}, std::move(grid), {});
                c.sin_guards.push_back("theta");
                return c;
            };
            f.oracles = [](const FamilyArgs&, const Point&) {
                return std::map<std::string, double>{{"kappa", 2.0}};
            };
            f.sample_range = [](const FamilyArgs&) {
                return std::pair<double, double>{0.0, 0.0};
            };
            f.sample_point = [](const FamilyArgs&) {
                return Point{{"theta", 1.1}, {"phi", 0.4}, {"x", 0.0}, {"y", 0.0}};
            };
            fams.push_back(f);
        }

        return fams;
    }();
    return registry;
}

const FamilySpec* find_family(const std::string& id) {
    for (const auto& f : family_registry())
        if (f.id == id) return &f;
    return nullptr;
}

FamilyArgs merge_family_args(const FamilySpec& spec, const FamilyArgs& user) {
    FamilyArgs merged = user;
    for (const auto& p : spec.params) {
        if (p.is_text) {
            if (!merged.text.count(p.name)) merged.text[p.name] = p.text;
        } else {
            if (!merged.numeric.count(p.name)) merged.numeric[p.name] = p.number;
        }
    }
    return merged;
}

MetricChart build_family(const std::string& id, const FamilyArgs& user, FamilyArgs* merged_out) {
    const FamilySpec* spec = find_family(id);
    if (!spec) throw ChartError("unknown family '" + id + "'");
    const FamilyArgs merged = merge_family_args(*spec, user);
    if (merged_out) *merged_out = merged;
    return spec->build(merged);
}

Curv4 fixture_block_weyl(int n, int p, double tau, const PointFrame& frame) {
    if (p < 2 || p > n - 2) throw std::invalid_argument("fixture_block_weyl: p out of range");
    for (int a = 0; a < p; ++a)
        for (int al = p; al < n; ++al)
            if (frame.g(a, al) != 0.0)
                throw std::invalid_argument(
                    "fixture_block_weyl: metric must be block diagonal for the split");

    Sym2 P(n), Q(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i < p && j < p) P(i, j) = frame.g(i, j);
            if (i >= p && j >= p) Q(i, j) = frame.g(i, j);
        }
    Curv4 W = scaled(0.5 * tau / ((p - 1.0) * p), wedge22(P, P));
    W = axpy(0.5 * tau / ((n - p - 1.0) * (n - p)), wedge22(Q, Q), W);
    W = axpy(-tau / (static_cast<double>(p) * (n - p)), wedge22(P, Q), W);
    return W;
}

}  // namespace curv
