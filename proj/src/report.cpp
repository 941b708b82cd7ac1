#include "curv/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace curv {

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

std::string format_num(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

void serialize_into(const Json& j, std::string& out, int depth, int indent) {
    const std::string pad = indent ? std::string(static_cast<size_t>(depth) * indent, ' ') : "";
    const std::string pad1 =
        indent ? std::string(static_cast<size_t>(depth + 1) * indent, ' ') : "";
    const char* nl = indent ? "\n" : "";
    switch (j.kind) {
        case Json::Kind::Null: out += "null"; return;
        case Json::Kind::Bool: out += j.boolean ? "true" : "false"; return;
        case Json::Kind::Num: out += format_num(j.number); return;
        case Json::Kind::Int: out += std::to_string(j.integer); return;
        case Json::Kind::Str: out += '"' + json_escape(j.text) + '"'; return;
        case Json::Kind::Arr: {
            if (j.arr.empty()) { out += "[]"; return; }
            out += "[";
            out += nl;
            for (size_t i = 0; i < j.arr.size(); ++i) {
                out += pad1;
                serialize_into(j.arr[i], out, depth + 1, indent);
                if (i + 1 < j.arr.size()) out += ",";
                out += nl;
            }
            out += pad + "]";
            return;
        }
        case Json::Kind::Obj: {
            if (j.obj.empty()) { out += "{}"; return; }
            out += "{";
            out += nl;
            for (size_t i = 0; i < j.obj.size(); ++i) {
                out += pad1 + '"' + json_escape(j.obj[i].first) + "\": ";
                serialize_into(j.obj[i].second, out, depth + 1, indent);
                if (i + 1 < j.obj.size()) out += ",";
                out += nl;
            }
            out += pad + "}";
            return;
        }
    }
}

LatticeEntry lattice_fit(const std::string& id, const ConditionResult& fit) {
    LatticeEntry e;
    e.id = id;
    e.holds = fit.verdict;
    e.residual = fit.residual;
    e.coefficient = fit.coeffs.empty() ? 0.0 : fit.coeffs.front().second;
    e.note = fit.status;
    return e;
}

template <typename T>
LatticeEntry lattice_zero(const std::string& id, const T& tensor, double scale) {
    LatticeEntry e;
    e.id = id;
    e.residual = frob_norm(tensor) / std::max(1.0, scale);
    e.holds = e.residual < 1e-9;
    return e;
}

}  // namespace

std::string Json::serialize(int indent) const {
    std::string out;
    serialize_into(*this, out, 0, indent);
    if (indent) out += "\n";
    return out;
}

PointReport inspect_point(const MetricChart& chart, const Point& p_in,
                          const InspectOptions& opts) {
    PointReport rep;
    const Point p = complete_point(chart, p_in);
    rep.point = p;

    CurvaturePack pack;
    std::optional<double> chart_alpha;
    if (chart.mode == MetricChart::Mode::Warped) {
        auto [wpack, winv] = warped_components(chart, p);
        rep.warped = winv;
        chart_alpha = winv.tau1;
        // The generic jet pipeline is the primary source; the block pack is
        // carried in the invariants.
        pack = curvature_pack(chart, p);
    } else {
        pack = curvature_pack(chart, p);
    }
    rep.n = pack.frame.n;
    rep.kappa = pack.kappa;
    rep.trS2 = pack.trS2;
    rep.flags = classify_point(pack, chart_alpha, opts.rank_tol_factor);

    const WarpedInvariants* winv = rep.warped ? &*rep.warped : nullptr;
    if (pack.frame.n >= 4) {
        rep.conditions.push_back(fit_pseudosymmetric(pack));
        rep.conditions.push_back(fit_ricci_pseudosymmetric(pack));
        rep.conditions.push_back(fit_weyl_pseudosymmetric(pack, winv));
        rep.conditions.push_back(fit_two_term(pack, winv));
        rep.conditions.push_back(fit_ricci_three_term(pack, winv));
        rep.conditions.push_back(fit_mixed(pack, winv));

        // Condition lattice, strongest conditions last in each column.
        const Sym2 g = Sym2::from_mat(pack.frame.g);
        const double rscale = std::max(1.0, frob_norm(pack.R));
        const Tens6 RR = dot44(pack.R, pack.R, pack.frame);
        const Curv4 RS = dot42(pack.R, pack.S, pack.frame);
        const Tens6 RC = dot44(pack.R, pack.C, pack.frame);
        const Tens6 CR = dot44(pack.C, pack.R, pack.frame);
        const Curv4 CS = dot42(pack.C, pack.S, pack.frame);
        const Tens6 CC = dot44(pack.C, pack.C, pack.frame);
        const Tens6 QgR = tachibana24(g, pack.R);
        const Tens6 QgC = tachibana24(g, pack.C);
        const Curv4 QgS = tachibana22(g, pack.S);

        rep.lattice.push_back(lattice_fit("R.S = L Q(g,S)",
                                          fit_condition4("", "L", RS, QgS)));
        rep.lattice.push_back(lattice_fit("R.R = L Q(g,R)", fit_condition("", "L", RR, QgR)));
        rep.lattice.push_back(lattice_fit("R.C = L Q(g,C)", fit_condition("", "L", RC, QgC)));
        rep.lattice.push_back(lattice_zero("R.S = 0", RS, rscale * frob_norm(pack.S)));
        rep.lattice.push_back(lattice_zero("R.R = 0", RR, rscale * rscale));
        rep.lattice.push_back(lattice_zero("R.C = 0", RC, rscale * rscale));
        rep.lattice.push_back(lattice_fit("C.S = L Q(g,S)",
                                          fit_condition4("", "L", CS, QgS)));
        rep.lattice.push_back(lattice_fit("C.R = L Q(g,R)", fit_condition("", "L", CR, QgR)));
        rep.lattice.push_back(lattice_fit("C.C = L Q(g,C)", fit_condition("", "L", CC, QgC)));
        rep.lattice.push_back(lattice_zero("C.S = 0", CS, rscale * frob_norm(pack.S)));
        rep.lattice.push_back(lattice_zero("C.R = 0", CR, rscale * rscale));
        rep.lattice.push_back(lattice_zero("C.C = 0", CC, rscale * rscale));

        Sym2 dev = pack.S;
        for (int i = 0; i < rep.n; ++i)
            for (int j = 0; j < rep.n; ++j) dev(i, j) -= pack.kappa / rep.n * pack.frame.g(i, j);
        rep.lattice.push_back(lattice_zero("S = (kappa/n) g", dev, frob_norm(pack.S)));
        const Curv4 constcurv = axpy(
            -pack.kappa / (2.0 * (rep.n - 1) * rep.n), wedge22(g, g), pack.R);
        rep.lattice.push_back(lattice_zero("R = const-curv form", constcurv, rscale));
        rep.lattice.push_back(lattice_zero("C = 0", pack.C, rscale));
    }
    return rep;
}

namespace {

Json condition_json(const ConditionResult& c) {
    Json j = Json::object();
    j.set("id", Json::str(c.id));
    j.set("status", Json::str(c.status));
    Json coeffs = Json::object();
    for (const auto& [k, v] : c.coeffs) coeffs.set(k, Json::num(v));
    j.set("coefficients", std::move(coeffs));
    j.set("residual", Json::num(c.residual));
    j.set("verdict", Json::boolean_of(c.verdict));
    if (c.basis_rank >= 0) j.set("basis_rank", Json::integer_of(c.basis_rank));
    if (!c.predicted.empty()) {
        Json pred = Json::object(), delta = Json::object();
        for (const auto& [k, v] : c.predicted) pred.set(k, Json::num(v));
        for (const auto& [k, v] : c.delta) delta.set(k, Json::num(v));
        j.set("predicted", std::move(pred));
        j.set("fitted_vs_predicted", std::move(delta));
    }
    return j;
}

}  // namespace

Json point_report_json(const PointReport& rep) {
    Json j = Json::object();
    Json pt = Json::object();
    for (const auto& [k, v] : rep.point) pt.set(k, Json::num(v));
    j.set("point", std::move(pt));

    Json inv = Json::object();
    inv.set("kappa", Json::num(rep.kappa));
    inv.set("tr_S2", Json::num(rep.trS2));
    if (rep.warped) {
        inv.set("tau1", Json::num(rep.warped->tau1));
        inv.set("rho", Json::num(rep.warped->rho));
        inv.set("phi", Json::num(rep.warped->phi));
        inv.set("DeltaF", Json::num(rep.warped->DeltaF));
        inv.set("Delta1F", Json::num(rep.warped->Delta1F));
    }
    j.set("invariants", std::move(inv));

    if (!rep.oracle_values.empty()) {
        Json oracles = Json::object();
        for (const auto& [k, v] : rep.oracle_values) oracles.set(k, Json::num(v));
        j.set("oracles", std::move(oracles));
    }

    Json cls = Json::object();
    cls.set("flat", Json::boolean_of(rep.flags.flat));
    cls.set("einstein", Json::boolean_of(rep.flags.scan.is_einstein));
    cls.set("ricci_simple", Json::boolean_of(rep.flags.scan.is_ricci_simple));
    cls.set("quasi_einstein", Json::boolean_of(rep.flags.scan.is_quasi_einstein));
    cls.set("two_quasi_einstein", Json::boolean_of(rep.flags.scan.is_2_quasi_einstein));
    cls.set("min_rank", Json::integer_of(rep.flags.scan.min_rank));
    cls.set("best_alpha", Json::num(rep.flags.scan.best_alpha));
    Json scan = Json::array();
    for (const auto& c : rep.flags.scan.candidates) {
        Json e = Json::object();
        e.set("alpha", Json::num(c.alpha));
        e.set("rank", Json::integer_of(c.rank));
        e.set("sigma_next", Json::num(c.sigma_next));
        scan.push(std::move(e));
    }
    cls.set("rank_scan", std::move(scan));

    Json pe = Json::object();
    pe.set("lambda", Json::num(rep.flags.partial.lambda));
    pe.set("mu", Json::num(rep.flags.partial.mu));
    pe.set("residual", Json::num(rep.flags.partial.residual));
    pe.set("verdict", Json::boolean_of(rep.flags.partial.verdict));
    cls.set("partially_einstein", std::move(pe));

    Json rt = Json::object();
    rt.set("status", Json::str(rep.flags.roter.status));
    rt.set("phi1", Json::num(rep.flags.roter.phi1));
    rt.set("mu1", Json::num(rep.flags.roter.mu1));
    rt.set("eta1", Json::num(rep.flags.roter.eta1));
    rt.set("residual", Json::num(rep.flags.roter.residual));
    rt.set("verdict", Json::boolean_of(rep.flags.roter.verdict));
    cls.set("roter", std::move(rt));

    Json gr = Json::object();
    gr.set("status", Json::str(rep.flags.gen_roter.status));
    Json gcoef = Json::array();
    for (double v : rep.flags.gen_roter.coeff) gcoef.push(Json::num(v));
    gr.set("coefficients", std::move(gcoef));
    gr.set("residual", Json::num(rep.flags.gen_roter.residual));
    gr.set("verdict", Json::boolean_of(rep.flags.gen_roter.verdict));
    gr.set("basis_rank", Json::integer_of(rep.flags.gen_roter.basis_rank));
    cls.set("generalized_roter", std::move(gr));

    Json ec = Json::object();
    ec.set("degenerate", Json::boolean_of(rep.flags.e_c_degenerate));
    ec.set("lambda", Json::num(rep.flags.e_c.lambda));
    ec.set("residual", Json::num(rep.flags.e_c.residual));
    cls.set("e_proportional_to_c", std::move(ec));
    j.set("classification", std::move(cls));

    Json conds = Json::array();
    for (const auto& c : rep.conditions) conds.push(condition_json(c));
    j.set("conditions", std::move(conds));

    Json lat = Json::array();
    for (const auto& e : rep.lattice) {
        Json le = Json::object();
        le.set("id", Json::str(e.id));
        le.set("holds", Json::boolean_of(e.holds));
        le.set("residual", Json::num(e.residual));
        le.set("coefficient", Json::num(e.coefficient));
        if (!e.note.empty()) le.set("note", Json::str(e.note));
        lat.push(std::move(le));
    }
    j.set("lattice", std::move(lat));
    return j;
}

std::string point_report_table(const PointReport& rep) {
    std::ostringstream os;
    char buf[160];

    os << "point:";
    for (const auto& [k, v] : rep.point) {
        std::snprintf(buf, sizeof buf, " %s=%.6g", k.c_str(), v);
        os << buf;
    }
    os << "\n\ninvariants\n";
    std::snprintf(buf, sizeof buf, "  kappa   = %.12e\n  tr(S^2) = %.12e\n", rep.kappa,
                  rep.trS2);
    os << buf;
    if (rep.warped) {
        std::snprintf(buf, sizeof buf,
                      "  tau1    = %.12e\n  rho     = %.12e\n  phi     = %.12e\n",
                      rep.warped->tau1, rep.warped->rho, rep.warped->phi);
        os << buf;
    }
    for (const auto& [k, v] : rep.oracle_values) {
        std::snprintf(buf, sizeof buf, "  oracle %-12s = %.12e\n", k.c_str(), v);
        os << buf;
    }

    os << "\nclassification\n";
    os << "  flat               : " << (rep.flags.flat ? "yes" : "no") << "\n";
    os << "  einstein           : " << (rep.flags.scan.is_einstein ? "yes" : "no") << "\n";
    os << "  ricci-simple       : " << (rep.flags.scan.is_ricci_simple ? "yes" : "no") << "\n";
    os << "  quasi-einstein     : " << (rep.flags.scan.is_quasi_einstein ? "yes" : "no");
    std::snprintf(buf, sizeof buf, "  (min rank %d at alpha = %.9g)\n",
                  rep.flags.scan.min_rank, rep.flags.scan.best_alpha);
    os << buf;
    os << "  2-quasi-einstein   : " << (rep.flags.scan.is_2_quasi_einstein ? "yes" : "no")
       << "\n";
    std::snprintf(buf, sizeof buf,
                  "  partially-einstein : %s (lambda = %.9g, mu = %.9g, resid %.3e)\n",
                  rep.flags.partial.verdict ? "yes" : "no", rep.flags.partial.lambda,
                  rep.flags.partial.mu, rep.flags.partial.residual);
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "  roter              : %s [%s] (phi1 = %.9g, mu1 = %.9g, eta1 = %.9g)\n",
                  rep.flags.roter.verdict ? "yes" : "no", rep.flags.roter.status.c_str(),
                  rep.flags.roter.phi1, rep.flags.roter.mu1, rep.flags.roter.eta1);
    os << buf;
    std::snprintf(buf, sizeof buf, "  generalized roter  : %s [%s] (basis rank %d)\n",
                  rep.flags.gen_roter.verdict ? "yes" : "no",
                  rep.flags.gen_roter.status.c_str(), rep.flags.gen_roter.basis_rank);
    os << buf;
    if (!rep.flags.e_c_degenerate) {
        std::snprintf(buf, sizeof buf, "  E = lambda C       : lambda = %.12e (resid %.3e)\n",
                      rep.flags.e_c.lambda, rep.flags.e_c.residual);
        os << buf;
    } else {
        os << "  E = lambda C       : degenerate\n";
    }

    if (!rep.conditions.empty()) {
        os << "\nconditions\n";
        for (const auto& c : rep.conditions) {
            std::snprintf(buf, sizeof buf, "  %-34s %-5s resid %.3e [%s]", c.id.c_str(),
                          c.verdict ? "holds" : "fails", c.residual, c.status.c_str());
            os << buf;
            for (const auto& [k, v] : c.coeffs) {
                std::snprintf(buf, sizeof buf, " %s=%.9g", k.c_str(), v);
                os << buf;
            }
            for (const auto& [k, v] : c.delta) {
                std::snprintf(buf, sizeof buf, " d(%s)=%.2e", k.c_str(), v);
                os << buf;
            }
            os << "\n";
        }
    }

    if (!rep.lattice.empty()) {
        os << "\ncondition lattice\n";
        for (const auto& e : rep.lattice) {
            std::snprintf(buf, sizeof buf, "  [%c] %-22s resid %.3e", e.holds ? 'x' : ' ',
                          e.id.c_str(), e.residual);
            os << buf;
            if (e.coefficient != 0.0) {
                std::snprintf(buf, sizeof buf, "  L = %.9g", e.coefficient);
                os << buf;
            }
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace curv
