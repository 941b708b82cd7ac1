#include "doctest.h"

#include <cmath>
#include <random>

#include "curv/expr.hpp"
#include "curv/jet.hpp"

using namespace curv;

namespace {

Expr parse_ok(const std::string& s) {
    ParseResult r = parse_expression(s);
    REQUIRE_MESSAGE(r.ok(), "parse of '" << s << "' failed: " << r.error.message << " at "
                                         << r.error.offset);
    return *r.ast;
}

double eval_d(const std::string& s, const std::map<std::string, double>& b) {
    return eval<double>(parse_ok(s), b);
}

}  // namespace

TEST_CASE("precedence-forced shapes") {
    // 1 - 2*m/r parses as 1 - ((2*m)/r)
    Expr e = parse_ok("1 - 2*m/r");
    CHECK(e.root->kind == ExprKind::Sub);
    CHECK(e.root->args[1]->kind == ExprKind::Div);
    CHECK(e.root->args[1]->args[0]->kind == ExprKind::Mul);

    Expr p = parse_ok("r^2");
    CHECK(p.root->kind == ExprKind::Pow);
    CHECK(p.root->args[0]->name == "r");
    CHECK(p.root->args[1]->number == 2.0);

    // unary minus binds looser than ^
    Expr m = parse_ok("-(1-b/r)^s");
    CHECK(m.root->kind == ExprKind::Neg);
    CHECK(m.root->args[0]->kind == ExprKind::Pow);
    CHECK(m.root->args[0]->args[0]->kind == ExprKind::Sub);

    Expr m2 = parse_ok("-x^2");
    CHECK(m2.root->kind == ExprKind::Neg);
    CHECK(m2.root->args[0]->kind == ExprKind::Pow);

    // ^ right-associative, - left-associative
    Expr r = parse_ok("2^3^2");
    CHECK(r.root->args[1]->kind == ExprKind::Pow);
    CHECK(eval<double>(r, {}) == doctest::Approx(512.0));
    Expr l = parse_ok("10-3-2");
    CHECK(eval<double>(l, {}) == doctest::Approx(5.0));
}

TEST_CASE("parser totality and positioned errors") {
    CHECK_FALSE(parse_expression("").ok());
    CHECK_FALSE(parse_expression("1 +").ok());
    CHECK_FALSE(parse_expression("(1+2").ok());
    CHECK_FALSE(parse_expression("2r").ok());  // no implicit multiplication
    CHECK_FALSE(parse_expression("foo(2)").ok());
    CHECK_FALSE(parse_expression("pow(2)").ok());
    CHECK_FALSE(parse_expression("1 $ 2").ok());

    ParseResult r = parse_expression("1 + @");
    REQUIRE_FALSE(r.ok());
    CHECK(r.error.offset == 4);
}

TEST_CASE("evaluation over doubles") {
    CHECK(eval_d("1-2*m/r", {{"m", 1.0}, {"r", 2.0}}) == doctest::Approx(0.0));
    CHECK(eval_d("exp(2*psi)", {{"psi", 0.0}}) == doctest::Approx(1.0));
    CHECK(eval_d("pow(2, 10)", {}) == doctest::Approx(1024.0));
    CHECK(eval_d("(-2)^3", {}) == doctest::Approx(-8.0));       // integer exponent, negative base
    CHECK(eval_d("4^0.5", {}) == doctest::Approx(2.0));
    CHECK(eval_d("sin(0) + cos(0) + sinh(0) + cosh(0) + tan(0)", {}) == doctest::Approx(2.0));
    CHECK(eval_d("abs(-3)", {}) == doctest::Approx(3.0));
    CHECK(eval_d("sqrt(2)*sqrt(2)", {}) == doctest::Approx(2.0));

    CHECK_THROWS_AS(eval_d("ln(0)", {}), EvalError);
    CHECK_THROWS_AS(eval_d("1/x", {{"x", 0.0}}), EvalError);
    CHECK_THROWS_AS(eval_d("(-2)^0.5", {}), EvalError);
    CHECK_THROWS_AS(eval_d("y + 1", {{"x", 0.0}}), EvalError);  // unbound identifier
}

TEST_CASE("domain error carries the offending subexpression span") {
    Expr e = parse_ok("1 + ln(x)");
    try {
        eval<double>(e, {{"x", -1.0}});
        FAIL("expected EvalError");
    } catch (const EvalError& err) {
        CHECK(err.span.begin == 4);
        CHECK(err.span.end == 9);
    }
}

TEST_CASE("evaluation over jets matches double evaluation exactly") {
    const std::vector<std::string> exprs = {
        "1 - 2*m/r", "r^2*sin(theta)^2", "exp(2*psi)/r", "(1-b/r)^0.5",
        "sqrt(r)*cosh(m)*tan(psi)"};
    std::map<std::string, double> vals = {
        {"m", 0.3}, {"r", 2.5}, {"theta", 1.1}, {"psi", 0.2}, {"b", 1.0}};
    const std::vector<std::string> coords = {"m", "r", "theta", "psi", "b"};
    for (const auto& s : exprs) {
        Expr e = parse_ok(s);
        std::map<std::string, Jet2> jb;
        int idx = 0;
        for (const auto& c : coords) jb[c] = Jet2::variable(5, idx++, vals[c]);
        const Jet2 jv = eval<Jet2>(e, jb);
        const double dv = eval<double>(e, vals);
        CHECK(jv.value() == dv);  // exact agreement of the value component
    }
}

TEST_CASE("jet evaluation differentiates polynomials exactly") {
    // r^2 seeded at r = 3
    Expr e = parse_ok("r^2");
    std::map<std::string, Jet2> b = {{"r", Jet2::variable(1, 0, 3.0)}};
    const Jet2 j = eval<Jet2>(e, b);
    CHECK(j.value() == doctest::Approx(9.0));
    CHECK(j.grad(0) == doctest::Approx(6.0));
    CHECK(j.hess(0, 0) == doctest::Approx(2.0));

    // random polynomials up to degree 4 in 3 variables vs a symbolic oracle:
    // p = sum c_abc x^a y^b z^c, gradient/Hessian computed from coefficients
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        double coeff[5][5][5] = {};
        std::string text;
        for (int a = 0; a <= 4; ++a)
            for (int bb = 0; a + bb <= 4; ++bb)
                for (int c = 0; a + bb + c <= 4; ++c) {
                    coeff[a][bb][c] = U(rng);
                    char buf[96];
                    std::snprintf(buf, sizeof buf, "%s(%.17g)*x^%d*y^%d*z^%d",
                                  text.empty() ? "" : " + ", coeff[a][bb][c], a, bb, c);
                    text += buf;
                }
        const double x = U(rng), y = U(rng), z = U(rng);
        Expr p = parse_ok(text);
        std::map<std::string, Jet2> jb = {{"x", Jet2::variable(3, 0, x)},
                                          {"y", Jet2::variable(3, 1, y)},
                                          {"z", Jet2::variable(3, 2, z)}};
        const Jet2 jv = eval<Jet2>(p, jb);

        auto mono = [&](int a, int bb, int c) {
            return std::pow(x, a) * std::pow(y, bb) * std::pow(z, c);
        };
        double v = 0, gx = 0, gy = 0, gz = 0, hxx = 0, hyy = 0, hzz = 0, hxy = 0, hxz = 0,
               hyz = 0;
        for (int a = 0; a <= 4; ++a)
            for (int bb = 0; a + bb <= 4; ++bb)
                for (int c = 0; a + bb + c <= 4; ++c) {
                    const double k = coeff[a][bb][c];
                    v += k * mono(a, bb, c);
                    if (a > 0) gx += k * a * mono(a - 1, bb, c);
                    if (bb > 0) gy += k * bb * mono(a, bb - 1, c);
                    if (c > 0) gz += k * c * mono(a, bb, c - 1);
                    if (a > 1) hxx += k * a * (a - 1) * mono(a - 2, bb, c);
                    if (bb > 1) hyy += k * bb * (bb - 1) * mono(a, bb - 2, c);
                    if (c > 1) hzz += k * c * (c - 1) * mono(a, bb, c - 2);
                    if (a > 0 && bb > 0) hxy += k * a * bb * mono(a - 1, bb - 1, c);
                    if (a > 0 && c > 0) hxz += k * a * c * mono(a - 1, bb, c - 1);
                    if (bb > 0 && c > 0) hyz += k * bb * c * mono(a, bb - 1, c - 1);
                }
        const double tol = 1e-13;
        CHECK(std::fabs(jv.value() - v) <= tol * std::max(1.0, std::fabs(v)));
        CHECK(std::fabs(jv.grad(0) - gx) <= tol * std::max(1.0, std::fabs(gx)));
        CHECK(std::fabs(jv.grad(1) - gy) <= tol * std::max(1.0, std::fabs(gy)));
        CHECK(std::fabs(jv.grad(2) - gz) <= tol * std::max(1.0, std::fabs(gz)));
        CHECK(std::fabs(jv.hess(0, 0) - hxx) <= tol * std::max(1.0, std::fabs(hxx)));
        CHECK(std::fabs(jv.hess(1, 1) - hyy) <= tol * std::max(1.0, std::fabs(hyy)));
        CHECK(std::fabs(jv.hess(2, 2) - hzz) <= tol * std::max(1.0, std::fabs(hzz)));
        CHECK(std::fabs(jv.hess(0, 1) - hxy) <= tol * std::max(1.0, std::fabs(hxy)));
        CHECK(std::fabs(jv.hess(0, 2) - hxz) <= tol * std::max(1.0, std::fabs(hxz)));
        CHECK(std::fabs(jv.hess(1, 2) - hyz) <= tol * std::max(1.0, std::fabs(hyz)));
    }
}

namespace {

Expr random_ast(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> kind(0, depth <= 0 ? 1 : 7);
    std::uniform_real_distribution<double> U(0.0, 4.0);
    const char* idents[] = {"x", "y", "z", "r", "theta_1"};
    switch (kind(rng)) {
        case 0: return expr_number(U(rng));
        case 1: return expr_ident(idents[rng() % 5]);
        default: break;
    }
    Expr a = random_ast(rng, depth - 1);
    Expr b = random_ast(rng, depth - 1);
    auto n = std::make_shared<ExprNode>();
    switch (kind(rng) % 6) {
        case 0: n->kind = ExprKind::Add; n->args = {a.root, b.root}; break;
        case 1: n->kind = ExprKind::Sub; n->args = {a.root, b.root}; break;
        case 2: n->kind = ExprKind::Mul; n->args = {a.root, b.root}; break;
        case 3: n->kind = ExprKind::Div; n->args = {a.root, b.root}; break;
        case 4: n->kind = ExprKind::Pow; n->args = {a.root, b.root}; break;
        default:
            n->kind = (rng() % 2) ? ExprKind::Neg : ExprKind::Call;
            if (n->kind == ExprKind::Neg) {
                n->args = {a.root};
            } else {
                const char* fns[] = {"exp", "ln", "sqrt", "sin", "cos", "abs"};
                n->name = fns[rng() % 6];
                n->args = {a.root};
            }
            break;
    }
    Expr e;
    e.root = n;
    return e;
}

}  // namespace

TEST_CASE("round-trip property: print then re-parse is structurally identical") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 500; ++i) {
        Expr e = random_ast(rng, 5);
        const std::string printed = to_string(e);
        ParseResult r = parse_expression(printed);
        REQUIRE_MESSAGE(r.ok(), "re-parse failed for: " << printed);
        CHECK_MESSAGE(structurally_equal(e, *r.ast), "round trip changed: " << printed);
    }
}

TEST_CASE("collect_idents sees every free identifier") {
    Expr e = parse_ok("a*sin(b) + c^d - exp(a)");
    const auto ids = collect_idents(e);
    CHECK(ids == std::set<std::string>{"a", "b", "c", "d"});
}
