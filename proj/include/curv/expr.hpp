#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace curv {

// Arithmetic expression language for metric components and closed-form
// invariants. Precedence: ^  >  unary minus  >  * /  >  + -, with ^
// right-associative. No implicit multiplication.
struct SourceSpan {
    int begin = 0;  // 0-based byte offsets into the source text
    int end = 0;
};

enum class ExprKind { Number, Ident, Neg, Add, Sub, Mul, Div, Pow, Call };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprKind kind;
    double number = 0.0;       // Number
    std::string name;          // Ident, Call
    std::vector<ExprPtr> args; // children
    SourceSpan span;
};

struct Expr {
    ExprPtr root;
    std::string source;  // original text (kept for diagnostics)

    bool valid() const { return root != nullptr; }
};

struct ParseError {
    std::string message;
    int offset = 0;  // 0-based byte offset
};

struct ParseResult {
    std::optional<Expr> ast;
    ParseError error;
    bool ok() const { return ast.has_value(); }
};

ParseResult parse_expression(std::string_view source);

// Throwing convenience for trusted (built-in) formulas.
Expr parse_expression_or_throw(std::string_view source);

// Pretty-print; re-parsing the result yields a structurally identical tree.
std::string to_string(const Expr& e);
bool structurally_equal(const Expr& a, const Expr& b);

// Free identifiers of the expression.
std::set<std::string> collect_idents(const Expr& e);

// Node builders for programmatic construction (chart assembly).
Expr expr_number(double v);
Expr expr_ident(const std::string& name);
Expr expr_mul(const Expr& a, const Expr& b);

class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& msg, SourceSpan s) : std::runtime_error(msg), span(s) {}
    SourceSpan span;
};

bool is_known_function(const std::string& name);

// --- ring hooks -------------------------------------------------------
// Evaluation is generic over a commutative ring supplying +,-,*,/ and the
// analytic functions. The hooks below are the double instance; Jet2
// provides its own overloads (found through ADL).

template <typename Ring>
Ring ring_constant(double v);

template <>
inline double ring_constant<double>(double v) { return v; }

inline double ring_value_part(double x) { return x; }
inline bool ring_is_constant(double) { return true; }

inline double ring_pow_int(double x, long k) {
    double r = 1.0, base = x;
    unsigned long e = k < 0 ? -static_cast<unsigned long>(k) : static_cast<unsigned long>(k);
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return k < 0 ? 1.0 / r : r;
}

// --- evaluation -------------------------------------------------------

template <typename Ring>
Ring pow_checked(const Ring& base, const Ring& expo, SourceSpan span) {
    using std::exp;
    using std::log;
    const double ev = ring_value_part(expo);
    const double rounded = std::nearbyint(ev);
    const bool integral =
        ring_is_constant(expo) && std::fabs(ev - rounded) < 1e-12 && std::fabs(rounded) <= 1e6;
    if (integral) {
        const long k = static_cast<long>(rounded);
        if (k < 0 && ring_value_part(base) == 0.0)
            throw EvalError("zero raised to a negative power", span);
        return ring_pow_int(base, k);
    }
    if (ring_value_part(base) <= 0.0)
        throw EvalError("non-integer power of a non-positive base", span);
    return exp(expo * log(base));
}

template <typename Ring>
Ring apply_call(const std::string& name, const std::vector<Ring>& args, SourceSpan span) {
    using std::abs;
    using std::cos;
    using std::cosh;
    using std::exp;
    using std::log;
    using std::sin;
    using std::sinh;
    using std::sqrt;
    using std::tan;
    if (name == "pow") return pow_checked(args[0], args[1], span);
    const Ring& x = args[0];
    if (name == "exp") return exp(x);
    if (name == "ln") {
        if (ring_value_part(x) <= 0.0) throw EvalError("ln of non-positive value", span);
        return log(x);
    }
    if (name == "sqrt") {
        if (ring_value_part(x) < 0.0) throw EvalError("sqrt of negative value", span);
        return sqrt(x);
    }
    if (name == "sin") return sin(x);
    if (name == "cos") return cos(x);
    if (name == "tan") return tan(x);
    if (name == "sinh") return sinh(x);
    if (name == "cosh") return cosh(x);
    if (name == "abs") return abs(x);
    throw EvalError("unknown function '" + name + "'", span);
}

template <typename Ring>
Ring eval(const ExprPtr& node, const std::map<std::string, Ring>& bindings) {
    switch (node->kind) {
        case ExprKind::Number:
            return ring_constant<Ring>(node->number);
        case ExprKind::Ident: {
            auto it = bindings.find(node->name);
            if (it == bindings.end())
                throw EvalError("unbound identifier '" + node->name + "'", node->span);
            return it->second;
        }
        case ExprKind::Neg:
            return -eval(node->args[0], bindings);
        case ExprKind::Add:
            return eval(node->args[0], bindings) + eval(node->args[1], bindings);
        case ExprKind::Sub:
            return eval(node->args[0], bindings) - eval(node->args[1], bindings);
        case ExprKind::Mul:
            return eval(node->args[0], bindings) * eval(node->args[1], bindings);
        case ExprKind::Div: {
            Ring num = eval(node->args[0], bindings);
            Ring den = eval(node->args[1], bindings);
            if (ring_value_part(den) == 0.0)
                throw EvalError("division by zero", node->args[1]->span);
            return num / den;
        }
        case ExprKind::Pow:
            return pow_checked(eval(node->args[0], bindings), eval(node->args[1], bindings),
                               node->span);
        case ExprKind::Call: {
            std::vector<Ring> args;
            args.reserve(node->args.size());
            for (const auto& a : node->args) args.push_back(eval(a, bindings));
            return apply_call(node->name, args, node->span);
        }
    }
    throw EvalError("corrupt expression node", node->span);
}

template <typename Ring>
Ring eval(const Expr& e, const std::map<std::string, Ring>& bindings) {
    return eval<Ring>(e.root, bindings);
}

}  // namespace curv
