#include "curv/expr.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace curv {

namespace {

const std::array<std::pair<const char*, int>, 10> kFunctions = {{
    {"exp", 1}, {"ln", 1}, {"sqrt", 1}, {"sin", 1}, {"cos", 1},
    {"tan", 1}, {"sinh", 1}, {"cosh", 1}, {"abs", 1}, {"pow", 2},
}};

int function_arity(const std::string& name) {
    for (const auto& [fn, arity] : kFunctions)
        if (name == fn) return arity;
    return -1;
}

struct ParseFail {
    std::string message;
    int offset;
};

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    ExprPtr run() {
        skip_ws();
        if (pos_ >= src_.size()) fail("empty expression", 0);
        ExprPtr e = parse_sum();
        skip_ws();
        if (pos_ < src_.size()) fail("unexpected trailing input", static_cast<int>(pos_));
        return e;
    }

private:
    std::string_view src_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg, int off) { throw ParseFail{msg, off}; }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    ExprPtr binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs) {
        auto n = std::make_shared<ExprNode>();
        n->kind = kind;
        n->args = {std::move(lhs), std::move(rhs)};
        n->span = {n->args[0]->span.begin, n->args[1]->span.end};
        return n;
    }

    ExprPtr parse_sum() {
        ExprPtr lhs = parse_term();
        for (;;) {
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            lhs = binary(c == '+' ? ExprKind::Add : ExprKind::Sub, lhs, parse_term());
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_unary();
        for (;;) {
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos_;
            lhs = binary(c == '*' ? ExprKind::Mul : ExprKind::Div, lhs, parse_unary());
        }
    }

    // Unary minus binds looser than ^: -x^2 parses as -(x^2).
    ExprPtr parse_unary() {
        if (peek() == '-') {
            const int start = static_cast<int>(pos_);
            ++pos_;
            ExprPtr inner = parse_unary();
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprKind::Neg;
            n->args = {inner};
            n->span = {start, inner->span.end};
            return n;
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (peek() == '^') {
            ++pos_;
            // Right-associative; the exponent admits unary minus (r^-2).
            ExprPtr expo = parse_unary();
            return binary(ExprKind::Pow, base, expo);
        }
        return base;
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos_ >= src_.size()) fail("expected operand at end of input", static_cast<int>(pos_));
        const char c = src_[pos_];
        const int start = static_cast<int>(pos_);

        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_sum();
            if (peek() != ')') fail("unbalanced '(': expected ')'", static_cast<int>(pos_));
            ++pos_;
            return e;
        }

        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t end = pos_;
            while (end < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
                ++end;
            std::string name(src_.substr(pos_, end - pos_));
            pos_ = end;
            if (peek() == '(') {
                const int arity = function_arity(name);
                if (arity < 0) fail("unknown function '" + name + "'", start);
                ++pos_;  // '('
                std::vector<ExprPtr> args;
                args.push_back(parse_sum());
                while (peek() == ',') {
                    ++pos_;
                    args.push_back(parse_sum());
                }
                if (peek() != ')') fail("expected ')' in call", static_cast<int>(pos_));
                ++pos_;
                if (static_cast<int>(args.size()) != arity)
                    fail("function '" + name + "' expects " + std::to_string(arity) +
                             " argument(s)",
                         start);
                auto n = std::make_shared<ExprNode>();
                n->kind = ExprKind::Call;
                n->name = std::move(name);
                n->args = std::move(args);
                n->span = {start, static_cast<int>(pos_)};
                return n;
            }
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprKind::Ident;
            n->name = std::move(name);
            n->span = {start, static_cast<int>(pos_)};
            return n;
        }

        fail(std::string("unexpected character '") + c + "'", start);
    }

    ExprPtr parse_number() {
        const int start = static_cast<int>(pos_);
        size_t end = pos_;
        while (end < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[end])) || src_[end] == '.'))
            ++end;
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            size_t e2 = end + 1;
            if (e2 < src_.size() && (src_[e2] == '+' || src_[e2] == '-')) ++e2;
            size_t digits = e2;
            while (digits < src_.size() && std::isdigit(static_cast<unsigned char>(src_[digits])))
                ++digits;
            if (digits > e2) end = digits;
        }
        std::string text(src_.substr(pos_, end - pos_));
        char* parse_end = nullptr;
        const double v = std::strtod(text.c_str(), &parse_end);
        if (parse_end != text.c_str() + text.size())
            fail("malformed number '" + text + "'", start);
        pos_ = end;
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprKind::Number;
        n->number = v;
        n->span = {start, static_cast<int>(pos_)};
        return n;
    }
};

int precedence_of(ExprKind k) {
    switch (k) {
        case ExprKind::Add:
        case ExprKind::Sub: return 1;
        case ExprKind::Mul:
        case ExprKind::Div: return 2;
        case ExprKind::Neg: return 3;
        case ExprKind::Pow: return 4;
        default: return 5;  // atoms
    }
}

void print_node(const ExprPtr& n, std::string& out);

void print_child(const ExprPtr& child, int parent_prec, bool needs_parens_on_equal,
                 std::string& out) {
    const int cp = precedence_of(child->kind);
    const bool parens = cp < parent_prec || (cp == parent_prec && needs_parens_on_equal);
    if (parens) out += '(';
    print_node(child, out);
    if (parens) out += ')';
}

void print_node(const ExprPtr& n, std::string& out) {
    switch (n->kind) {
        case ExprKind::Number: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", n->number);
            out += buf;
            return;
        }
        case ExprKind::Ident:
            out += n->name;
            return;
        case ExprKind::Neg:
            out += '-';
            print_child(n->args[0], precedence_of(ExprKind::Neg), false, out);
            return;
        case ExprKind::Add:
        case ExprKind::Sub: {
            const int p = precedence_of(n->kind);
            print_child(n->args[0], p, false, out);
            out += (n->kind == ExprKind::Add) ? " + " : " - ";
            print_child(n->args[1], p, true, out);
            return;
        }
        case ExprKind::Mul:
        case ExprKind::Div: {
            const int p = precedence_of(n->kind);
            print_child(n->args[0], p, false, out);
            out += (n->kind == ExprKind::Mul) ? "*" : "/";
            print_child(n->args[1], p, true, out);
            return;
        }
        case ExprKind::Pow: {
            const int p = precedence_of(ExprKind::Pow);
            // Base parenthesized on equal precedence (right-assoc), and the
            // exponent printed verbatim (it may be a unary minus).
            print_child(n->args[0], p, true, out);
            out += '^';
            print_child(n->args[1], p - 1, false, out);
            return;
        }
        case ExprKind::Call: {
            out += n->name;
            out += '(';
            for (size_t i = 0; i < n->args.size(); ++i) {
                if (i) out += ", ";
                print_node(n->args[i], out);
            }
            out += ')';
            return;
        }
    }
}

bool nodes_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind) return false;
    if (a->kind == ExprKind::Number) return a->number == b->number;
    if (a->name != b->name) return false;
    if (a->args.size() != b->args.size()) return false;
    for (size_t i = 0; i < a->args.size(); ++i)
        if (!nodes_equal(a->args[i], b->args[i])) return false;
    return true;
}

void collect(const ExprPtr& n, std::set<std::string>& out) {
    if (n->kind == ExprKind::Ident) out.insert(n->name);
    for (const auto& a : n->args) collect(a, out);
}

}  // namespace

bool is_known_function(const std::string& name) { return function_arity(name) >= 0; }

ParseResult parse_expression(std::string_view source) {
    ParseResult result;
    try {
        Parser p(source);
        Expr e;
        e.root = p.run();
        e.source = std::string(source);
        result.ast = std::move(e);
    } catch (const ParseFail& f) {
        result.error = {f.message, f.offset};
    }
    return result;
}

Expr parse_expression_or_throw(std::string_view source) {
    ParseResult r = parse_expression(source);
    if (!r.ok())
        throw std::runtime_error("expression parse error at offset " +
                                 std::to_string(r.error.offset) + ": " + r.error.message +
                                 " in '" + std::string(source) + "'");
    return *r.ast;
}

std::string to_string(const Expr& e) {
    std::string out;
    print_node(e.root, out);
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) { return nodes_equal(a.root, b.root); }

std::set<std::string> collect_idents(const Expr& e) {
    std::set<std::string> out;
    collect(e.root, out);
    return out;
}

Expr expr_number(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Number;
    n->number = v == 0.0 ? 0.0 : std::fabs(v);
    Expr e;
    e.root = n;
    if (v < 0.0) {  // print/parse round trips keep the Neg node explicit
        auto neg = std::make_shared<ExprNode>();
        neg->kind = ExprKind::Neg;
        neg->args = {e.root};
        e.root = neg;
    }
    return e;
}

Expr expr_ident(const std::string& name) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Ident;
    n->name = name;
    Expr e;
    e.root = n;
    return e;
}

Expr expr_mul(const Expr& a, const Expr& b) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Mul;
    n->args = {a.root, b.root};
    Expr e;
    e.root = n;
    return e;
}

}  // namespace curv
