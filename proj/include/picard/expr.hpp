// Arithmetic expressions for analytic distances and self-maps.
//
// Grammar (standard precedence, left associative):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | primary
//   primary:= number | var | abs(e) | min(e1,e2) | max(e1,e2) | '(' expr ')'
//
// Variables are resolved against a caller-supplied context at parse time, so
// evaluation is a plain walk over an index-resolved tree.  Division by a
// literal zero is rejected while parsing; runtime division follows IEEE
// semantics and never throws.

#ifndef PICARD_EXPR_HPP
#define PICARD_EXPR_HPP

#include <charconv>
#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace picard {

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t at)
        : std::runtime_error(msg + " (at column " + std::to_string(at + 1) + ")"), pos(at) {}
};

class Expr {
public:
    enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Abs, Min, Max };

    Kind kind() const { return kind_; }
    const std::vector<std::string>& context() const { return context_; }

    double eval(std::span<const double> vars) const { return node_eval(*root_, vars); }
    double eval(double x) const { return eval(std::span<const double>(&x, 1)); }
    double eval(double a, double b) const {
        double v[2] = {a, b};
        return eval(std::span<const double>(v, 2));
    }

    std::string str() const { return node_print(*root_, 0); }

    friend bool operator==(const Expr& a, const Expr& b) {
        return node_eq(*a.root_, *b.root_);
    }
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

    static Expr parse(std::string_view text, std::vector<std::string> context);

private:
    struct Node {
        Kind kind;
        double number = 0;
        std::size_t var = 0;
        std::string var_name;
        std::unique_ptr<Node> a, b;
    };

    std::shared_ptr<const Node> root_;  // tree shared between copies
    std::vector<std::string> context_;
    Kind kind_ = Kind::Number;

    static double node_eval(const Node& n, std::span<const double> vars) {
        switch (n.kind) {
            case Kind::Number: return n.number;
            case Kind::Var: return n.var < vars.size() ? vars[n.var] : 0.0;
            case Kind::Neg: return -node_eval(*n.a, vars);
            case Kind::Add: return node_eval(*n.a, vars) + node_eval(*n.b, vars);
            case Kind::Sub: return node_eval(*n.a, vars) - node_eval(*n.b, vars);
            case Kind::Mul: return node_eval(*n.a, vars) * node_eval(*n.b, vars);
            case Kind::Div: return node_eval(*n.a, vars) / node_eval(*n.b, vars);
            case Kind::Abs: return std::fabs(node_eval(*n.a, vars));
            case Kind::Min: return std::fmin(node_eval(*n.a, vars), node_eval(*n.b, vars));
            case Kind::Max: return std::fmax(node_eval(*n.a, vars), node_eval(*n.b, vars));
        }
        return 0;
    }

    static int level(Kind k) {
        switch (k) {
            case Kind::Add:
            case Kind::Sub: return 1;
            case Kind::Mul:
            case Kind::Div: return 2;
            case Kind::Neg: return 3;
            default: return 4;
        }
    }

    static std::string print_number(double v) {
        char buf[400];
        auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed);
        return std::string(buf, res.ptr);
    }

    static std::string node_print(const Node& n, int min_level) {
        std::string s;
        switch (n.kind) {
            case Kind::Number: s = print_number(n.number); break;
            case Kind::Var: s = n.var_name; break;
            case Kind::Neg: s = "-" + node_print(*n.a, level(Kind::Neg)); break;
            case Kind::Add: s = node_print(*n.a, 1) + "+" + node_print(*n.b, 2); break;
            case Kind::Sub: s = node_print(*n.a, 1) + "-" + node_print(*n.b, 2); break;
            case Kind::Mul: s = node_print(*n.a, 2) + "*" + node_print(*n.b, 3); break;
            case Kind::Div: s = node_print(*n.a, 2) + "/" + node_print(*n.b, 3); break;
            case Kind::Abs: s = "abs(" + node_print(*n.a, 0) + ")"; break;
            case Kind::Min: s = "min(" + node_print(*n.a, 0) + "," + node_print(*n.b, 0) + ")"; break;
            case Kind::Max: s = "max(" + node_print(*n.a, 0) + "," + node_print(*n.b, 0) + ")"; break;
        }
        if (level(n.kind) < min_level) return "(" + s + ")";
        return s;
    }

    static bool node_eq(const Node& x, const Node& y) {
        if (x.kind != y.kind) return false;
        switch (x.kind) {
            case Kind::Number: return x.number == y.number;
            case Kind::Var: return x.var == y.var && x.var_name == y.var_name;
            case Kind::Neg:
            case Kind::Abs: return node_eq(*x.a, *y.a);
            default: return node_eq(*x.a, *y.a) && node_eq(*x.b, *y.b);
        }
    }

    friend class ExprParser;
};

class ExprParser {
public:
    ExprParser(std::string_view text, const std::vector<std::string>& context)
        : text_(text), context_(context) {}

    std::unique_ptr<Expr::Node> run() {
        auto e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    using Node = Expr::Node;
    std::string_view text_;
    const std::vector<std::string>& context_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static std::unique_ptr<Node> mk(Expr::Kind k, std::unique_ptr<Node> a = nullptr,
                                    std::unique_ptr<Node> b = nullptr) {
        auto n = std::make_unique<Node>();
        n->kind = k;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    std::unique_ptr<Node> parse_expr() {
        auto lhs = parse_term();
        while (true) {
            if (eat('+'))
                lhs = mk(Expr::Kind::Add, std::move(lhs), parse_term());
            else if (eat('-'))
                lhs = mk(Expr::Kind::Sub, std::move(lhs), parse_term());
            else
                return lhs;
        }
    }

    std::unique_ptr<Node> parse_term() {
        auto lhs = parse_factor();
        while (true) {
            if (eat('*')) {
                lhs = mk(Expr::Kind::Mul, std::move(lhs), parse_factor());
            } else if (eat('/')) {
                std::size_t at = pos_;
                auto rhs = parse_factor();
                if (rhs->kind == Expr::Kind::Number && rhs->number == 0)
                    throw ParseError("division by literal zero", at);
                lhs = mk(Expr::Kind::Div, std::move(lhs), std::move(rhs));
            } else {
                return lhs;
            }
        }
    }

    std::unique_ptr<Node> parse_factor() {
        if (eat('-')) return mk(Expr::Kind::Neg, parse_factor());
        return parse_primary();
    }

    std::unique_ptr<Node> parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
        char c = text_[pos_];
        if (c == '(') {
            std::size_t open = pos_;
            ++pos_;
            auto e = parse_expr();
            if (!eat(')')) throw ParseError("unbalanced parenthesis", open);
            return e;
        }
        if (c >= '0' && c <= '9') return parse_number();
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') return parse_ident();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    std::unique_ptr<Node> parse_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && ((text_[pos_] >= '0' && text_[pos_] <= '9') || text_[pos_] == '.'))
            ++pos_;
        double v = 0;
        auto sv = text_.substr(start, pos_ - start);
        auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
        if (res.ec != std::errc{} || res.ptr != sv.data() + sv.size())
            throw ParseError("malformed number '" + std::string(sv) + "'", start);
        auto n = mk(Expr::Kind::Number);
        n->number = v;
        return n;
    }

    std::unique_ptr<Node> parse_ident() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               ((text_[pos_] >= 'a' && text_[pos_] <= 'z') || (text_[pos_] >= 'A' && text_[pos_] <= 'Z') ||
                (text_[pos_] >= '0' && text_[pos_] <= '9') || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));

        auto parse_call = [&](Expr::Kind kind, std::size_t arity) {
            if (!eat('(')) throw ParseError("expected '(' after " + name, pos_);
            auto a = parse_expr();
            std::unique_ptr<Node> b;
            if (arity == 2) {
                if (!eat(',')) throw ParseError(name + " expects 2 arguments", pos_);
                b = parse_expr();
            } else if (eat(',')) {
                throw ParseError(name + " expects 1 argument", pos_ - 1);
            }
            if (!eat(')')) throw ParseError("unbalanced parenthesis in call to " + name, start);
            return mk(kind, std::move(a), std::move(b));
        };

        if (name == "abs") return parse_call(Expr::Kind::Abs, 1);
        if (name == "min") return parse_call(Expr::Kind::Min, 2);
        if (name == "max") return parse_call(Expr::Kind::Max, 2);

        for (std::size_t i = 0; i < context_.size(); ++i) {
            if (context_[i] == name) {
                auto n = mk(Expr::Kind::Var);
                n->var = i;
                n->var_name = name;
                return n;
            }
        }
        throw ParseError("unknown identifier '" + name + "'", start);
    }
};

inline Expr Expr::parse(std::string_view text, std::vector<std::string> context) {
    ExprParser p(text, context);
    Expr e;
    e.root_ = std::shared_ptr<const Node>(p.run().release());
    e.context_ = std::move(context);
    e.kind_ = e.root_->kind;
    return e;
}

/// Parses text against the given variable context; throws ParseError with a
/// source position on malformed input.
inline Expr parse_expression(std::string_view text, std::vector<std::string> context) {
    if (text.empty()) throw ParseError("empty expression", 0);
    return Expr::parse(text, std::move(context));
}

} // namespace picard

#endif
