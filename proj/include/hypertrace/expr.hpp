#ifndef HYPERTRACE_EXPR_HPP
#define HYPERTRACE_EXPR_HPP

#include <memory>
#include <optional>
#include <string>

#include "ff.hpp"

namespace hypertrace {

/// Arithmetic expressions over F_p in the sweep variables z (one-variable
/// identities), u/v (two-variable), and the symbol w for a fixed cube root
/// of unity. Division by zero at a point marks the point excluded.
class Expr {
public:
    struct Env {
        const FiniteField* F = nullptr;
        std::uint32_t z = 0, u = 0, v = 0, w = 0;
    };

    static Expr parse(const std::string& text) {
        Parser p{text, 0};
        Expr e;
        e.root_ = p.parse_expr();
        p.skip_ws();
        if (p.pos != text.size()) throw Error("trailing characters in expression: " + text);
        e.text_ = text;
        return e;
    }

    /// Value in F_p; nullopt encodes a pole (division by zero).
    std::optional<std::uint32_t> eval(const Env& env) const { return eval_node(*root_, env); }

    const std::string& text() const { return text_; }
    bool uses_omega() const { return uses_var(*root_, 'w'); }
    bool uses_two_vars() const { return uses_var(*root_, 'u') || uses_var(*root_, 'v'); }

private:
    struct Node {
        enum class Kind { Const, Var, Add, Sub, Mul, Div, Pow, Neg } kind;
        long long value = 0;   // Const
        char var = 0;          // Var
        long long exponent = 0;  // Pow
        std::shared_ptr<Node> lhs, rhs;
    };

    std::shared_ptr<Node> root_;
    std::string text_;

    static bool uses_var(const Node& n, char v) {
        if (n.kind == Node::Kind::Var && n.var == v) return true;
        if (n.lhs && uses_var(*n.lhs, v)) return true;
        if (n.rhs && uses_var(*n.rhs, v)) return true;
        return false;
    }

    static std::optional<std::uint32_t> eval_node(const Node& n, const Env& env) {
        const FiniteField& F = *env.F;
        switch (n.kind) {
            case Node::Kind::Const: return F.from_int(n.value);
            case Node::Kind::Var:
                switch (n.var) {
                    case 'z': return env.z;
                    case 'u': return env.u;
                    case 'v': return env.v;
                    case 'w': return env.w;
                }
                throw Error("unknown variable");
            case Node::Kind::Neg: {
                auto a = eval_node(*n.lhs, env);
                if (!a) return std::nullopt;
                return F.neg(*a);
            }
            case Node::Kind::Add: {
                auto a = eval_node(*n.lhs, env), b = eval_node(*n.rhs, env);
                if (!a || !b) return std::nullopt;
                return F.add(*a, *b);
            }
            case Node::Kind::Sub: {
                auto a = eval_node(*n.lhs, env), b = eval_node(*n.rhs, env);
                if (!a || !b) return std::nullopt;
                return F.sub(*a, *b);
            }
            case Node::Kind::Mul: {
                auto a = eval_node(*n.lhs, env), b = eval_node(*n.rhs, env);
                if (!a || !b) return std::nullopt;
                return F.mul(*a, *b);
            }
            case Node::Kind::Div: {
                auto a = eval_node(*n.lhs, env), b = eval_node(*n.rhs, env);
                if (!a || !b || *b == 0) return std::nullopt;
                return F.mul(*a, F.inv(*b));
            }
            case Node::Kind::Pow: {
                auto a = eval_node(*n.lhs, env);
                if (!a) return std::nullopt;
                if (*a == 0) return n.exponent == 0 ? F.from_int(1) : 0;
                long long e = n.exponent % static_cast<long long>(F.q() - 1);
                if (e < 0) e += static_cast<long long>(F.q() - 1);
                return F.pow(*a, static_cast<std::uint64_t>(e));
            }
        }
        throw Error("bad expression node");
    }

    struct Parser {
        const std::string& s;
        size_t pos;

        void skip_ws() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool eat(char c) {
            skip_ws();
            if (pos < s.size() && s[pos] == c) { ++pos; return true; }
            return false;
        }

        std::shared_ptr<Node> parse_expr() {
            auto lhs = parse_term();
            while (true) {
                if (eat('+')) {
                    auto n = std::make_shared<Node>();
                    n->kind = Node::Kind::Add;
                    n->lhs = lhs;
                    n->rhs = parse_term();
                    lhs = n;
                } else if (eat('-')) {
                    auto n = std::make_shared<Node>();
                    n->kind = Node::Kind::Sub;
                    n->lhs = lhs;
                    n->rhs = parse_term();
                    lhs = n;
                } else {
                    return lhs;
                }
            }
        }

        std::shared_ptr<Node> parse_term() {
            auto lhs = parse_factor();
            while (true) {
                if (eat('*')) {
                    auto n = std::make_shared<Node>();
                    n->kind = Node::Kind::Mul;
                    n->lhs = lhs;
                    n->rhs = parse_factor();
                    lhs = n;
                } else if (eat('/')) {
                    auto n = std::make_shared<Node>();
                    n->kind = Node::Kind::Div;
                    n->lhs = lhs;
                    n->rhs = parse_factor();
                    lhs = n;
                } else {
                    return lhs;
                }
            }
        }

        std::shared_ptr<Node> parse_factor() {
            skip_ws();
            if (eat('-')) {
                auto n = std::make_shared<Node>();
                n->kind = Node::Kind::Neg;
                n->lhs = parse_factor();
                return n;
            }
            auto base = parse_atom();
            skip_ws();
            if (eat('^')) {
                skip_ws();
                bool neg = eat('-');
                size_t start = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (start == pos) throw Error("expected integer exponent");
                auto n = std::make_shared<Node>();
                n->kind = Node::Kind::Pow;
                n->lhs = base;
                n->exponent = std::stoll(s.substr(start, pos - start));
                if (neg) n->exponent = -n->exponent;
                return n;
            }
            return base;
        }

        std::shared_ptr<Node> parse_atom() {
            skip_ws();
            if (pos >= s.size()) throw Error("unexpected end of expression");
            char c = s[pos];
            if (c == '(') {
                ++pos;
                auto e = parse_expr();
                if (!eat(')')) throw Error("missing )");
                return e;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                size_t start = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                auto n = std::make_shared<Node>();
                n->kind = Node::Kind::Const;
                n->value = std::stoll(s.substr(start, pos - start));
                return n;
            }
            if (c == 'z' || c == 'u' || c == 'v' || c == 'w') {
                ++pos;
                auto n = std::make_shared<Node>();
                n->kind = Node::Kind::Var;
                n->var = c;
                return n;
            }
            throw Error(std::string("unexpected character '") + c + "' in expression");
        }
    };
};

}  // namespace hypertrace

#endif
