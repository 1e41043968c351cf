#include "polycontract/expr.hpp"

#include <cctype>
#include <utility>

namespace polycontract {

using Node = Expression::Node;
using Kind = Expression::Kind;

Expression Expression::constant(Rational value) {
    return Expression(Node{Kind::constant, std::move(value), 'x', {}});
}

Expression Expression::variable(char name) {
    if (name != 'x' && name != 'y') throw InputError("expression variables are limited to x and y");
    return Expression(Node{Kind::variable, 0, name, {}});
}

Expression Expression::negate(Expression e) {
    Node n{Kind::negate, 0, 'x', {}};
    n.children.push_back(e.root());
    return Expression(std::move(n));
}

Expression Expression::sum(Expression lhs, Expression rhs) {
    Node n{Kind::sum, 0, 'x', {}};
    n.children.push_back(lhs.root());
    n.children.push_back(rhs.root());
    return Expression(std::move(n));
}

Expression Expression::product(Expression lhs, Expression rhs) {
    Node n{Kind::product, 0, 'x', {}};
    n.children.push_back(lhs.root());
    n.children.push_back(rhs.root());
    return Expression(std::move(n));
}

Expression Expression::abs_value(Expression e) {
    Node n{Kind::abs_value, 0, 'x', {}};
    n.children.push_back(e.root());
    return Expression(std::move(n));
}

namespace {

bool node_uses(const Node& node, char name) {
    if (node.kind == Kind::variable) return node.var == name;
    for (const Node& child : node.children) {
        if (node_uses(child, name)) return true;
    }
    return false;
}

Rational eval_node(const Node& node, const Rational* x, const Rational* y) {
    switch (node.kind) {
        case Kind::constant:
            return node.value;
        case Kind::variable: {
            const Rational* bound = node.var == 'x' ? x : y;
            if (bound == nullptr) {
                throw InputError(std::string("unbound variable '") + node.var + "' in expression");
            }
            return *bound;
        }
        case Kind::negate:
            return -eval_node(node.children[0], x, y);
        case Kind::sum:
            return eval_node(node.children[0], x, y) + eval_node(node.children[1], x, y);
        case Kind::product:
            return eval_node(node.children[0], x, y) * eval_node(node.children[1], x, y);
        case Kind::abs_value:
            return rational_abs(eval_node(node.children[0], x, y));
    }
    throw InputError("corrupt expression node");
}

// Printer precedence: sum = 0, product = 1, unary = 2, atom = 3.
int precedence(const Node& node) {
    switch (node.kind) {
        case Kind::sum: return 0;
        case Kind::product: return 1;
        case Kind::negate: return 2;
        default: return 3;
    }
}

void print_node(const Node& node, int parent_prec, std::string& out) {
    const int prec = precedence(node);
    const bool parens = prec < parent_prec;
    if (parens) out += '(';
    switch (node.kind) {
        case Kind::constant: {
            // Negative constants print through the unary-minus rule so the
            // output re-parses to the identical tree.
            if (node.value < 0) {
                out += '-';
                out += to_string(Rational(-node.value));
            } else {
                out += to_string(node.value);
            }
            break;
        }
        case Kind::variable:
            out += node.var;
            break;
        case Kind::negate:
            out += '-';
            print_node(node.children[0], 2, out);
            break;
        case Kind::sum:
            print_node(node.children[0], 0, out);
            out += " + ";
            print_node(node.children[1], 1, out);
            break;
        case Kind::product:
            print_node(node.children[0], 1, out);
            out += " * ";
            print_node(node.children[1], 2, out);
            break;
        case Kind::abs_value:
            out += "abs(";
            print_node(node.children[0], 0, out);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

class Parser {
public:
    explicit Parser(std::string_view source) : src_(source) {}

    Expression parse() {
        Expression e = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError(pos_, "end of input");
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    Expression parse_expr() {
        Expression lhs = parse_term();
        while (true) {
            skip_ws();
            if (consume('+')) {
                lhs = Expression::sum(std::move(lhs), parse_term());
            } else if (consume('-')) {
                lhs = Expression::sum(std::move(lhs), Expression::negate(parse_term()));
            } else {
                return lhs;
            }
        }
    }

    Expression parse_term() {
        Expression lhs = parse_factor();
        while (consume('*')) {
            lhs = Expression::product(std::move(lhs), parse_factor());
        }
        return lhs;
    }

    Expression parse_factor() {
        if (consume('-')) return Expression::negate(parse_factor());
        return parse_power();
    }

    Expression parse_power() {
        Expression base = parse_primary();
        while (consume('^')) {
            unsigned exp = parse_nat_literal();
            // Desugar: x^0 -> 1, x^n -> x * x * ... preserving left association.
            if (exp == 0) {
                base = Expression::constant(1);
            } else {
                Expression result = base;
                for (unsigned i = 1; i < exp; ++i) {
                    result = Expression::product(std::move(result), base);
                }
                base = std::move(result);
            }
        }
        return base;
    }

    unsigned parse_nat_literal() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError(start, "non-negative integer exponent");
        unsigned long value = 0;
        for (std::size_t i = start; i < pos_; ++i) {
            value = value * 10 + static_cast<unsigned long>(src_[i] - '0');
            if (value > kMaxDistancePower) throw ParseError(start, "exponent within supported range");
        }
        return static_cast<unsigned>(value);
    }

    Expression parse_primary() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError(pos_, "rational, variable, 'abs(' or '('");
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Expression inner = parse_expr();
            if (!consume(')')) throw ParseError(pos_, "')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_rational_literal();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            std::string_view word = src_.substr(start, pos_ - start);
            if (word == "x") return Expression::variable('x');
            if (word == "y") return Expression::variable('y');
            if (word == "abs") {
                if (!consume('(')) throw ParseError(pos_, "'(' after abs");
                Expression inner = parse_expr();
                if (!consume(')')) throw ParseError(pos_, "')'");
                return Expression::abs_value(std::move(inner));
            }
            throw ParseError(start, "rational, variable, 'abs(' or '('");
        }
        throw ParseError(pos_, "rational, variable, 'abs(' or '('");
    }

    Expression parse_rational_literal() {
        std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            digits();
        } else if (pos_ < src_.size() && src_[pos_] == '/') {
            ++pos_;
            std::size_t den_start = pos_;
            digits();
            if (pos_ == den_start) throw ParseError(den_start, "denominator digits");
        }
        if (pos_ == start) throw ParseError(start, "rational literal");
        try {
            return Expression::constant(parse_rational(src_.substr(start, pos_ - start)));
        } catch (const InputError&) {
            throw ParseError(start, "rational literal");
        }
    }
};

}  // namespace

namespace {

bool nodes_equal(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Kind::constant:
            return a.value == b.value;
        case Kind::variable:
            return a.var == b.var;
        default:
            break;
    }
    if (a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!nodes_equal(a.children[i], b.children[i])) return false;
    }
    return true;
}

}  // namespace

bool operator==(const Expression& lhs, const Expression& rhs) {
    return nodes_equal(*lhs.root_, *rhs.root_);
}

bool Expression::uses_variable(char name) const { return node_uses(*root_, name); }

Rational Expression::evaluate(const Rational& x) const { return eval_node(*root_, &x, nullptr); }

Rational Expression::evaluate(const Rational& x, const Rational& y) const {
    return eval_node(*root_, &x, &y);
}

std::string Expression::to_string() const {
    std::string out;
    print_node(*root_, 0, out);
    return out;
}

Expression parse_expression(std::string_view source) { return Parser(source).parse(); }

}  // namespace polycontract
