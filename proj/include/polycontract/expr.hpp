#pragma once

#include "polycontract/errors.hpp"
#include "polycontract/rational.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polycontract {

/// Parse failure with the offending character offset and the token class
/// the parser was looking for.
class ParseError : public InputError {
public:
    ParseError(std::size_t position, std::string expected)
        : InputError("parse error at offset " + std::to_string(position) +
                     ": expected " + expected),
          position_(position),
          expected_(std::move(expected)) {}

    std::size_t position() const { return position_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

/// Immutable arithmetic expression over variables x and y.
///
/// Node kinds: rational constant, variable, negation, sum, product,
/// absolute value. Evaluation at rational inputs is exact; there is no
/// floating point anywhere. '^' with a non-negative integer literal is
/// accepted by the parser and desugared into repeated products, so the
/// tree stays closed under the six node kinds.
class Expression {
public:
    enum class Kind { constant, variable, negate, sum, product, abs_value };

    struct Node {
        Kind kind;
        Rational value;            // constant
        char var = 'x';            // variable
        std::vector<Node> children;  // negate/abs: 1, sum/product: 2
    };

    Expression() : root_(std::make_shared<Node>(Node{Kind::constant, 0, 'x', {}})) {}
    explicit Expression(Node root) : root_(std::make_shared<Node>(std::move(root))) {}

    static Expression constant(Rational value);
    static Expression variable(char name);  // 'x' or 'y'
    static Expression negate(Expression e);
    static Expression sum(Expression lhs, Expression rhs);
    static Expression product(Expression lhs, Expression rhs);
    static Expression abs_value(Expression e);

    const Node& root() const { return *root_; }

    bool uses_variable(char name) const;

    /// Exact evaluation. Throws InputError if the expression mentions a
    /// variable that was not bound (y when only x is supplied).
    Rational evaluate(const Rational& x) const;
    Rational evaluate(const Rational& x, const Rational& y) const;

    /// Canonical printer; parsing the output reproduces the same tree.
    std::string to_string() const;

    /// Structural equality.
    friend bool operator==(const Expression& lhs, const Expression& rhs);

private:
    std::shared_ptr<const Node> root_;
};

/// Recursive-descent parser for the grammar
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := '-' factor | power
///   power  := primary ('^' nat)*
///   primary:= rational | 'x' | 'y' | 'abs' '(' expr ')' | '(' expr ')'
/// Rationals are integers, exact decimals, or p/q. Whitespace insensitive.
Expression parse_expression(std::string_view source);

}  // namespace polycontract
