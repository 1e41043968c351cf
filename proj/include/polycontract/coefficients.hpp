#pragma once

#include "polycontract/expr.hpp"
#include "polycontract/metric_space.hpp"

#include <cstddef>
#include <variant>
#include <vector>

namespace polycontract {

/// Coefficient values on ordered point pairs of a finite space, aligned
/// with the space's point order. Not required to be symmetric.
struct PairTable {
    std::vector<std::vector<Rational>> values;
};

/// One coefficient a_i: a constant, a table on ordered pairs (finite
/// spaces), or an expression in x and y (interval spaces). Values must be
/// non-negative wherever evaluated.
class Coefficient {
public:
    Coefficient(Rational constant);       // NOLINT(google-explicit-constructor)
    Coefficient(PairTable table);         // NOLINT(google-explicit-constructor)
    Coefficient(Expression expression);   // NOLINT(google-explicit-constructor)

    bool is_constant() const { return std::holds_alternative<Rational>(value_); }
    bool is_table() const { return std::holds_alternative<PairTable>(value_); }
    bool is_expression() const { return std::holds_alternative<Expression>(value_); }

    const Rational& constant() const { return std::get<Rational>(value_); }
    const PairTable& table() const { return std::get<PairTable>(value_); }
    const Expression& expression() const { return std::get<Expression>(value_); }

    /// Evaluation on a finite space (constant or table).
    const Rational& at(std::size_t p, std::size_t q) const;
    /// Evaluation at rational points (constant or expression); checks the
    /// non-negativity invariant.
    Rational at(const Rational& x, const Rational& y) const;

private:
    std::variant<Rational, PairTable, Expression> value_;
};

/// The coefficient data (k, a_0..a_k) of a polynomial-type inequality.
struct CoefficientFamily {
    unsigned k = 1;
    std::vector<Coefficient> a;  // size k+1, indexed by degree

    /// Checks arity, the exponent cap, and table/constant non-negativity;
    /// table shape is checked against the space when given.
    void validate(const FiniteMetricSpace* space = nullptr) const;
    /// Interval spaces take constants and expressions only.
    void validate_for_grid() const;
};

}  // namespace polycontract
