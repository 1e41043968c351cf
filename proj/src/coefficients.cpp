#include "polycontract/coefficients.hpp"

#include <utility>

namespace polycontract {

Coefficient::Coefficient(Rational constant) : value_(std::move(constant)) {
    if (this->constant() < 0) throw InputError("coefficient constants must be >= 0");
}

Coefficient::Coefficient(PairTable table) : value_(std::move(table)) {}

Coefficient::Coefficient(Expression expression) : value_(std::move(expression)) {}

const Rational& Coefficient::at(std::size_t p, std::size_t q) const {
    if (is_constant()) return constant();
    if (is_table()) return table().values[p][q];
    throw InputError("expression coefficients need rational points, not indices");
}

Rational Coefficient::at(const Rational& x, const Rational& y) const {
    if (is_constant()) return constant();
    if (is_expression()) {
        Rational v = expression().evaluate(x, y);
        if (v < 0) {
            throw InputError("coefficient expression is negative at (" + to_string(x) + ", " +
                             to_string(y) + ")");
        }
        return v;
    }
    throw InputError("table coefficients need point indices, not rationals");
}

void CoefficientFamily::validate(const FiniteMetricSpace* space) const {
    if (k < 1) throw InputError("coefficient family needs k >= 1");
    if (k > kMaxDistancePower) throw InputError("coefficient family degree exceeds supported cap");
    if (a.size() != k + 1) {
        throw InputError("coefficient family must supply exactly k+1 mappings a_0..a_k");
    }
    for (const Coefficient& c : a) {
        if (c.is_table()) {
            if (space == nullptr) throw InputError("table coefficient without a finite space");
            const auto& rows = c.table().values;
            if (rows.size() != space->size()) throw InputError("coefficient table has wrong shape");
            for (const auto& row : rows) {
                if (row.size() != space->size()) {
                    throw InputError("coefficient table has wrong shape");
                }
                for (const Rational& v : row) {
                    if (v < 0) throw InputError("coefficient table has a negative entry");
                }
            }
        }
    }
}

void CoefficientFamily::validate_for_grid() const {
    for (const Coefficient& c : a) {
        if (c.is_table()) throw InputError("pair tables are not usable on interval spaces");
    }
    validate(nullptr);
}

}  // namespace polycontract
