#pragma once

#include "polycontract/errors.hpp"
#include "polycontract/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polycontract {

enum class Rel { le, ge, eq };

/// A linear constraint sum_v coeffs[v] * x_v (rel) rhs over the problem's
/// variable vector.
struct LinearConstraint {
    std::vector<Rational> coeffs;
    Rel rel = Rel::le;
    Rational rhs;
};

/// Linear feasibility system over named non-negative rational variables.
struct FeasibilityProblem {
    std::vector<std::string> variable_names;
    std::vector<LinearConstraint> constraints;

    std::size_t add_variable(std::string name);
    void add_constraint(LinearConstraint c);
};

/// Exact phase-1 simplex with Bland's rule (guaranteed termination, no
/// rounding anywhere). Returns a witness assignment satisfying every
/// constraint, or nullopt when the system is infeasible.
std::optional<std::vector<Rational>> lp_feasible(const FeasibilityProblem& problem);

}  // namespace polycontract
