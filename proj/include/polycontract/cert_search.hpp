#pragma once

#include "polycontract/contraction.hpp"
#include "polycontract/simplex.hpp"

#include <optional>
#include <vector>

namespace polycontract {

/// Coefficient search space: one constant per degree, or an independent
/// value per ordered point pair and degree.
enum class FamilyMode { constant, full };

struct ProbeRecord {
    Rational lambda;
    bool feasible = false;
};

/// Result of a lambda bisection with exact per-probe feasibility. On
/// status found, the returned certificate re-verifies exactly at lambda
/// via the matching verify operation.
struct SynthesisResult {
    enum class Status { found, infeasible_below_one };
    Status status = Status::infeasible_below_one;
    Rational lambda;
    std::optional<PolynomialCertificate> polynomial;
    std::optional<AlmostPolynomialCertificate> almost;
    std::vector<ProbeRecord> probes;
};

inline constexpr unsigned kDefaultLambdaTolLog2 = 20;  // lambda_tol = 2^-20

Rational default_lambda_tol();

/// Searches for a polynomial-contraction certificate by bisecting lambda
/// over (0,1): each probe solves an exact linear feasibility system in the
/// coefficient values (normalized a_j* >= 1, trying each j* in 1..k) and
/// feasible probes shrink from above. The feasible set only grows with
/// lambda, so bisection is sound.
SynthesisResult synthesize_polynomial(const FiniteMetricSpace& space, const TableMap& map,
                                      unsigned k, FamilyMode mode,
                                      const Rational& lambda_tol = default_lambda_tol());

/// Same search for the almost-polynomial inequality with constant
/// coefficients: variables a_i and b_i = a_i * L_i (i = 0..k) keep the
/// system linear at fixed lambda; L_i = b_i / a_i is recovered from the
/// witness, bumping any a_i stuck at zero to keep every L_i finite.
SynthesisResult synthesize_almost(const FiniteMetricSpace& space, const TableMap& map, unsigned k,
                                  const Rational& lambda_tol = default_lambda_tol());

}  // namespace polycontract
