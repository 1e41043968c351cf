#include "polycontract/cert_search.hpp"

#include <functional>
#include <utility>

namespace polycontract {

Rational default_lambda_tol() { return Rational(1, Int(1) << kDefaultLambdaTolLog2); }

namespace {

std::vector<Rational> distance_powers(const FiniteMetricSpace& space, unsigned k, std::size_t p,
                                      std::size_t q) {
    std::vector<Rational> powers(k + 1);
    powers[0] = 1;
    for (unsigned i = 1; i <= k; ++i) powers[i] = powers[i - 1] * space.distance(p, q);
    return powers;
}

// Constant-coefficient polynomial system at fixed lambda: variables
// a_1..a_k, constraints sum_i a_i (d^i(Tp,Tq) - lambda d^i(p,q)) <= 0
// plus the normalization a_j* >= 1.
FeasibilityProblem constant_polynomial_problem(const FiniteMetricSpace& space, const TableMap& map,
                                               unsigned k, const Rational& lambda,
                                               unsigned j_star) {
    FeasibilityProblem problem;
    for (unsigned i = 1; i <= k; ++i) problem.add_variable("a_" + std::to_string(i));

    const std::size_t n = space.size();
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            auto lhs_pow = distance_powers(space, k, map.apply(p), map.apply(q));
            auto rhs_pow = distance_powers(space, k, p, q);
            LinearConstraint c;
            c.coeffs.resize(k);
            for (unsigned i = 1; i <= k; ++i) {
                c.coeffs[i - 1] = lhs_pow[i] - lambda * rhs_pow[i];
            }
            c.rel = Rel::le;
            c.rhs = 0;
            problem.add_constraint(std::move(c));
        }
    }

    LinearConstraint norm;
    norm.coeffs.assign(k, Rational(0));
    norm.coeffs[j_star - 1] = 1;
    norm.rel = Rel::ge;
    norm.rhs = 1;
    problem.add_constraint(std::move(norm));
    return problem;
}

// Full-family system: an independent variable a_i(p,q) per degree and
// ordered pair. var(i,p,q) = i*n^2 + p*n + q. The normalization a_j* >= 1
// is imposed on every ordered pair, which makes A_j = 1 a valid uniform
// lower bound for the returned certificate.
FeasibilityProblem full_polynomial_problem(const FiniteMetricSpace& space, const TableMap& map,
                                           unsigned k, const Rational& lambda, unsigned j_star) {
    FeasibilityProblem problem;
    const std::size_t n = space.size();
    const std::size_t pairs = n * n;
    auto var = [&](unsigned i, std::size_t p, std::size_t q) {
        return i * pairs + p * n + q;
    };
    for (unsigned i = 0; i <= k; ++i) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
                problem.add_variable("a_" + std::to_string(i) + "[" + space.label(p) + "," +
                                     space.label(q) + "]");
            }
        }
    }

    const std::size_t num_vars = problem.variable_names.size();
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            const std::size_t tp = map.apply(p);
            const std::size_t tq = map.apply(q);
            auto lhs_pow = distance_powers(space, k, tp, tq);
            auto rhs_pow = distance_powers(space, k, p, q);
            LinearConstraint c;
            c.coeffs.assign(num_vars, Rational(0));
            for (unsigned i = 0; i <= k; ++i) {
                c.coeffs[var(i, tp, tq)] += lhs_pow[i];
                c.coeffs[var(i, p, q)] -= lambda * rhs_pow[i];
            }
            c.rel = Rel::le;
            c.rhs = 0;
            problem.add_constraint(std::move(c));

            LinearConstraint norm;
            norm.coeffs.assign(num_vars, Rational(0));
            norm.coeffs[var(j_star, p, q)] = 1;
            norm.rel = Rel::ge;
            norm.rhs = 1;
            problem.add_constraint(std::move(norm));
        }
    }
    return problem;
}

// Almost-polynomial constant system: variables a_0..a_k and b_i = a_i*L_i,
// constraints sum_i a_i d^i(Tp,Tq) <= lambda sum_i [a_i d^i(p,q)
// + b_i d^i(q,Tp)], normalization a_j* >= 1, and b_i >= b_floor so that
// L_i = b_i/a_i stays positive and recoverable.
FeasibilityProblem almost_problem(const FiniteMetricSpace& space, const TableMap& map, unsigned k,
                                  const Rational& lambda, unsigned j_star,
                                  const Rational& b_floor,
                                  const std::vector<unsigned>& bumped_a) {
    FeasibilityProblem problem;
    for (unsigned i = 0; i <= k; ++i) problem.add_variable("a_" + std::to_string(i));
    for (unsigned i = 0; i <= k; ++i) problem.add_variable("b_" + std::to_string(i));
    const std::size_t num_vars = 2 * (k + 1);

    const std::size_t n = space.size();
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            const std::size_t tp = map.apply(p);
            const std::size_t tq = map.apply(q);
            auto lhs_pow = distance_powers(space, k, tp, tq);
            auto rhs_pow = distance_powers(space, k, p, q);
            auto ytx_pow = distance_powers(space, k, q, tp);
            LinearConstraint c;
            c.coeffs.assign(num_vars, Rational(0));
            for (unsigned i = 0; i <= k; ++i) {
                c.coeffs[i] += lhs_pow[i] - lambda * rhs_pow[i];
                c.coeffs[k + 1 + i] = -lambda * ytx_pow[i];
            }
            c.rel = Rel::le;
            c.rhs = 0;
            problem.add_constraint(std::move(c));
        }
    }

    LinearConstraint norm;
    norm.coeffs.assign(num_vars, Rational(0));
    norm.coeffs[j_star] = 1;
    norm.rel = Rel::ge;
    norm.rhs = 1;
    problem.add_constraint(std::move(norm));

    for (unsigned i = 0; i <= k; ++i) {
        LinearConstraint floor_b;
        floor_b.coeffs.assign(num_vars, Rational(0));
        floor_b.coeffs[k + 1 + i] = 1;
        floor_b.rel = Rel::ge;
        floor_b.rhs = b_floor;
        problem.add_constraint(std::move(floor_b));
    }
    for (unsigned i : bumped_a) {
        LinearConstraint floor_a;
        floor_a.coeffs.assign(num_vars, Rational(0));
        floor_a.coeffs[i] = 1;
        floor_a.rel = Rel::ge;
        floor_a.rhs = b_floor;
        problem.add_constraint(std::move(floor_a));
    }
    return problem;
}

// Shared bisection driver. try_probe returns the certificate found at a
// given lambda, or nullopt. The feasible region grows with lambda, so the
// first probe sits at 1 - tol and feasible probes move the upper end down.
template <class Cert>
SynthesisResult bisect_lambda(const Rational& lambda_tol,
                              const std::function<std::optional<Cert>(const Rational&)>& try_probe,
                              std::optional<Cert>& found) {
    if (lambda_tol <= 0 || lambda_tol >= 1) throw InputError("lambda_tol must lie in (0,1)");
    SynthesisResult result;

    Rational hi = 1 - lambda_tol;
    found = try_probe(hi);
    result.probes.push_back({hi, found.has_value()});
    if (!found) {
        result.status = SynthesisResult::Status::infeasible_below_one;
        result.lambda = hi;
        return result;
    }

    Rational lo = 0;
    while (hi - lo > lambda_tol) {
        Rational mid = (lo + hi) / 2;
        auto candidate = try_probe(mid);
        result.probes.push_back({mid, candidate.has_value()});
        if (candidate) {
            hi = mid;
            found = std::move(candidate);
        } else {
            lo = mid;
        }
    }
    result.status = SynthesisResult::Status::found;
    result.lambda = hi;
    return result;
}

}  // namespace

SynthesisResult synthesize_polynomial(const FiniteMetricSpace& space, const TableMap& map,
                                      unsigned k, FamilyMode mode, const Rational& lambda_tol) {
    validate_table(space, map);
    if (k < 1 || k > kMaxDistancePower) throw InputError("k must lie in 1..cap");

    const std::size_t n = space.size();
    auto try_probe = [&](const Rational& lambda) -> std::optional<PolynomialCertificate> {
        for (unsigned j_star = 1; j_star <= k; ++j_star) {
            FeasibilityProblem problem =
                mode == FamilyMode::constant
                    ? constant_polynomial_problem(space, map, k, lambda, j_star)
                    : full_polynomial_problem(space, map, k, lambda, j_star);
            auto witness = lp_feasible(problem);
            if (!witness) continue;

            PolynomialCertificate cert;
            cert.lambda = lambda;
            cert.witness_j = j_star;
            cert.witness_Aj = 1;
            cert.family.k = k;
            if (mode == FamilyMode::constant) {
                cert.family.a.emplace_back(Rational(0));  // a_0 = 0 in constant mode
                for (unsigned i = 1; i <= k; ++i) {
                    cert.family.a.emplace_back((*witness)[i - 1]);
                }
            } else {
                const std::size_t pairs = n * n;
                for (unsigned i = 0; i <= k; ++i) {
                    PairTable table;
                    table.values.assign(n, std::vector<Rational>(n));
                    for (std::size_t p = 0; p < n; ++p) {
                        for (std::size_t q = 0; q < n; ++q) {
                            table.values[p][q] = (*witness)[i * pairs + p * n + q];
                        }
                    }
                    cert.family.a.emplace_back(std::move(table));
                }
            }
            return cert;
        }
        return std::nullopt;
    };

    std::optional<PolynomialCertificate> found;
    SynthesisResult result = bisect_lambda<PolynomialCertificate>(lambda_tol, try_probe, found);
    if (result.status == SynthesisResult::Status::found) {
        found->lambda = result.lambda;
        result.polynomial = std::move(found);
    }
    return result;
}

SynthesisResult synthesize_almost(const FiniteMetricSpace& space, const TableMap& map, unsigned k,
                                  const Rational& lambda_tol) {
    validate_table(space, map);
    if (k < 1 || k > kMaxDistancePower) throw InputError("k must lie in 1..cap");

    auto try_probe = [&](const Rational& lambda) -> std::optional<AlmostPolynomialCertificate> {
        for (unsigned j_star = 1; j_star <= k; ++j_star) {
            std::vector<unsigned> bumped;
            auto witness = lp_feasible(almost_problem(space, map, k, lambda, j_star, lambda_tol, bumped));
            if (!witness) continue;

            // Recover L_i = b_i / a_i. Any a_i stuck at zero is bumped to a
            // positive floor and the probe re-solved once; if that fails, or
            // the re-solve zeroes a different a_i, the probe is declared
            // infeasible for this j*.
            for (unsigned i = 0; i <= k; ++i) {
                if ((*witness)[i] == 0) bumped.push_back(i);
            }
            if (!bumped.empty()) {
                witness = lp_feasible(almost_problem(space, map, k, lambda, j_star, lambda_tol, bumped));
                if (!witness) continue;
                bool repaired = true;
                for (unsigned i = 0; i <= k; ++i) {
                    if ((*witness)[i] == 0) repaired = false;
                }
                if (!repaired) continue;
            }

            AlmostPolynomialCertificate cert;
            cert.lambda = lambda;
            cert.witness_j = j_star;
            cert.witness_Aj = 1;
            cert.family.k = k;
            for (unsigned i = 0; i <= k; ++i) cert.family.a.emplace_back((*witness)[i]);
            for (unsigned i = 0; i <= k; ++i) {
                cert.L.push_back((*witness)[k + 1 + i] / (*witness)[i]);
            }
            return cert;
        }
        return std::nullopt;
    };

    std::optional<AlmostPolynomialCertificate> found;
    SynthesisResult result = bisect_lambda<AlmostPolynomialCertificate>(lambda_tol, try_probe, found);
    if (result.status == SynthesisResult::Status::found) {
        found->lambda = result.lambda;
        result.almost = std::move(found);
    }
    return result;
}

}  // namespace polycontract
