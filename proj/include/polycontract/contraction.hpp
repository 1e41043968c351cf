#pragma once

#include "polycontract/coefficients.hpp"
#include "polycontract/metric_space.hpp"
#include "polycontract/self_map.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polycontract {

/// Certificate that T satisfies the polynomial-contraction inequality
///   sum_i a_i(Tx,Ty) d^i(Tx,Ty) <= lambda * sum_i a_i(x,y) d^i(x,y)
/// together with a claimed uniform lower bound a_j >= A_j.
struct PolynomialCertificate {
    Rational lambda;
    CoefficientFamily family;
    unsigned witness_j = 1;
    Rational witness_Aj = 1;

    void validate(const FiniteMetricSpace* space = nullptr) const;
};

/// Certificate for the almost-polynomial inequality, whose right side
/// carries the extra terms L_i d^i(y,Tx):
///   sum_i a_i(Tx,Ty) d^i(Tx,Ty)
///     <= lambda * sum_i a_i(x,y) [d^i(x,y) + L_i d^i(y,Tx)].
struct AlmostPolynomialCertificate {
    Rational lambda;
    CoefficientFamily family;
    unsigned witness_j = 1;
    Rational witness_Aj = 1;
    std::vector<Rational> L;  // size k+1, all > 0

    void validate(const FiniteMetricSpace* space = nullptr) const;
};

/// Outcome of an inequality scan over all ordered point pairs.
///
/// lhs and rhs are the two sides at the worst pair, with rhs the UNSCALED
/// base (the sum lambda multiplies). min_feasible_lambda is the exact
/// maximum of lhs/rhs over pairs with rhs > 0 — the smallest lambda the
/// certificate data could pass with — or nullopt when some pair has
/// rhs = 0 but lhs > 0 (no lambda works; status infeasible).
struct Verdict {
    enum class Status { pass, fail, infeasible };
    Status status = Status::pass;
    std::optional<std::pair<std::size_t, std::size_t>> worst_indices;
    std::optional<std::pair<std::string, std::string>> worst_pair;
    Rational lhs = 0;
    Rational rhs = 0;
    std::optional<Rational> min_feasible_lambda;
    bool grid_verified = false;  // evidence on the grid, not proof on the continuum
};

std::string to_string(Verdict::Status status);

/// Per-pair breakdown row (collected on request, e.g. for demo tables).
struct PairRow {
    std::size_t p, q;
    Rational lhs;
    Rational rhs;  // unscaled base
};

struct ScanOptions {
    bool collect_pairs = false;
    bool parallel = true;
};

struct VerifyResult {
    Verdict verdict;
    std::vector<PairRow> pairs;  // empty unless collect_pairs
};

VerifyResult verify_polynomial(const FiniteMetricSpace& space, const TableMap& map,
                               const PolynomialCertificate& cert, const ScanOptions& opts = {});
VerifyResult verify_polynomial(const IntervalGridSpace& space, const PiecewiseMap& map,
                               const PolynomialCertificate& cert, const ScanOptions& opts = {});

VerifyResult verify_almost_polynomial(const FiniteMetricSpace& space, const TableMap& map,
                                      const AlmostPolynomialCertificate& cert,
                                      const ScanOptions& opts = {});
VerifyResult verify_almost_polynomial(const IntervalGridSpace& space, const PiecewiseMap& map,
                                      const AlmostPolynomialCertificate& cert,
                                      const ScanOptions& opts = {});

/// Both sides of the inequality at a single ordered pair of interval
/// points (rhs unscaled), for spot checks without a full grid scan.
struct SideValues {
    Rational lhs;
    Rational rhs;
};

SideValues polynomial_sides(const IntervalGridSpace& space, const PiecewiseMap& map,
                            const PolynomialCertificate& cert, const Rational& x,
                            const Rational& y);
SideValues almost_polynomial_sides(const IntervalGridSpace& space, const PiecewiseMap& map,
                                   const AlmostPolynomialCertificate& cert, const Rational& x,
                                   const Rational& y);

/// Smallest Lipschitz constant on the (grid) point set:
/// max over p != q of d(Tp,Tq)/d(p,q). T is a Banach contraction iff the
/// ratio is < 1. The maximum is attained (finitely many pairs), so the
/// result is always a rational; worst is absent only on one-point spaces.
struct LipschitzReport {
    Rational ratio = 0;
    std::optional<std::pair<std::size_t, std::size_t>> worst;
    bool grid_verified = false;
};

LipschitzReport verify_banach(const FiniteMetricSpace& space, const TableMap& map);
LipschitzReport verify_banach(const IntervalGridSpace& space, const PiecewiseMap& map);

/// Smallest lambda for d(Tp,Tq) <= lambda [d(p,Tp) + d(q,Tq)], or nullopt
/// (infeasible) when some pair has a zero bracket but d(Tp,Tq) > 0. The
/// Kannan condition holds iff the value is < 1/2.
struct KannanReport {
    std::optional<Rational> ratio;
    std::optional<std::pair<std::size_t, std::size_t>> worst;
    bool grid_verified = false;
};

KannanReport verify_kannan(const FiniteMetricSpace& space, const TableMap& map);
KannanReport verify_kannan(const IntervalGridSpace& space, const PiecewiseMap& map);

/// Checks d(Tx,Ty) <= lambda d(x,y) + ell d(y,Tx) over ordered pairs.
/// In the returned verdict rhs is the full right side at the worst pair
/// (the pair minimizing slack), and min_feasible_lambda is the smallest
/// lambda passing at this fixed ell.
Verdict verify_almost_contraction(const FiniteMetricSpace& space, const TableMap& map,
                                  const Rational& lambda, const Rational& ell);
Verdict verify_almost_contraction(const IntervalGridSpace& space, const PiecewiseMap& map,
                                  const Rational& lambda, const Rational& ell);

/// Exact minimum of a_j over all ordered pairs. A positive minimum
/// certifies the uniform lower bound A_j = min a_j; on interval grids the
/// value is grid evidence only.
struct LowerBoundReport {
    Rational min_value = 0;
    bool positive = false;
    std::pair<std::size_t, std::size_t> where{0, 0};
    bool grid_evidence = false;
};

LowerBoundReport check_lower_bound_condition(const FiniteMetricSpace& space,
                                             const CoefficientFamily& family, unsigned j);
LowerBoundReport check_lower_bound_condition(const IntervalGridSpace& space,
                                             const CoefficientFamily& family, unsigned j);

/// Sufficient conditions under which any map satisfying the polynomial
/// inequality with this family is continuous: a_0 vanishes identically,
/// every a_i (i >= 1) is bounded above, and some a_j is bounded below by
/// a positive constant. Bounds are exact maxima/minima over the scanned
/// pairs; on grids they are evidence only.
struct ContinuityReport {
    bool a0_identically_zero = false;
    std::vector<Rational> upper_bounds;  // B_i for i = 1..k
    unsigned best_j = 0;                 // j maximizing min a_j; 0 if k == 0
    Rational best_Aj = 0;
    bool guaranteed = false;
    bool grid_evidence = false;
};

ContinuityReport check_continuity_conditions(const FiniteMetricSpace& space,
                                             const CoefficientFamily& family);
ContinuityReport check_continuity_conditions(const IntervalGridSpace& space,
                                             const CoefficientFamily& family);

}  // namespace polycontract
