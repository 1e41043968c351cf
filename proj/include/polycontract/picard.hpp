#pragma once

#include "polycontract/coefficients.hpp"
#include "polycontract/metric_space.hpp"
#include "polycontract/self_map.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace polycontract {

/// A Picard orbit z_{n+1} = T(z_n) with its step distances. Points are
/// carried both as display strings and as native values (indices on
/// finite spaces, rationals on grids). When the trace converged,
/// dist_to_limit[n] = d(z_n, limit) is recorded for bound comparisons.
struct PicardTrace {
    enum class Status { converged, cycle_detected, max_iter_reached };

    std::vector<std::string> iterates;
    std::vector<std::size_t> index_path;  // finite spaces
    std::vector<Rational> value_path;     // interval spaces
    std::vector<Rational> step_dist;      // d(z_n, z_{n+1}), size iterates-1
    Status status = Status::max_iter_reached;
    std::optional<std::string> limit;
    std::optional<std::size_t> limit_index;
    std::optional<Rational> limit_value;
    std::vector<Rational> dist_to_limit;

    struct BoundParams {
        unsigned j = 1;
        Rational lambda;
        Rational sigma;
    };
    std::optional<BoundParams> bound_params;

    /// Applications of T until the limit is first reached (converged
    /// traces only).
    std::size_t steps_to_limit() const;
};

std::string to_string(PicardTrace::Status status);

struct StopRule {
    Rational tolerance = 0;          // grid spaces: stop when d(z_n, z_{n+1}) <= tolerance
    std::size_t max_iter = 100000;   // grid spaces: hard cap on applications
};

/// Finite spaces: iterates until a point repeats (at most |X| + 1
/// applications). A length-1 cycle is an exact fixed point (converged);
/// longer cycles report cycle_detected.
PicardTrace iterate(const FiniteMetricSpace& space, const TableMap& map, std::size_t z0);

/// Interval grids: iterates until d(z_n, z_{n+1}) <= tolerance or the cap
/// is hit. With the default tolerance 0 the stop is an exact fixed point.
/// Iterates may leave the grid (images only need to stay in [lo, hi]).
PicardTrace iterate(const IntervalGridSpace& space, const PiecewiseMap& map, const Rational& z0,
                    const StopRule& stop = {});

/// The constant sigma = A_j^{-1} * sum_i a_i(z0, z1) d^i(z0, z1) with
/// z1 = T(z0): the scaled weight of the first Picard step. It drives the
/// geometric step bound d^j(z_n, z_{n+1}) <= lambda^n * sigma.
Rational sigma0(const FiniteMetricSpace& space, const TableMap& map,
                const CoefficientFamily& family, unsigned j, const Rational& Aj, std::size_t z0);
Rational sigma0(const IntervalGridSpace& space, const PiecewiseMap& map,
                const CoefficientFamily& family, unsigned j, const Rational& Aj,
                const Rational& z0);

/// Value of (sigma/(1-lambda))^(1/j) * lambda^(n/j): for j = 1 an exact
/// rational; for j >= 2 a certified enclosure of width 2^-precision_bits.
struct BoundValue {
    bool exact = true;
    Rational value;           // exact case
    Rational lower, upper;    // enclosure case (lower <= true value <= upper)

    const Rational& sup() const { return exact ? value : upper; }
    const Rational& inf() const { return exact ? value : lower; }
};

BoundValue a_priori_bound(std::size_t n, unsigned j, const Rational& lambda, const Rational& sigma,
                          unsigned precision_bits = 64);

/// Elementwise comparison of observed d(z_n, limit) against the a-priori
/// bound. For j = 1 the comparison is exact and a violation is a hard
/// failure; for j >= 2 the bound rests on the triangle inequality for
/// d^j, which need not hold, so rows are empirical evidence and
/// violations are flagged as noteworthy rather than as errors.
struct BoundCheckRow {
    std::size_t n = 0;
    Rational observed;
    BoundValue bound;
    enum class Outcome { within, violated, indeterminate } outcome = Outcome::within;
};

struct BoundCheckReport {
    bool hard = true;  // j == 1: violations are failures
    bool all_within = true;
    std::vector<BoundCheckRow> rows;
};

BoundCheckReport check_bound_against_trace(const PicardTrace& trace, unsigned j,
                                           const Rational& lambda, const Rational& sigma,
                                           unsigned precision_bits = 64);

}  // namespace polycontract
