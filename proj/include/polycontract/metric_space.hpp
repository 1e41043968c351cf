#pragma once

#include "polycontract/errors.hpp"
#include "polycontract/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace polycontract {

/// One failed metric axiom, with the offending points and the two values
/// that were compared. For kind triangle the witness is the ordered
/// triple (p, via, q) with left = d(p,q) and right = d(p,via) + d(via,q),
/// left strictly greater than right.
struct MetricViolation {
    enum class Kind { asymmetry, nonzero_diagonal, indistinct_points, triangle };
    Kind kind;
    std::vector<std::size_t> witness;  // (p,q) or (p,via,q)
    Rational left;
    Rational right;
};

std::string to_string(MetricViolation::Kind kind);

/// Checks the four metric axioms on a square matrix of rationals.
/// Returns the first violation in a fixed deterministic scan order
/// (axiom by axiom, each scanned lexicographically over indices), or
/// nullopt when the matrix is a metric. Non-square matrices and negative
/// entries are input errors, not violations.
std::optional<MetricViolation> validate_metric(const std::vector<std::vector<Rational>>& dist);

/// A finite metric space given by point labels and an exact distance
/// matrix. Construction validates the axioms; instances are immutable,
/// so concurrent read-only use is safe.
class FiniteMetricSpace {
public:
    FiniteMetricSpace(std::vector<std::string> labels, std::vector<std::vector<Rational>> dist);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t p) const { return labels_.at(p); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<std::size_t> index_of(std::string_view label) const;
    const Rational& distance(std::size_t p, std::size_t q) const { return dist_[p][q]; }
    const std::vector<std::vector<Rational>>& matrix() const { return dist_; }

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<Rational>> dist_;
};

/// The rational grid { lo + t*(hi-lo)/(count-1) : t = 0..count-1 } of an
/// interval [lo, hi] with the absolute-value metric. Endpoints are always
/// grid points and every grid point is an exact rational.
class IntervalGridSpace {
public:
    IntervalGridSpace(Rational lo, Rational hi, std::size_t grid_count);

    std::size_t size() const { return count_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational point(std::size_t t) const;
    const std::vector<Rational>& points() const { return points_; }
    /// Exact grid membership.
    std::optional<std::size_t> index_of(const Rational& value) const;
    bool contains(const Rational& value) const { return value >= lo_ && value <= hi_; }
    Rational distance(const Rational& a, const Rational& b) const { return rational_abs(a - b); }

private:
    Rational lo_, hi_, step_;
    std::size_t count_;
    std::vector<Rational> points_;
};

using Space = std::variant<FiniteMetricSpace, IntervalGridSpace>;

/// d(p,q)^i with d^0 = 1 for every pair, including p = q.
Rational power_distance(const FiniteMetricSpace& space, unsigned i, std::size_t p, std::size_t q);
Rational power_distance(const IntervalGridSpace& space, unsigned i, const Rational& p,
                        const Rational& q);

}  // namespace polycontract
