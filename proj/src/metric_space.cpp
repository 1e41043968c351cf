#include "polycontract/metric_space.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace polycontract {

std::string to_string(MetricViolation::Kind kind) {
    switch (kind) {
        case MetricViolation::Kind::asymmetry: return "asymmetry";
        case MetricViolation::Kind::nonzero_diagonal: return "nonzero-diagonal";
        case MetricViolation::Kind::indistinct_points: return "indistinct-points";
        case MetricViolation::Kind::triangle: return "triangle";
    }
    return "?";
}

std::optional<MetricViolation> validate_metric(const std::vector<std::vector<Rational>>& dist) {
    const std::size_t n = dist.size();
    for (const auto& row : dist) {
        if (row.size() != n) throw InputError("distance matrix is not square");
        for (const Rational& v : row) {
            if (v < 0) throw InputError("distance matrix has a negative entry");
        }
    }

    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (dist[p][q] != dist[q][p]) {
                return MetricViolation{MetricViolation::Kind::asymmetry, {p, q}, dist[p][q],
                                       dist[q][p]};
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (dist[p][p] != 0) {
            return MetricViolation{MetricViolation::Kind::nonzero_diagonal, {p, p}, dist[p][p], 0};
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p != q && dist[p][q] == 0) {
                // Labels denote distinct points, so zero off-diagonal
                // distance breaks identity of indiscernibles.
                return MetricViolation{MetricViolation::Kind::indistinct_points, {p, q}, 0, 0};
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            for (std::size_t via = 0; via < n; ++via) {
                Rational detour = dist[p][via] + dist[via][q];
                if (dist[p][q] > detour) {
                    return MetricViolation{MetricViolation::Kind::triangle, {p, via, q},
                                           dist[p][q], std::move(detour)};
                }
            }
        }
    }
    return std::nullopt;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels,
                                     std::vector<std::vector<Rational>> dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
    if (labels_.empty()) throw InputError("finite space needs at least one point");
    if (dist_.size() != labels_.size()) {
        throw InputError("distance matrix size does not match point count");
    }
    std::set<std::string> seen;
    for (const auto& l : labels_) {
        if (!seen.insert(l).second) throw InputError("duplicate point label '" + l + "'");
    }
    if (auto violation = validate_metric(dist_)) {
        throw InputError("distance matrix is not a metric (" + to_string(violation->kind) +
                         " at " + labels_[violation->witness.front()] + ")");
    }
}

std::optional<std::size_t> FiniteMetricSpace::index_of(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

IntervalGridSpace::IntervalGridSpace(Rational lo, Rational hi, std::size_t grid_count)
    : lo_(std::move(lo)), hi_(std::move(hi)), count_(grid_count) {
    if (lo_ >= hi_) throw InputError("interval space needs lo < hi");
    if (count_ < 2) throw InputError("interval space needs grid_count >= 2");
    step_ = (hi_ - lo_) / Rational(count_ - 1);
    points_.reserve(count_);
    for (std::size_t t = 0; t < count_; ++t) {
        points_.push_back(lo_ + Rational(t) * step_);
    }
    points_.back() = hi_;  // exact by construction; keep it literal
}

Rational IntervalGridSpace::point(std::size_t t) const {
    if (t >= count_) throw InputError("grid index out of range");
    return points_[t];
}

std::optional<std::size_t> IntervalGridSpace::index_of(const Rational& value) const {
    if (!contains(value)) return std::nullopt;
    Rational offset = (value - lo_) / step_;
    const Int& num = boost::multiprecision::numerator(offset);
    const Int& den = boost::multiprecision::denominator(offset);
    if (den != 1) return std::nullopt;
    return static_cast<std::size_t>(num);
}

namespace {

Rational checked_power(const Rational& d, unsigned i) {
    if (i > kMaxDistancePower) throw InputError("distance power exceeds supported cap");
    return rational_pow(d, i);
}

}  // namespace

Rational power_distance(const FiniteMetricSpace& space, unsigned i, std::size_t p, std::size_t q) {
    if (p >= space.size() || q >= space.size()) throw InputError("point index out of range");
    return checked_power(space.distance(p, q), i);
}

Rational power_distance(const IntervalGridSpace& space, unsigned i, const Rational& p,
                        const Rational& q) {
    if (!space.contains(p) || !space.contains(q)) throw InputError("point outside the interval");
    return checked_power(space.distance(p, q), i);
}

}  // namespace polycontract
