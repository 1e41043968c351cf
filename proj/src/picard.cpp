#include "polycontract/picard.hpp"

#include <utility>

namespace polycontract {

std::string to_string(PicardTrace::Status status) {
    switch (status) {
        case PicardTrace::Status::converged: return "converged-to-fixed-point";
        case PicardTrace::Status::cycle_detected: return "cycle-detected";
        case PicardTrace::Status::max_iter_reached: return "max-iter";
    }
    return "?";
}

std::size_t PicardTrace::steps_to_limit() const {
    if (status != Status::converged || !limit) return iterates.size();
    for (std::size_t n = 0; n < iterates.size(); ++n) {
        if (iterates[n] == *limit) return n;
    }
    return iterates.size();
}

PicardTrace iterate(const FiniteMetricSpace& space, const TableMap& map, std::size_t z0) {
    validate_table(space, map);
    if (z0 >= space.size()) throw InputError("start point out of range");

    PicardTrace trace;
    std::vector<bool> visited(space.size(), false);
    std::size_t current = z0;
    while (!visited[current]) {
        visited[current] = true;
        trace.index_path.push_back(current);
        current = map.apply(current);
    }
    trace.index_path.push_back(current);  // first revisited point closes the trace

    for (std::size_t n = 0; n + 1 < trace.index_path.size(); ++n) {
        trace.step_dist.push_back(space.distance(trace.index_path[n], trace.index_path[n + 1]));
    }
    for (std::size_t p : trace.index_path) trace.iterates.push_back(space.label(p));

    if (map.apply(current) == current) {
        trace.status = PicardTrace::Status::converged;
        trace.limit_index = current;
        trace.limit = space.label(current);
        for (std::size_t p : trace.index_path) {
            trace.dist_to_limit.push_back(space.distance(p, current));
        }
    } else {
        trace.status = PicardTrace::Status::cycle_detected;
    }
    return trace;
}

PicardTrace iterate(const IntervalGridSpace& space, const PiecewiseMap& map, const Rational& z0,
                    const StopRule& stop) {
    if (!space.contains(z0)) throw InputError("start point outside the interval");
    if (stop.tolerance < 0) throw InputError("tolerance must be >= 0");

    PicardTrace trace;
    trace.value_path.push_back(z0);
    Rational current = z0;
    for (std::size_t n = 0; n < stop.max_iter; ++n) {
        Rational next = map.apply(current);
        trace.value_path.push_back(next);
        Rational step = space.distance(current, next);
        const bool stopped = step <= stop.tolerance;
        trace.step_dist.push_back(std::move(step));
        if (stopped) {
            // With tolerance 0 this is an exact fixed point. Otherwise the
            // limit claim still promises d(limit, T(limit)) <= tolerance,
            // so confirm with one more application before converging.
            if (stop.tolerance == 0 || space.distance(next, map.apply(next)) <= stop.tolerance) {
                trace.status = PicardTrace::Status::converged;
                trace.limit_value = next;
                trace.limit = to_string(next);
                break;
            }
        }
        current = std::move(next);
    }
    for (const Rational& v : trace.value_path) trace.iterates.push_back(to_string(v));
    if (trace.status == PicardTrace::Status::converged) {
        for (const Rational& v : trace.value_path) {
            trace.dist_to_limit.push_back(space.distance(v, *trace.limit_value));
        }
    }
    return trace;
}

namespace {

Rational sigma_from_values(const CoefficientFamily& family, unsigned j, const Rational& Aj,
                           const Rational& step_distance,
                           const std::vector<Rational>& coeff_values) {
    if (j < 1 || j > family.k) throw InputError("j must lie in 1..k");
    if (Aj <= 0) throw InputError("A_j must be > 0");
    Rational sum = 0;
    Rational power = 1;
    for (unsigned i = 0; i <= family.k; ++i) {
        sum += coeff_values[i] * power;
        if (i < family.k) power *= step_distance;
    }
    return sum / Aj;
}

}  // namespace

Rational sigma0(const FiniteMetricSpace& space, const TableMap& map,
                const CoefficientFamily& family, unsigned j, const Rational& Aj, std::size_t z0) {
    family.validate(&space);
    validate_table(space, map);
    if (z0 >= space.size()) throw InputError("start point out of range");
    const std::size_t z1 = map.apply(z0);
    std::vector<Rational> values;
    values.reserve(family.k + 1);
    for (unsigned i = 0; i <= family.k; ++i) values.push_back(family.a[i].at(z0, z1));
    return sigma_from_values(family, j, Aj, space.distance(z0, z1), values);
}

Rational sigma0(const IntervalGridSpace& space, const PiecewiseMap& map,
                const CoefficientFamily& family, unsigned j, const Rational& Aj,
                const Rational& z0) {
    family.validate_for_grid();
    if (!space.contains(z0)) throw InputError("start point outside the interval");
    const Rational z1 = map.apply(z0);
    std::vector<Rational> values;
    values.reserve(family.k + 1);
    for (unsigned i = 0; i <= family.k; ++i) values.push_back(family.a[i].at(z0, z1));
    return sigma_from_values(family, j, Aj, space.distance(z0, z1), values);
}

BoundValue a_priori_bound(std::size_t n, unsigned j, const Rational& lambda, const Rational& sigma,
                          unsigned precision_bits) {
    if (!(lambda > 0 && lambda < 1)) throw InputError("lambda must lie in the open interval (0,1)");
    if (sigma < 0) throw InputError("sigma must be >= 0");
    if (j < 1) throw InputError("j must be >= 1");

    // (sigma/(1-lambda))^(1/j) * lambda^(n/j) = (sigma * lambda^n / (1-lambda))^(1/j)
    Rational radicand = sigma * rational_pow(lambda, static_cast<unsigned>(n)) / (1 - lambda);

    BoundValue bound;
    if (j == 1) {
        bound.exact = true;
        bound.value = std::move(radicand);
        return bound;
    }

    // Certified enclosure of radicand^(1/j): scale by 2^(j*prec), take the
    // integer floor root, and widen by one ulp of the scaled grid.
    bound.exact = false;
    const Int scale = Int(1) << precision_bits;
    Int scaled = Int(1);
    for (unsigned i = 0; i < j; ++i) scaled *= scale;
    const Int num = boost::multiprecision::numerator(radicand);
    const Int den = boost::multiprecision::denominator(radicand);
    Int floor_root = floor_nth_root(num * scaled / den, j);
    bound.lower = Rational(floor_root, scale);
    bound.upper = Rational(floor_root + 1, scale);
    return bound;
}

BoundCheckReport check_bound_against_trace(const PicardTrace& trace, unsigned j,
                                           const Rational& lambda, const Rational& sigma,
                                           unsigned precision_bits) {
    if (trace.status != PicardTrace::Status::converged || trace.dist_to_limit.empty()) {
        throw InputError("bound check needs a converged trace");
    }
    BoundCheckReport report;
    report.hard = j == 1;
    for (std::size_t n = 0; n < trace.dist_to_limit.size(); ++n) {
        BoundCheckRow row;
        row.n = n;
        row.observed = trace.dist_to_limit[n];
        row.bound = a_priori_bound(n, j, lambda, sigma, precision_bits);
        if (row.observed <= row.bound.inf()) {
            row.outcome = BoundCheckRow::Outcome::within;
        } else if (row.observed > row.bound.sup()) {
            row.outcome = BoundCheckRow::Outcome::violated;
            report.all_within = false;
        } else {
            // Only reachable for enclosures (j >= 2).
            row.outcome = BoundCheckRow::Outcome::indeterminate;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace polycontract
