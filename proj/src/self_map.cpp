#include "polycontract/self_map.hpp"

#include <algorithm>
#include <utility>

namespace polycontract {

TableMap::TableMap(std::vector<std::size_t> image) : image_(std::move(image)) {
    if (image_.empty()) throw InputError("table map needs at least one point");
    for (std::size_t target : image_) {
        if (target >= image_.size()) throw InputError("table map image out of range");
    }
}

std::size_t TableMap::apply(std::size_t p) const {
    if (p >= image_.size()) throw InputError("point index out of range");
    return image_[p];
}

bool PiecewiseBranch::covers(const Rational& x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && !closed_lo) return false;
    if (x == hi && !closed_hi) return false;
    return true;
}

PiecewiseMap::PiecewiseMap(std::vector<PiecewiseBranch> branches)
    : branches_(std::move(branches)) {
    if (branches_.empty()) throw InputError("piecewise map needs at least one branch");
    for (const auto& b : branches_) {
        if (b.lo > b.hi) throw InputError("piecewise branch has lo > hi");
        if (b.lo == b.hi && !(b.closed_lo && b.closed_hi)) {
            throw InputError("degenerate piecewise branch must be closed");
        }
        if (b.expr.uses_variable('y')) {
            throw InputError("piecewise branch expressions may use x only");
        }
    }
    // Pairwise disjointness is an exact interval check.
    for (std::size_t i = 0; i < branches_.size(); ++i) {
        for (std::size_t j = i + 1; j < branches_.size(); ++j) {
            const auto& a = branches_[i];
            const auto& b = branches_[j];
            Rational lo = std::max(a.lo, b.lo);
            Rational hi = std::min(a.hi, b.hi);
            if (lo > hi) continue;
            if (lo < hi) throw InputError("piecewise branches overlap");
            // Single shared endpoint; overlap only if both sides include it.
            bool a_takes = a.covers(lo);
            bool b_takes = b.covers(lo);
            if (a_takes && b_takes) throw InputError("piecewise branches overlap");
        }
    }
}

Rational PiecewiseMap::apply(const Rational& x) const {
    for (const auto& b : branches_) {
        if (b.covers(x)) return b.expr.evaluate(x);
    }
    throw InputError("piecewise map has no branch covering " + to_string(x));
}

void validate_piecewise(const IntervalGridSpace& space, const PiecewiseMap& map) {
    for (const Rational& x : space.points()) {
        Rational image = map.apply(x);  // throws on a coverage gap
        if (!space.contains(image)) {
            throw InputError("piecewise map leaves the interval: T(" + to_string(x) + ") = " +
                             to_string(image));
        }
    }
}

void validate_table(const FiniteMetricSpace& space, const TableMap& map) {
    if (map.size() != space.size()) throw InputError("table map size does not match space");
}

std::pair<FiniteMetricSpace, TableMap> discretize(const IntervalGridSpace& space,
                                                  const PiecewiseMap& map) {
    validate_piecewise(space, map);
    std::vector<std::string> labels;
    labels.reserve(space.size());
    for (const Rational& x : space.points()) labels.push_back(to_string(x));

    std::vector<std::vector<Rational>> dist(space.size(), std::vector<Rational>(space.size()));
    for (std::size_t p = 0; p < space.size(); ++p) {
        for (std::size_t q = 0; q < space.size(); ++q) {
            dist[p][q] = space.distance(space.points()[p], space.points()[q]);
        }
    }

    std::vector<std::size_t> image(space.size());
    for (std::size_t p = 0; p < space.size(); ++p) {
        Rational value = map.apply(space.points()[p]);
        auto idx = space.index_of(value);
        if (!idx) {
            throw InputError("cannot discretize: T(" + to_string(space.points()[p]) + ") = " +
                             to_string(value) + " is not a grid point");
        }
        image[p] = *idx;
    }
    return {FiniteMetricSpace(std::move(labels), std::move(dist)), TableMap(std::move(image))};
}

OrbitDecomposition orbit(const TableMap& map, std::size_t z0) {
    if (z0 >= map.size()) throw InputError("start point out of range");
    std::vector<std::size_t> path;
    std::vector<std::size_t> first_seen(map.size(), map.size());  // path position or sentinel
    std::size_t current = z0;
    while (first_seen[current] == map.size()) {
        first_seen[current] = path.size();
        path.push_back(current);
        current = map.apply(current);
    }
    const std::size_t cycle_start = first_seen[current];
    OrbitDecomposition result;
    result.start = z0;
    result.tail.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(cycle_start));
    result.cycle.assign(path.begin() + static_cast<std::ptrdiff_t>(cycle_start), path.end());
    return result;
}

std::vector<std::size_t> fixed_points(const TableMap& map) {
    std::vector<std::size_t> fixed;
    for (std::size_t p = 0; p < map.size(); ++p) {
        if (map.apply(p) == p) fixed.push_back(p);
    }
    return fixed;
}

PicardContinuityReport is_picard_continuous(const TableMap& map) {
    PicardContinuityReport report;
    for (std::size_t z = 0; z < map.size(); ++z) {
        PicardContinuityReport::Entry entry;
        entry.start = z;
        OrbitDecomposition od = orbit(map, z);
        entry.converges = od.cycle_length() == 1;
        entry.implication_holds = true;
        if (entry.converges) {
            const std::size_t w = od.cycle.front();
            entry.limit = w;
            // The image sequence T(T^n z) is the orbit shifted by one step;
            // it converges iff its cycle has length 1, and the implication
            // asks that its limit be T(w).
            OrbitDecomposition shifted = orbit(map, map.apply(z));
            entry.implication_holds =
                shifted.cycle_length() == 1 && shifted.cycle.front() == map.apply(w);
        }
        if (!entry.implication_holds) report.holds = false;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

WeaklyPicardReport is_weakly_picard(const TableMap& map) {
    WeaklyPicardReport report;
    report.fixed_points_nonempty = !fixed_points(map).empty();
    report.holds = report.fixed_points_nonempty;
    for (std::size_t z = 0; z < map.size(); ++z) {
        if (orbit(map, z).cycle_length() != 1) {
            report.holds = false;
            report.witness = z;
            break;
        }
    }
    return report;
}

}  // namespace polycontract
