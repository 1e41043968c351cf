#pragma once

#include "polycontract/expr.hpp"
#include "polycontract/metric_space.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace polycontract {

/// Self-map of a finite space as an image table over point indices.
class TableMap {
public:
    explicit TableMap(std::vector<std::size_t> image);

    std::size_t size() const { return image_.size(); }
    std::size_t apply(std::size_t p) const;
    const std::vector<std::size_t>& image() const { return image_; }

private:
    std::vector<std::size_t> image_;
};

/// One branch of a piecewise map: an interval with independently open or
/// closed ends and an expression in x.
struct PiecewiseBranch {
    Rational lo;
    Rational hi;
    bool closed_lo = true;
    bool closed_hi = true;
    Expression expr;

    bool covers(const Rational& x) const;
};

/// Self-map of an interval given by disjoint branches. Branch selection
/// and evaluation are exact; the image of a grid point may be any
/// rational inside [lo, hi], not necessarily a grid point.
class PiecewiseMap {
public:
    explicit PiecewiseMap(std::vector<PiecewiseBranch> branches);

    const std::vector<PiecewiseBranch>& branches() const { return branches_; }

    /// Evaluates the unique covering branch; a coverage gap is an input error.
    Rational apply(const Rational& x) const;

private:
    std::vector<PiecewiseBranch> branches_;
};

using SelfMap = std::variant<TableMap, PiecewiseMap>;

/// Checks totality and closure of a piecewise map against a grid: every
/// grid point is covered by exactly one branch and maps into [lo, hi].
/// Throws InputError otherwise.
void validate_piecewise(const IntervalGridSpace& space, const PiecewiseMap& map);

/// Checks that a table map is total over the space and closed (indices in
/// range). Throws InputError otherwise.
void validate_table(const FiniteMetricSpace& space, const TableMap& map);

/// Materializes a piecewise map on the grid as a finite space plus table
/// map (labels are the canonical rational strings of the grid points).
/// Requires every image to be a grid point; throws InputError otherwise.
std::pair<FiniteMetricSpace, TableMap> discretize(const IntervalGridSpace& space,
                                                  const PiecewiseMap& map);

/// Exact eventually-periodic decomposition of a Picard orbit on a finite
/// space: tail, cycle, and cycle length, with no omissions.
struct OrbitDecomposition {
    std::size_t start;
    std::vector<std::size_t> tail;
    std::vector<std::size_t> cycle;
    std::size_t cycle_length() const { return cycle.size(); }
};

OrbitDecomposition orbit(const TableMap& map, std::size_t z0);

/// Points p with T(p) = p.
std::vector<std::size_t> fixed_points(const TableMap& map);

/// Literal check of Picard continuity on a finite space: whenever the
/// orbit of z converges (is eventually constant) to w, the image sequence
/// must converge to T(w). On a finite space convergence forces eventual
/// constancy, so the check is decidable; it holds for every self-map.
struct PicardContinuityReport {
    struct Entry {
        std::size_t start;
        bool converges;                    // orbit eventually constant
        std::optional<std::size_t> limit;  // w, when it converges
        bool implication_holds;            // T(T^n z) -> T(w)
    };
    bool holds = true;
    std::vector<Entry> entries;
};

PicardContinuityReport is_picard_continuous(const TableMap& map);

/// Weakly-Picard check: the fixed-point set is nonempty and every orbit
/// converges to a fixed point. On failure, witness is a start point whose
/// orbit ends in a cycle of length > 1.
struct WeaklyPicardReport {
    bool holds = false;
    bool fixed_points_nonempty = false;
    std::optional<std::size_t> witness;
};

WeaklyPicardReport is_weakly_picard(const TableMap& map);

}  // namespace polycontract
