#pragma once

// Deterministic random instance generators shared by the unit and
// acceptance suites. Every test fixes its own seed.

#include "polycontract/metric_space.hpp"
#include "polycontract/self_map.hpp"

#include <random>
#include <string>
#include <vector>

namespace testsupport {

using polycontract::FiniteMetricSpace;
using polycontract::Rational;
using polycontract::TableMap;

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int max_num = 8, int max_den = 8) {
    std::uniform_int_distribution<int> num(0, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return Rational(num(rng), den(rng));
}

inline Rational random_positive_rational(Rng& rng, int max_num = 8, int max_den = 8) {
    std::uniform_int_distribution<int> num(1, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return Rational(num(rng), den(rng));
}

/// Symmetric zero-diagonal matrix with entries in {lo..hi}; triangle
/// inequality not enforced (for validator fuzzing).
inline std::vector<std::vector<Rational>> random_symmetric_matrix(Rng& rng, std::size_t n, int lo,
                                                                  int hi) {
    std::uniform_int_distribution<int> entry(lo, hi);
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            m[p][q] = m[q][p] = Rational(entry(rng));
        }
    }
    return m;
}

/// A genuine random metric: entries in {m..2m} automatically satisfy the
/// triangle inequality.
inline std::vector<std::vector<Rational>> random_metric_matrix(Rng& rng, std::size_t n) {
    return random_symmetric_matrix(rng, n, 3, 6);
}

inline std::vector<std::string> point_labels(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    return labels;
}

inline FiniteMetricSpace random_space(Rng& rng, std::size_t n) {
    return FiniteMetricSpace(point_labels(n), random_metric_matrix(rng, n));
}

inline TableMap random_table_map(Rng& rng, std::size_t n) {
    std::uniform_int_distribution<std::size_t> target(0, n - 1);
    std::vector<std::size_t> image(n);
    for (auto& t : image) t = target(rng);
    return TableMap(std::move(image));
}

}  // namespace testsupport
