#pragma once

// Internal: cached evaluation of an Expression over the cross product of
// two fixed value lists. Subtrees that touch only x (or only y) are
// evaluated once per point and cached, so a separable coefficient like
// f(x) + g(y) costs one addition per pair instead of a full tree walk.

#include "polycontract/expr.hpp"
#include "polycontract/rational.hpp"

#include <cstddef>
#include <vector>

namespace polycontract::detail {

class PairEvaluator {
public:
    PairEvaluator(const Expression& expr, const std::vector<Rational>* xs,
                  const std::vector<Rational>* ys);

    /// Fills all single-variable caches. Must be called before concurrent
    /// use of at().
    void warm_up();

    /// expr(xs[xi], ys[yi]); exact. Thread-safe after warm_up().
    Rational at(std::size_t xi, std::size_t yi) const;

private:
    enum Mask : unsigned { kNone = 0, kX = 1, kY = 2, kBoth = 3 };

    struct FlatNode {
        Expression::Kind kind;
        Rational value;  // constant nodes and kNone-mask folded values
        char var = 'x';
        int child0 = -1, child1 = -1;
        unsigned mask = kNone;
        int cache = -1;  // index into xcaches_/ycaches_ for pure nodes
    };

    int flatten(const Expression::Node& node);
    Rational eval_at(int idx, std::size_t xi, std::size_t yi) const;
    Rational eval_pure(int idx, const Rational& v) const;

    const std::vector<Rational>* xs_;
    const std::vector<Rational>* ys_;
    std::vector<FlatNode> nodes_;
    int root_ = -1;
    std::vector<std::vector<Rational>> xcaches_;
    std::vector<std::vector<Rational>> ycaches_;
};

}  // namespace polycontract::detail
