#include "pair_eval.hpp"

#include "polycontract/errors.hpp"

namespace polycontract::detail {

PairEvaluator::PairEvaluator(const Expression& expr, const std::vector<Rational>* xs,
                             const std::vector<Rational>* ys)
    : xs_(xs), ys_(ys) {
    root_ = flatten(expr.root());
}

int PairEvaluator::flatten(const Expression::Node& node) {
    FlatNode flat;
    flat.kind = node.kind;
    switch (node.kind) {
        case Expression::Kind::constant:
            flat.value = node.value;
            flat.mask = kNone;
            break;
        case Expression::Kind::variable:
            flat.var = node.var;
            flat.mask = node.var == 'x' ? kX : kY;
            break;
        default: {
            flat.child0 = flatten(node.children[0]);
            flat.mask = nodes_[static_cast<std::size_t>(flat.child0)].mask;
            if (node.children.size() > 1) {
                flat.child1 = flatten(node.children[1]);
                flat.mask |= nodes_[static_cast<std::size_t>(flat.child1)].mask;
            }
            break;
        }
    }
    if (flat.mask == kX) {
        flat.cache = static_cast<int>(xcaches_.size());
        xcaches_.emplace_back();
    } else if (flat.mask == kY) {
        flat.cache = static_cast<int>(ycaches_.size());
        ycaches_.emplace_back();
    }
    nodes_.push_back(std::move(flat));
    const int idx = static_cast<int>(nodes_.size()) - 1;
    // Fold variable-free subtrees to a single constant.
    if (nodes_.back().mask == kNone && nodes_.back().kind != Expression::Kind::constant) {
        Rational folded = eval_pure(idx, 0);
        FlatNode& n = nodes_.back();
        n.kind = Expression::Kind::constant;
        n.value = std::move(folded);
        n.child0 = n.child1 = -1;
    }
    return idx;
}

Rational PairEvaluator::eval_pure(int idx, const Rational& v) const {
    const FlatNode& node = nodes_[static_cast<std::size_t>(idx)];
    switch (node.kind) {
        case Expression::Kind::constant: return node.value;
        case Expression::Kind::variable: return v;
        case Expression::Kind::negate: return -eval_pure(node.child0, v);
        case Expression::Kind::sum: return eval_pure(node.child0, v) + eval_pure(node.child1, v);
        case Expression::Kind::product:
            return eval_pure(node.child0, v) * eval_pure(node.child1, v);
        case Expression::Kind::abs_value: return rational_abs(eval_pure(node.child0, v));
    }
    throw InputError("corrupt expression node");
}

void PairEvaluator::warm_up() {
    for (std::size_t idx = 0; idx < nodes_.size(); ++idx) {
        const FlatNode& node = nodes_[idx];
        if (node.cache < 0) continue;
        const bool is_x = node.mask == kX;
        const std::vector<Rational>& values = is_x ? *xs_ : *ys_;
        auto& cache = is_x ? xcaches_[static_cast<std::size_t>(node.cache)]
                           : ycaches_[static_cast<std::size_t>(node.cache)];
        cache.clear();
        cache.reserve(values.size());
        for (const Rational& v : values) {
            cache.push_back(eval_pure(static_cast<int>(idx), v));
        }
    }
}

Rational PairEvaluator::eval_at(int idx, std::size_t xi, std::size_t yi) const {
    const FlatNode& node = nodes_[static_cast<std::size_t>(idx)];
    if (node.cache >= 0) {
        return node.mask == kX ? xcaches_[static_cast<std::size_t>(node.cache)][xi]
                               : ycaches_[static_cast<std::size_t>(node.cache)][yi];
    }
    switch (node.kind) {
        case Expression::Kind::constant: return node.value;
        case Expression::Kind::variable: return node.var == 'x' ? (*xs_)[xi] : (*ys_)[yi];
        case Expression::Kind::negate: return -eval_at(node.child0, xi, yi);
        case Expression::Kind::sum:
            return eval_at(node.child0, xi, yi) + eval_at(node.child1, xi, yi);
        case Expression::Kind::product:
            return eval_at(node.child0, xi, yi) * eval_at(node.child1, xi, yi);
        case Expression::Kind::abs_value: return rational_abs(eval_at(node.child0, xi, yi));
    }
    throw InputError("corrupt expression node");
}

Rational PairEvaluator::at(std::size_t xi, std::size_t yi) const {
    return eval_at(root_, xi, yi);
}

}  // namespace polycontract::detail
