#include "polycontract/simplex.hpp"

#include <utility>

namespace polycontract {

std::size_t FeasibilityProblem::add_variable(std::string name) {
    variable_names.push_back(std::move(name));
    return variable_names.size() - 1;
}

void FeasibilityProblem::add_constraint(LinearConstraint c) {
    constraints.push_back(std::move(c));
}

namespace {

// Phase-1 tableau: rows are equality constraints over original variables,
// slacks, and artificials; the extra row carries the reduced costs of
// w = sum of artificials, so that the stored objective entry is -w.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : cols_(cols), cells_((rows + 1) * (cols + 1), Rational(0)) {}

    Rational& at(std::size_t row, std::size_t col) { return cells_[row * (cols_ + 1) + col]; }
    const Rational& at(std::size_t row, std::size_t col) const {
        return cells_[row * (cols_ + 1) + col];
    }

private:
    std::size_t cols_;
    std::vector<Rational> cells_;
};

}  // namespace

std::optional<std::vector<Rational>> lp_feasible(const FeasibilityProblem& problem) {
    const std::size_t n = problem.variable_names.size();
    for (const LinearConstraint& c : problem.constraints) {
        if (c.coeffs.size() != n) {
            throw InputError("constraint arity does not match the variable count");
        }
    }

    // Normalize to A x (le|eq) b without ge rows.
    struct Row {
        std::vector<Rational> coeffs;
        Rational rhs;
        bool is_eq;
    };
    std::vector<Row> rows;
    rows.reserve(problem.constraints.size());
    for (const LinearConstraint& c : problem.constraints) {
        Row row{c.coeffs, c.rhs, c.rel == Rel::eq};
        if (c.rel == Rel::ge) {
            for (Rational& v : row.coeffs) v = -v;
            row.rhs = -row.rhs;
        }
        rows.push_back(std::move(row));
    }

    const std::size_t m = rows.size();
    if (m == 0) return std::vector<Rational>(n, Rational(0));

    // Column layout: originals, one slack per le row, artificials as needed.
    std::size_t num_slacks = 0;
    for (const Row& r : rows) {
        if (!r.is_eq) ++num_slacks;
    }

    // A row keeps its slack as the initial basic variable only when the
    // right side is non-negative (slack coefficient stays +1).
    std::vector<int> slack_col(m, -1);
    std::vector<bool> needs_artificial(m, false);
    std::size_t num_artificials = 0;
    {
        std::size_t next_slack = n;
        for (std::size_t i = 0; i < m; ++i) {
            if (!rows[i].is_eq) {
                slack_col[i] = static_cast<int>(next_slack++);
            }
            const bool negative_rhs = rows[i].rhs < 0;
            if (rows[i].is_eq || negative_rhs) {
                needs_artificial[i] = true;
                ++num_artificials;
            }
        }
    }

    const std::size_t cols = n + num_slacks + num_artificials;
    Tableau t(m, cols);
    std::vector<std::size_t> basis(m);

    std::size_t next_artificial = n + num_slacks;
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = rows[i].rhs < 0;
        for (std::size_t jcol = 0; jcol < n; ++jcol) {
            t.at(i, jcol) = flip ? Rational(-rows[i].coeffs[jcol]) : rows[i].coeffs[jcol];
        }
        if (slack_col[i] >= 0) {
            t.at(i, static_cast<std::size_t>(slack_col[i])) = flip ? Rational(-1) : Rational(1);
        }
        t.at(i, cols) = flip ? Rational(-rows[i].rhs) : rows[i].rhs;
        if (needs_artificial[i]) {
            const std::size_t acol = next_artificial++;
            t.at(i, acol) = 1;
            basis[i] = acol;
        } else {
            basis[i] = static_cast<std::size_t>(slack_col[i]);
        }
    }

    // Objective row: w = sum of artificials, expressed in the nonbasic
    // variables. Entry (m, cols) holds -w.
    const std::size_t obj = m;
    for (std::size_t i = 0; i < m; ++i) {
        if (!needs_artificial[i]) continue;
        for (std::size_t jcol = 0; jcol <= cols; ++jcol) {
            t.at(obj, jcol) -= t.at(i, jcol);
        }
    }
    // Artificial columns start basic; their reduced costs must be zero.
    // The subtraction above put -1 there and the +1 cost cancels it.
    for (std::size_t col = n + num_slacks; col < cols; ++col) {
        t.at(obj, col) += 1;
    }

    auto pivot = [&](std::size_t prow, std::size_t pcol) {
        const Rational inv = 1 / t.at(prow, pcol);
        for (std::size_t jcol = 0; jcol <= cols; ++jcol) {
            t.at(prow, jcol) *= inv;
        }
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == prow) continue;
            const Rational factor = t.at(i, pcol);
            if (factor == 0) continue;
            for (std::size_t jcol = 0; jcol <= cols; ++jcol) {
                t.at(i, jcol) -= factor * t.at(prow, jcol);
            }
        }
        basis[prow] = pcol;
    };

    while (true) {
        // Bland: entering column = smallest index with negative reduced cost.
        std::size_t entering = cols;
        for (std::size_t jcol = 0; jcol < cols; ++jcol) {
            if (t.at(obj, jcol) < 0) {
                entering = jcol;
                break;
            }
        }
        if (entering == cols) break;  // optimal

        // Ratio test; Bland tie-break on the smallest basic variable index.
        std::size_t leaving = m;
        Rational best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (t.at(i, entering) <= 0) continue;
            Rational ratio = t.at(i, cols) / t.at(i, entering);
            if (leaving == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leaving])) {
                leaving = i;
                best_ratio = std::move(ratio);
            }
        }
        if (leaving == m) {
            // w is bounded below by 0, so phase-1 can never be unbounded.
            throw std::logic_error("phase-1 simplex detected an unbounded direction");
        }
        pivot(leaving, entering);
    }

    if (t.at(obj, cols) != 0) return std::nullopt;  // -w < 0: infeasible

    std::vector<Rational> witness(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n) witness[basis[i]] = t.at(i, cols);
    }
    return witness;
}

}  // namespace polycontract
