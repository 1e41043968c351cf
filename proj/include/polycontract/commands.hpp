#pragma once

#include "polycontract/cert_search.hpp"
#include "polycontract/document.hpp"
#include "polycontract/report.hpp"

#include <string>
#include <string_view>

namespace polycontract {

/// Outcome of one CLI command: the exit code (0 pass, 1 a mathematical
/// check failed, input errors are thrown as InputError and map to 2), the
/// machine-readable report, and the human rendering of the same data.
struct CommandResult {
    int exit_code = 0;
    report::Json machine;
    std::string human;
};

struct IterateOptions {
    std::string start;
    Rational tolerance = 0;
    std::size_t max_iter = 100000;
    bool bound_check = false;
};

struct SearchOptions {
    unsigned k = 1;
    FamilyMode mode = FamilyMode::full;
    Rational lambda_tol = default_lambda_tol();
};

/// Metric axioms plus document well-formedness (map totality and closure,
/// family arity, certificate ranges). Exit 0 valid, 1 invalid.
CommandResult cmd_validate(const ProblemDocument& doc);

/// Dispatches on the document kind: Banach / Kannan ratios, the almost
/// contraction at (lambda, ell), or the (almost-)polynomial certificate.
/// For certificate kinds the claimed lower bound a_j >= A_j is checked
/// along with the inequality. Exit 0 pass, 1 fail or infeasible.
CommandResult cmd_verify(const ProblemDocument& doc);

/// Runs Picard iteration from a start point; optionally checks the
/// a-priori bound derived from the document's certificate. Exit 0 when
/// the orbit converged (and a hard bound check held).
CommandResult cmd_iterate(const ProblemDocument& doc, const IterateOptions& opts);

/// Certificate synthesis on finite spaces (kinds polynomial and
/// almost-polynomial). The found certificate is re-verified before
/// reporting. Exit 0 found, 1 infeasible-below-one.
CommandResult cmd_search(const ProblemDocument& doc, const SearchOptions& opts);

/// Built-in demo problems; runs the full pipeline and compares every
/// computed value against the expected value embedded with the demo.
/// Exit 0 when everything reproduces, 1 otherwise.
CommandResult cmd_demo(std::string_view name);

}  // namespace polycontract
