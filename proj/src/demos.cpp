#include "polycontract/demos.hpp"

#include "polycontract/commands.hpp"
#include "polycontract/picard.hpp"

#include <algorithm>
#include <utility>

namespace polycontract {

namespace {

using report::Json;

// ---- embedded demo corpus ---------------------------------------------------
// The documents are compiled in so the demo pipeline and the shipped
// corpus cannot drift apart. `demo <name> --emit-document` prints them.

constexpr std::string_view kEx27 = R"json({
  "format": "polycontract/1",
  "kind": "polynomial",
  "space": {
    "type": "finite",
    "points": ["x1", "x2", "x3", "x4"],
    "dist": [[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]]
  },
  "map": {
    "type": "table",
    "images": {"x1": "x1", "x2": "x3", "x3": "x4", "x4": "x1"}
  },
  "family": {
    "k": 1,
    "a": [
      {"type": "table", "values": [[0, 3, 2, 1], [3, 0, 3, 6], [2, 3, 0, 2], [1, 6, 2, 0]]},
      {"type": "const", "value": 1}
    ]
  },
  "certificate": {"lambda": "3/4", "j": 1, "A_j": 1}
})json";

// Companion to ex2.7: the combined weight D = d + a_0 written as if it
// were a metric; the triangle inequality fails at (x2, x1, x4).
constexpr std::string_view kEx27NonMetric = R"json({
  "format": "polycontract/1",
  "kind": "banach",
  "space": {
    "type": "finite",
    "points": ["x1", "x2", "x3", "x4"],
    "dist": [[0, 4, 3, 2], [4, 0, 4, 7], [3, 4, 0, 3], [2, 7, 3, 0]]
  },
  "map": {
    "type": "table",
    "images": {"x1": "x1", "x2": "x3", "x3": "x4", "x4": "x1"}
  }
})json";

constexpr std::string_view kEx29 = R"json({
  "format": "polycontract/1",
  "kind": "banach",
  "space": {"type": "interval", "lo": 0, "hi": 1, "grid": 101},
  "map": {
    "type": "piecewise",
    "branches": [
      {"lo": 0, "hi": 1, "include_lo": true, "include_hi": false, "expr": "0"},
      {"lo": 1, "hi": 1, "expr": "1/2"}
    ]
  }
})json";

constexpr std::string_view kEx210 = R"json({
  "format": "polycontract/1",
  "kind": "polynomial",
  "space": {"type": "interval", "lo": 0, "hi": 1, "grid": 1001},
  "map": {
    "type": "piecewise",
    "branches": [
      {"lo": 0, "hi": 1, "include_lo": true, "include_hi": false, "expr": "1/4"},
      {"lo": 1, "hi": 1, "expr": "0"}
    ]
  },
  "family": {
    "k": 1,
    "a": [
      {"type": "expr", "source": "(5/6)*(x*abs(x - 1/4) + y*abs(y - 1/4))"},
      {"type": "const", "value": 1}
    ]
  },
  "certificate": {"lambda": "1/2", "j": 1, "A_j": 1}
})json";

constexpr std::string_view kEx36 = R"json({
  "format": "polycontract/1",
  "kind": "almost-polynomial",
  "space": {
    "type": "finite",
    "points": ["x1", "x2", "x3"],
    "dist": [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
  },
  "map": {
    "type": "table",
    "images": {"x1": "x1", "x2": "x2", "x3": "x1"}
  },
  "family": {
    "k": 2,
    "a": [
      {"type": "const", "value": 0},
      {"type": "const", "value": 1},
      {"type": "const", "value": 1}
    ]
  },
  "certificate": {"lambda": "2/3", "j": 1, "A_j": 1, "L": [1, "1/2", "1/2"]}
})json";

constexpr std::string_view kEx37 = R"json({
  "format": "polycontract/1",
  "kind": "almost-polynomial",
  "space": {"type": "interval", "lo": 0, "hi": 1, "grid": 1001},
  "map": {
    "type": "piecewise",
    "branches": [
      {"lo": 0, "hi": 1, "include_lo": true, "include_hi": false, "expr": "1/4"},
      {"lo": 1, "hi": 1, "expr": "0"}
    ]
  },
  "family": {
    "k": 1,
    "a": [
      {"type": "expr", "source": "abs(4*x^2 - 3*x + 1/2) + abs(4*y^2 - 3*y + 1/2)"},
      {"type": "const", "value": 1}
    ]
  },
  "certificate": {"lambda": "1/2", "j": 1, "A_j": 1, "L": [1, 1]}
})json";

// ---- check harness ----------------------------------------------------------

struct DemoRun {
    std::vector<std::string_view> failures;
    Json checks = Json::array();
    Json sections = Json::object();
    std::string human;

    void expect(std::string_view name, const std::string& expected, const std::string& actual) {
        const bool ok = expected == actual;
        checks.push_back(Json{{"name", std::string(name)},
                              {"expected", expected},
                              {"actual", actual},
                              {"ok", ok}});
        human += ok ? "  [ ok ] " : "  [FAIL] ";
        human += name;
        if (ok) {
            human += ": " + actual;
        } else {
            human += ": expected " + expected + ", got " + actual;
        }
        human += '\n';
        if (!ok) failures.push_back(name);
    }

    void expect_true(std::string_view name, bool condition) {
        expect(name, "true", condition ? "true" : "false");
    }

    bool ok() const { return failures.empty(); }
};

std::string limit_or_none(const PicardTrace& t) { return t.limit ? *t.limit : "none"; }

std::string joined(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += " ";
        out += p;
    }
    return out;
}

// ---- ex2.7: 4-point discrete space, weighted degree-1 certificate ----------

void run_ex27(DemoRun& demo) {
    ProblemDocument doc = parse_document(kEx27);
    FiniteMetricSpace space = doc.finite_space();
    TableMap map = doc.table_map(space);
    PolynomialCertificate cert = doc.polynomial_certificate();

    demo.expect_true("metric valid", !validate_metric(doc.finite_data().dist).has_value());

    ScanOptions opts;
    opts.collect_pairs = true;
    VerifyResult vr = verify_polynomial(space, map, cert, opts);
    demo.expect("verify status", "pass", to_string(vr.verdict.status));
    demo.expect("min feasible lambda", "3/4",
                vr.verdict.min_feasible_lambda ? to_string(*vr.verdict.min_feasible_lambda) : "none");
    demo.expect("worst pair", "(x1, x2)",
                vr.verdict.worst_pair ? "(" + vr.verdict.worst_pair->first + ", " +
                                            vr.verdict.worst_pair->second + ")"
                                      : "none");

    // The five upper-triangle pairs with their two published columns.
    struct Expected {
        std::size_t p, q;
        const char* lhs;
        const char* rhs;
    };
    const Expected table[] = {
        {0, 1, "3", "4"}, {0, 2, "2", "3"}, {1, 2, "3", "4"}, {1, 3, "3", "7"}, {2, 3, "2", "3"},
    };
    for (const Expected& e : table) {
        auto row = std::find_if(vr.pairs.begin(), vr.pairs.end(), [&](const PairRow& r) {
            return r.p == e.p && r.q == e.q;
        });
        const std::string name = "pair (" + space.label(e.p) + ", " + space.label(e.q) + ")";
        if (row == vr.pairs.end()) {
            demo.expect(name, std::string(e.lhs) + " | " + e.rhs, "missing");
        } else {
            demo.expect(name, std::string(e.lhs) + " | " + e.rhs,
                        to_string(row->lhs) + " | " + to_string(row->rhs));
        }
    }
    demo.sections["pairs"] = report::pair_rows_json(
        vr.pairs, [&](std::size_t p) { return space.label(p); });

    LipschitzReport banach = verify_banach(space, map);
    demo.expect("banach ratio", "1", to_string(banach.ratio));
    demo.expect_true("banach inapplicable", !(banach.ratio < 1));

    auto fixed = fixed_points(map);
    std::vector<std::string> fixed_labels;
    for (std::size_t p : fixed) fixed_labels.push_back(space.label(p));
    demo.expect("fixed points", "x1", joined(fixed_labels));

    OrbitDecomposition od = orbit(map, 1);
    std::vector<std::string> tail, cycle;
    for (std::size_t p : od.tail) tail.push_back(space.label(p));
    for (std::size_t p : od.cycle) cycle.push_back(space.label(p));
    demo.expect("orbit of x2: tail", "x2 x3 x4", joined(tail));
    demo.expect("orbit of x2: cycle", "x1", joined(cycle));

    for (std::size_t z0 = 0; z0 < space.size(); ++z0) {
        PicardTrace t = iterate(space, map, z0);
        demo.expect("limit from " + space.label(z0), "x1", limit_or_none(t));
        demo.expect_true("steps from " + space.label(z0) + " <= 3", t.steps_to_limit() <= 3);
    }

    PicardTrace t2 = iterate(space, map, 1);
    demo.expect("trace from x2", "x2 x3 x4 x1 x1", joined(t2.iterates));

    Rational sigma = sigma0(space, map, cert.family, 1, Rational(1), 1);
    demo.expect("sigma from x2", "4", to_string(sigma));
    const char* expected_bounds[] = {"16", "12", "9", "27/4", "81/16"};
    for (std::size_t n = 0; n < 5; ++n) {
        BoundValue b = a_priori_bound(n, 1, cert.lambda, sigma);
        demo.expect("a-priori bound n=" + std::to_string(n), expected_bounds[n], to_string(b.value));
    }
    BoundCheckReport bounds = check_bound_against_trace(t2, 1, cert.lambda, sigma);
    demo.expect_true("observed distances within bound", bounds.all_within);
    demo.sections["bound_check"] = report::bound_check_json(bounds);

    // D = d + a_0 looks like a shortcut metric but breaks the triangle
    // inequality; the scan pins the witness.
    ProblemDocument companion = parse_document(kEx27NonMetric);
    auto violation = validate_metric(companion.finite_data().dist);
    if (violation) {
        demo.expect("companion weight kind", "triangle", to_string(violation->kind));
        std::vector<std::string> witness;
        for (std::size_t p : violation->witness) witness.push_back(companion.finite_data().points[p]);
        demo.expect("companion weight witness", "x2 x1 x4", joined(witness));
        demo.expect("companion weight comparison", "7 > 6",
                    to_string(violation->left) + " > " + to_string(violation->right));
        demo.sections["companion_violation"] =
            report::violation_json(*violation, companion.finite_data().points);
    } else {
        demo.expect("companion weight kind", "triangle", "valid");
    }
}

// ---- ex2.9: jump map on [0,1]; Picard-continuous, not continuous ----------

void run_ex29(DemoRun& demo) {
    ProblemDocument doc = parse_document(kEx29);
    IntervalGridSpace space = doc.interval_space();
    PiecewiseMap map = doc.piecewise_map();
    validate_piecewise(space, map);

    auto [finite, table] = discretize(space, map);
    PicardContinuityReport pc = is_picard_continuous(table);
    demo.expect_true("picard-continuous on the grid", pc.holds);
    WeaklyPicardReport wp = is_weakly_picard(table);
    demo.expect_true("weakly picard on the grid", wp.holds);

    // Continuity fails at the right endpoint: the grid neighbour of 1 maps
    // to 0 while 1 maps to 1/2.
    const Rational near_end = space.point(space.size() - 2);
    demo.expect("d(p, 1) at the last interior grid point", "1/100",
                to_string(space.distance(near_end, space.hi())));
    demo.expect("d(Tp, T1) jump", "1/2",
                to_string(space.distance(map.apply(near_end), map.apply(space.hi()))));

    LipschitzReport banach = verify_banach(space, map);
    demo.expect("lipschitz ratio on the grid", "50", to_string(banach.ratio));
    demo.expect_true("not a banach contraction", !(banach.ratio < 1));

    PicardTrace from_one = iterate(space, map, Rational(1));
    demo.expect("trace from 1", "1 1/2 0 0", joined(from_one.iterates));
    demo.expect("limit from 1", "0", limit_or_none(from_one));
    PicardTrace from_half = iterate(space, map, Rational(1, 2));
    demo.expect("limit from 1/2", "0", limit_or_none(from_half));
    demo.sections["trace_from_1"] = report::trace_json(from_one);
}

// ---- ex2.10: grid-verified degree-1 certificate at lambda = 1/2 -----------

void run_ex210(DemoRun& demo) {
    ProblemDocument doc = parse_document(kEx210);
    IntervalGridSpace space = doc.interval_space();
    PiecewiseMap map = doc.piecewise_map();
    PolynomialCertificate cert = doc.polynomial_certificate();

    VerifyResult vr = verify_polynomial(space, map, cert);
    demo.expect("verify status (grid)", "pass", to_string(vr.verdict.status));
    demo.expect_true("grid-verified flag", vr.verdict.grid_verified);
    demo.sections["verdict"] = report::verdict_json(vr.verdict);

    SideValues mid = polynomial_sides(space, map, cert, Rational(1, 2), Rational(1));
    demo.expect("lhs at (1/2, 1)", "1/4", to_string(mid.lhs));
    SideValues corner = polynomial_sides(space, map, cert, Rational(1), Rational(1));
    demo.expect("lhs at (1, 1)", "0", to_string(corner.lhs));

    PicardTrace t = iterate(space, map, Rational(1));
    demo.expect("trace from 1", "1 0 1/4 1/4", joined(t.iterates));
    demo.expect("limit from 1", "1/4", limit_or_none(t));
    demo.expect_true("reaches the fixed point within 3 steps", t.steps_to_limit() <= 3);
    demo.expect("fixed point check T(1/4)", "1/4", to_string(map.apply(Rational(1, 4))));

    Rational sigma = sigma0(space, map, cert.family, 1, Rational(1), Rational(1));
    demo.expect("sigma from 1", "13/8", to_string(sigma));
    BoundCheckReport bounds = check_bound_against_trace(t, 1, cert.lambda, sigma);
    demo.expect_true("observed distances within bound", bounds.all_within);
    demo.sections["bound_check"] = report::bound_check_json(bounds);
    demo.sections["trace_from_1"] = report::trace_json(t);
}

// ---- ex3.6: two fixed points, weakly Picard, degree-2 almost form ----------

void run_ex36(DemoRun& demo) {
    ProblemDocument doc = parse_document(kEx36);
    FiniteMetricSpace space = doc.finite_space();
    TableMap map = doc.table_map(space);
    AlmostPolynomialCertificate cert = doc.almost_polynomial_certificate();

    ScanOptions opts;
    opts.collect_pairs = true;
    VerifyResult vr = verify_almost_polynomial(space, map, cert, opts);
    demo.expect("verify status", "pass", to_string(vr.verdict.status));
    demo.expect("min feasible lambda", "2/3",
                vr.verdict.min_feasible_lambda ? to_string(*vr.verdict.min_feasible_lambda) : "none");

    const std::pair<std::size_t, std::size_t> published[] = {{0, 1}, {1, 0}, {1, 2}, {2, 1}};
    for (auto [p, q] : published) {
        auto row = std::find_if(vr.pairs.begin(), vr.pairs.end(), [&](const PairRow& r) {
            return r.p == p && r.q == q;
        });
        const std::string name = "pair (" + space.label(p) + ", " + space.label(q) + ")";
        if (row == vr.pairs.end()) {
            demo.expect(name, "2 | 3", "missing");
        } else {
            demo.expect(name, "2 | 3", to_string(row->lhs) + " | " + to_string(row->rhs));
        }
    }
    demo.sections["pairs"] = report::pair_rows_json(
        vr.pairs, [&](std::size_t p) { return space.label(p); });

    auto fixed = fixed_points(map);
    std::vector<std::string> fixed_labels;
    for (std::size_t p : fixed) fixed_labels.push_back(space.label(p));
    demo.expect("fixed points", "x1 x2", joined(fixed_labels));
    demo.expect_true("weakly picard", is_weakly_picard(map).holds);

    PicardTrace from_x3 = iterate(space, map, 2);
    PicardTrace from_x2 = iterate(space, map, 1);
    demo.expect("limit from x3", "x1", limit_or_none(from_x3));
    demo.expect("limit from x2", "x2", limit_or_none(from_x2));
    demo.expect_true("orbits reach two distinct fixed points",
                     from_x3.limit && from_x2.limit && *from_x3.limit != *from_x2.limit);

    Verdict almost = verify_almost_contraction(space, map, Rational(2, 3), Rational(1, 3));
    demo.expect("almost contraction (lambda 2/3, ell 1/3)", "pass", to_string(almost.status));
}

// ---- ex3.7: grid-verified almost-polynomial with a tight boundary ----------

void run_ex37(DemoRun& demo) {
    ProblemDocument doc = parse_document(kEx37);
    IntervalGridSpace space = doc.interval_space();
    PiecewiseMap map = doc.piecewise_map();
    AlmostPolynomialCertificate cert = doc.almost_polynomial_certificate();

    VerifyResult vr = verify_almost_polynomial(space, map, cert);
    demo.expect("verify status (grid)", "pass", to_string(vr.verdict.status));
    demo.expect_true("grid-verified flag", vr.verdict.grid_verified);
    demo.sections["verdict"] = report::verdict_json(vr.verdict);

    // The boundary pairs (x, 1) with x < 1 sit exactly at lhs = 3/4.
    for (const Rational& x : {Rational(0), Rational(1, 2), Rational(999, 1000)}) {
        SideValues s = almost_polynomial_sides(space, map, cert, x, Rational(1));
        demo.expect("lhs at (" + to_string(x) + ", 1)", "3/4", to_string(s.lhs));
    }
    SideValues corner = almost_polynomial_sides(space, map, cert, Rational(1), Rational(1));
    demo.expect("lhs at (1, 1)", "1", to_string(corner.lhs));
    demo.expect("rhs base at (1, 1)", "7", to_string(corner.rhs));

    LowerBoundReport lb = check_lower_bound_condition(space, cert.family, 1);
    demo.expect("min a_1", "1", to_string(lb.min_value));

    PicardTrace t = iterate(space, map, Rational(1));
    demo.expect("limit from 1", "1/4", limit_or_none(t));
}

struct DemoEntry {
    std::string_view name;
    std::string_view doc;
    void (*run)(DemoRun&);
};

constexpr DemoEntry kDemos[] = {
    {"ex2.7", kEx27, run_ex27},   {"ex2.9", kEx29, run_ex29}, {"ex2.10", kEx210, run_ex210},
    {"ex3.6", kEx36, run_ex36},   {"ex3.7", kEx37, run_ex37},
};

const DemoEntry* find_demo(std::string_view name) {
    for (const DemoEntry& entry : kDemos) {
        if (entry.name == name) return &entry;
    }
    return nullptr;
}

}  // namespace

namespace demos {

std::vector<std::string_view> names() {
    std::vector<std::string_view> out;
    for (const DemoEntry& entry : kDemos) out.push_back(entry.name);
    return out;
}

std::string_view document(std::string_view name) {
    const DemoEntry* entry = find_demo(name);
    if (!entry) throw InputError("unknown demo '" + std::string(name) + "'");
    return entry->doc;
}

}  // namespace demos

CommandResult cmd_demo(std::string_view name) {
    const DemoEntry* entry = find_demo(name);
    if (!entry) throw InputError("unknown demo '" + std::string(name) + "'");

    DemoRun demo;
    demo.human = "demo " + std::string(name) + "\n";
    entry->run(demo);

    CommandResult result;
    result.machine = report::envelope("demo", entry->doc);
    result.machine["demo"] = std::string(name);
    result.machine["checks"] = demo.checks;
    result.machine["sections"] = demo.sections;
    result.machine["all_ok"] = demo.ok();
    result.human = std::move(demo.human);
    result.human += demo.ok() ? "  all checks reproduced\n" : "  SOME CHECKS FAILED\n";
    result.exit_code = demo.ok() ? 0 : 1;
    return result;
}

}  // namespace polycontract
