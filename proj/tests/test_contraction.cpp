#include "polycontract/contraction.hpp"

#include "support/generators.hpp"

#include <doctest.h>

using namespace polycontract;

namespace {

std::vector<std::vector<Rational>> discrete(std::size_t n) {
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(1)));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    return d;
}

// 4-point example: T = (x1 x3 x4 x1), weighted degree-0 coefficient.
struct ChainExample {
    FiniteMetricSpace space{testsupport::point_labels(4), discrete(4)};
    TableMap map{{0, 2, 3, 0}};

    PolynomialCertificate certificate(Rational lambda = Rational(3, 4)) const {
        PairTable a0;
        a0.values = {
            {Rational(0), Rational(3), Rational(2), Rational(1)},
            {Rational(3), Rational(0), Rational(3), Rational(6)},
            {Rational(2), Rational(3), Rational(0), Rational(2)},
            {Rational(1), Rational(6), Rational(2), Rational(0)},
        };
        PolynomialCertificate cert;
        cert.lambda = std::move(lambda);
        cert.family.k = 1;
        cert.family.a = {Coefficient(std::move(a0)), Coefficient(Rational(1))};
        cert.witness_j = 1;
        cert.witness_Aj = 1;
        return cert;
    }
};

// 3-point example with two fixed points: T = (x1 x2 x1), k = 2.
struct TwoFixedExample {
    FiniteMetricSpace space{testsupport::point_labels(3), discrete(3)};
    TableMap map{{0, 1, 0}};

    AlmostPolynomialCertificate certificate(Rational lambda = Rational(2, 3)) const {
        AlmostPolynomialCertificate cert;
        cert.lambda = std::move(lambda);
        cert.family.k = 2;
        cert.family.a = {Coefficient(Rational(0)), Coefficient(Rational(1)),
                         Coefficient(Rational(1))};
        cert.witness_j = 1;
        cert.witness_Aj = 1;
        cert.L = {Rational(1), Rational(1, 2), Rational(1, 2)};
        return cert;
    }
};

// Independent recomputation of the minimal feasible lambda: brute force
// over ordered pairs using power_distance and Coefficient::at directly.
std::optional<Rational> brute_force_min_lambda(const FiniteMetricSpace& space, const TableMap& map,
                                               const CoefficientFamily& family) {
    std::optional<Rational> best;
    for (std::size_t p = 0; p < space.size(); ++p) {
        for (std::size_t q = 0; q < space.size(); ++q) {
            Rational lhs = 0, rhs = 0;
            for (unsigned i = 0; i <= family.k; ++i) {
                lhs += family.a[i].at(map.apply(p), map.apply(q)) *
                       power_distance(space, i, map.apply(p), map.apply(q));
                rhs += family.a[i].at(p, q) * power_distance(space, i, p, q);
            }
            if (rhs == 0) {
                if (lhs != 0) return std::nullopt;  // infeasible for every lambda
                continue;
            }
            Rational ratio = lhs / rhs;
            if (!best || ratio > *best) best = ratio;
        }
    }
    if (!best) best = Rational(0);
    return best;
}

}  // namespace

TEST_CASE("weighted degree-1 certificate passes at 3/4 with the published pair values") {
    ChainExample ex;
    ScanOptions opts;
    opts.collect_pairs = true;
    VerifyResult vr = verify_polynomial(ex.space, ex.map, ex.certificate(), opts);

    CHECK(vr.verdict.status == Verdict::Status::pass);
    REQUIRE(vr.verdict.min_feasible_lambda.has_value());
    CHECK(*vr.verdict.min_feasible_lambda == Rational(3, 4));
    REQUIRE(vr.verdict.worst_indices.has_value());
    CHECK(*vr.verdict.worst_indices == std::pair<std::size_t, std::size_t>{0, 1});

    auto row = [&](std::size_t p, std::size_t q) -> const PairRow& {
        for (const PairRow& r : vr.pairs) {
            if (r.p == p && r.q == q) return r;
        }
        REQUIRE(false);
        return vr.pairs.front();
    };
    CHECK(row(1, 3).lhs == Rational(3));
    CHECK(row(1, 3).rhs == Rational(7));
    CHECK(row(0, 1).lhs == Rational(3));
    CHECK(row(0, 1).rhs == Rational(4));
    CHECK(row(0, 2).lhs == Rational(2));
    CHECK(row(0, 2).rhs == Rational(3));
    CHECK(row(2, 3).lhs == Rational(2));
    CHECK(row(2, 3).rhs == Rational(3));

    // The family is symmetric, so the ratio table is too.
    for (const PairRow& r : vr.pairs) {
        CHECK(row(r.q, r.p).lhs == r.lhs);
        CHECK(row(r.q, r.p).rhs == r.rhs);
    }

    // Maximum attained at (x1,x2) and (x2,x3).
    CHECK(row(1, 2).lhs * 4 == row(1, 2).rhs * 3);
    // Fails just below the optimum.
    CHECK(verify_polynomial(ex.space, ex.map, ex.certificate(Rational(74, 100))).verdict.status ==
          Verdict::Status::fail);
}

TEST_CASE("constant map with a_1 = 1, a_0 = 0 passes vacuously at any lambda") {
    FiniteMetricSpace space(testsupport::point_labels(3), discrete(3));
    TableMap constant({1, 1, 1});
    PolynomialCertificate cert;
    cert.lambda = Rational(1, 10);
    cert.family.k = 1;
    cert.family.a = {Coefficient(Rational(0)), Coefficient(Rational(1))};
    cert.witness_j = 1;
    cert.witness_Aj = 1;
    VerifyResult vr = verify_polynomial(space, constant, cert);
    CHECK(vr.verdict.status == Verdict::Status::pass);
}

TEST_CASE("certificate invariants are enforced") {
    ChainExample ex;
    auto cert = ex.certificate();
    cert.lambda = Rational(1);
    CHECK_THROWS_AS(verify_polynomial(ex.space, ex.map, cert), InputError);
    cert = ex.certificate();
    cert.witness_j = 2;  // k = 1
    CHECK_THROWS_AS(verify_polynomial(ex.space, ex.map, cert), InputError);
    cert = ex.certificate();
    cert.family.a.pop_back();  // arity k+1 broken
    CHECK_THROWS_AS(verify_polynomial(ex.space, ex.map, cert), InputError);

    TwoFixedExample ex2;
    auto acert = ex2.certificate();
    acert.L[2] = Rational(0);  // L_i must be > 0
    CHECK_THROWS_AS(verify_almost_polynomial(ex2.space, ex2.map, acert), InputError);
}

TEST_CASE("diagonal pairs constrain the degree-0 coefficient") {
    // T(x1) = x2 and a_0(x2,x2) > lambda * a_0(x1,x1) must fail: the scan
    // includes x = y.
    FiniteMetricSpace space(testsupport::point_labels(2), discrete(2));
    TableMap map({1, 1});
    PairTable a0;
    a0.values = {{Rational(1), Rational(0)}, {Rational(0), Rational(5)}};
    PolynomialCertificate cert;
    cert.lambda = Rational(9, 10);
    cert.family.k = 1;
    cert.family.a = {Coefficient(std::move(a0)), Coefficient(Rational(1))};
    cert.witness_j = 1;
    cert.witness_Aj = 1;
    VerifyResult vr = verify_polynomial(space, map, cert);
    CHECK(vr.verdict.status == Verdict::Status::fail);
    REQUIRE(vr.verdict.worst_indices.has_value());
    CHECK(*vr.verdict.worst_indices == std::pair<std::size_t, std::size_t>{0, 0});
}

TEST_CASE("a pair with zero rhs and positive lhs is infeasible for every lambda") {
    FiniteMetricSpace space(testsupport::point_labels(2), discrete(2));
    TableMap map({1, 1});
    PairTable a0;
    a0.values = {{Rational(0), Rational(0)}, {Rational(0), Rational(3)}};
    PolynomialCertificate cert;
    cert.lambda = Rational(99, 100);
    cert.family.k = 1;
    cert.family.a = {Coefficient(std::move(a0)), Coefficient(Rational(1))};
    cert.witness_j = 1;
    cert.witness_Aj = 1;
    VerifyResult vr = verify_polynomial(space, map, cert);
    CHECK(vr.verdict.status == Verdict::Status::infeasible);
    CHECK(!vr.verdict.min_feasible_lambda.has_value());
    REQUIRE(vr.verdict.worst_indices.has_value());
    CHECK(*vr.verdict.worst_indices == std::pair<std::size_t, std::size_t>{0, 0});
    CHECK(vr.verdict.lhs == Rational(3));
    CHECK(vr.verdict.rhs == Rational(0));
}

TEST_CASE("degree-2 almost certificate passes at 2/3 with the published values") {
    TwoFixedExample ex;
    ScanOptions opts;
    opts.collect_pairs = true;
    VerifyResult vr = verify_almost_polynomial(ex.space, ex.map, ex.certificate(), opts);
    CHECK(vr.verdict.status == Verdict::Status::pass);
    REQUIRE(vr.verdict.min_feasible_lambda.has_value());
    CHECK(*vr.verdict.min_feasible_lambda == Rational(2, 3));

    int published = 0;
    for (const PairRow& r : vr.pairs) {
        const bool is_published = (r.p == 0 && r.q == 1) || (r.p == 1 && r.q == 0) ||
                                  (r.p == 1 && r.q == 2) || (r.p == 2 && r.q == 1);
        if (is_published) {
            CHECK(r.lhs == Rational(2));
            CHECK(r.rhs == Rational(3));
            ++published;
        }
    }
    CHECK(published == 4);

    CHECK(verify_almost_polynomial(ex.space, ex.map, ex.certificate(Rational(66, 100)))
              .verdict.status == Verdict::Status::fail);
}

TEST_CASE("constant a_0 = 1 with L_0 = 1 sits exactly at lambda = 1/2") {
    // lhs = 1 and rhs base = 1 + L_0 = 2 on every pair, so equality holds
    // at lambda = 1/2 (non-strict comparison).
    FiniteMetricSpace space(testsupport::point_labels(3), discrete(3));
    TableMap map({2, 0, 1});
    AlmostPolynomialCertificate cert;
    cert.lambda = Rational(1, 2);
    cert.family.k = 1;
    cert.family.a = {Coefficient(Rational(1)), Coefficient(Rational(0))};
    cert.witness_j = 1;
    cert.witness_Aj = 1;  // claimed, not checked by the scan itself
    cert.L = {Rational(1), Rational(1)};
    VerifyResult vr = verify_almost_polynomial(space, map, cert);
    CHECK(vr.verdict.status == Verdict::Status::pass);
    CHECK(*vr.verdict.min_feasible_lambda == Rational(1, 2));
}

TEST_CASE("the almost inequality is direction-sensitive and both directions are scanned") {
    // T = (x2 x3 x3): the pair (x1,x2) has d(y,Tx) = 0 and fails, while the
    // mirrored pair (x2,x1) passes. A scan over unordered pairs would miss it.
    FiniteMetricSpace space(testsupport::point_labels(3), discrete(3));
    TableMap map({1, 2, 2});
    AlmostPolynomialCertificate cert;
    cert.lambda = Rational(1, 2);
    cert.family.k = 1;
    cert.family.a = {Coefficient(Rational(0)), Coefficient(Rational(1))};
    cert.witness_j = 1;
    cert.witness_Aj = 1;
    cert.L = {Rational(1), Rational(3)};
    ScanOptions opts;
    opts.collect_pairs = true;
    VerifyResult vr = verify_almost_polynomial(space, map, cert, opts);
    CHECK(vr.verdict.status == Verdict::Status::fail);
    REQUIRE(vr.verdict.worst_indices.has_value());
    CHECK(*vr.verdict.worst_indices == std::pair<std::size_t, std::size_t>{0, 1});

    // The mirrored pair individually satisfies the inequality.
    for (const PairRow& r : vr.pairs) {
        if (r.p == 1 && r.q == 0) CHECK(r.lhs <= cert.lambda * r.rhs);
        if (r.p == 0 && r.q == 1) CHECK(r.lhs > cert.lambda * r.rhs);
    }
}

TEST_CASE("banach ratios") {
    ChainExample ex;
    LipschitzReport r = verify_banach(ex.space, ex.map);
    CHECK(r.ratio == Rational(1));

    FiniteMetricSpace space3(testsupport::point_labels(3), discrete(3));
    CHECK(verify_banach(space3, TableMap({1, 1, 1})).ratio == Rational(0));

    // T(x) = x/2 on a grid of [0,1].
    IntervalGridSpace grid(Rational(0), Rational(1), 9);
    PiecewiseMap halve({PiecewiseBranch{Rational(0), Rational(1), true, true,
                                        parse_expression("x*(1/2)")}});
    LipschitzReport gr = verify_banach(grid, halve);
    CHECK(gr.ratio == Rational(1, 2));
    CHECK(gr.grid_verified);

    // Single-point space: no pairs, ratio 0.
    FiniteMetricSpace one({"p"}, {{Rational(0)}});
    CHECK(verify_banach(one, TableMap({0})).ratio == Rational(0));
}

TEST_CASE("kannan ratios and infeasibility") {
    FiniteMetricSpace space3(testsupport::point_labels(3), discrete(3));
    CHECK(*verify_kannan(space3, TableMap({1, 1, 1})).ratio == Rational(0));

    FiniteMetricSpace space2(testsupport::point_labels(2), discrete(2));
    KannanReport swap = verify_kannan(space2, TableMap({1, 0}));
    REQUIRE(swap.ratio.has_value());
    CHECK(*swap.ratio == Rational(1, 2));
    CHECK(!(*swap.ratio < Rational(1, 2)));  // not Kannan: needs < 1/2

    KannanReport identity = verify_kannan(space2, TableMap({0, 1}));
    CHECK(!identity.ratio.has_value());  // zero bracket, positive lhs
}

TEST_CASE("almost contraction examples") {
    TwoFixedExample ex;
    CHECK(verify_almost_contraction(ex.space, ex.map, Rational(2, 3), Rational(1, 3)).status ==
          Verdict::Status::pass);

    FiniteMetricSpace space3(testsupport::point_labels(3), discrete(3));
    CHECK(verify_almost_contraction(space3, TableMap({1, 1, 1}), Rational(1, 2), Rational(1, 4))
              .status == Verdict::Status::pass);

    FiniteMetricSpace space2(testsupport::point_labels(2), discrete(2));
    Verdict swap = verify_almost_contraction(space2, TableMap({1, 0}), Rational(1, 2), Rational(1, 4));
    CHECK(swap.status == Verdict::Status::fail);
    REQUIRE(swap.worst_indices.has_value());
    CHECK(*swap.worst_indices == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK(swap.lhs == Rational(1));
    CHECK(swap.rhs == Rational(1, 2));  // lambda*d + ell*d(y,Tx) = 1/2 + 0

    CHECK_THROWS_AS(
        verify_almost_contraction(space2, TableMap({1, 0}), Rational(1, 2), Rational(0)),
        InputError);
}

TEST_CASE("coefficient lower bounds") {
    ChainExample ex;
    LowerBoundReport r = check_lower_bound_condition(ex.space, ex.certificate().family, 1);
    CHECK(r.min_value == Rational(1));
    CHECK(r.positive);

    PairTable a1;
    a1.values = {{Rational(1), Rational(0)}, {Rational(2), Rational(1)}};
    CoefficientFamily family;
    family.k = 1;
    family.a = {Coefficient(Rational(0)), Coefficient(std::move(a1))};
    FiniteMetricSpace space2(testsupport::point_labels(2), discrete(2));
    LowerBoundReport zero = check_lower_bound_condition(space2, family, 1);
    CHECK(zero.min_value == Rational(0));
    CHECK(!zero.positive);
    CHECK(zero.where == std::pair<std::size_t, std::size_t>{0, 1});

    // On grids the minimum is evidence only.
    IntervalGridSpace grid(Rational(0), Rational(1), 11);
    CoefficientFamily gfam;
    gfam.k = 1;
    gfam.a = {Coefficient(parse_expression("x + y")), Coefficient(Rational(1))};
    LowerBoundReport gr = check_lower_bound_condition(grid, gfam, 1);
    CHECK(gr.min_value == Rational(1));
    CHECK(gr.grid_evidence);

    CHECK_THROWS_AS(check_lower_bound_condition(grid, gfam, 2), InputError);
}

TEST_CASE("continuity condition report") {
    // Constant positive family with a_0 = 0: all three conditions hold.
    CoefficientFamily good;
    good.k = 2;
    good.a = {Coefficient(Rational(0)), Coefficient(Rational(2)), Coefficient(Rational(1, 2))};
    FiniteMetricSpace space3(testsupport::point_labels(3), discrete(3));
    ContinuityReport r = check_continuity_conditions(space3, good);
    CHECK(r.a0_identically_zero);
    CHECK(r.upper_bounds == std::vector<Rational>{Rational(2), Rational(1, 2)});
    CHECK(r.best_j == 1);
    CHECK(r.best_Aj == Rational(2));
    CHECK(r.guaranteed);

    // The weighted example family has a_0 != 0, so the guarantee is lost.
    ChainExample ex;
    ContinuityReport chain = check_continuity_conditions(ex.space, ex.certificate().family);
    CHECK(!chain.a0_identically_zero);
    CHECK(!chain.guaranteed);
    CHECK(chain.best_Aj == Rational(1));

    CoefficientFamily unit;
    unit.k = 1;
    unit.a = {Coefficient(Rational(0)), Coefficient(Rational(1))};
    ContinuityReport simple = check_continuity_conditions(space3, unit);
    CHECK(simple.guaranteed);
    CHECK(simple.upper_bounds == std::vector<Rational>{Rational(1)});
    CHECK(simple.best_Aj == Rational(1));
}

TEST_CASE("min_feasible_lambda equals the brute-force maximum ratio (fuzzed)") {
    testsupport::Rng rng(1234);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t n = 2 + rng() % 4;
        FiniteMetricSpace space = testsupport::random_space(rng, n);
        TableMap map = testsupport::random_table_map(rng, n);
        CoefficientFamily family;
        family.k = 1 + rng() % 2;
        for (unsigned i = 0; i <= family.k; ++i) {
            if (rng() % 2 == 0) {
                family.a.emplace_back(testsupport::random_rational(rng, 4, 4));
            } else {
                PairTable t;
                t.values.assign(n, std::vector<Rational>(n));
                for (auto& row : t.values) {
                    for (auto& v : row) v = testsupport::random_rational(rng, 4, 4);
                }
                family.a.emplace_back(std::move(t));
            }
        }
        PolynomialCertificate cert;
        cert.lambda = Rational(1, 2);
        cert.family = family;
        cert.witness_j = 1;
        cert.witness_Aj = 1;

        auto oracle = brute_force_min_lambda(space, map, family);
        VerifyResult vr = verify_polynomial(space, map, cert);
        if (!oracle) {
            CHECK(vr.verdict.status == Verdict::Status::infeasible);
        } else {
            REQUIRE(vr.verdict.min_feasible_lambda.has_value());
            CHECK(*vr.verdict.min_feasible_lambda == *oracle);
        }
    }
}

TEST_CASE("verdicts are monotone in lambda (fuzzed)") {
    testsupport::Rng rng(4321);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + rng() % 3;
        FiniteMetricSpace space = testsupport::random_space(rng, n);
        TableMap map = testsupport::random_table_map(rng, n);
        PolynomialCertificate cert;
        cert.family.k = 1;
        cert.family.a = {Coefficient(testsupport::random_rational(rng, 3, 3)),
                         Coefficient(testsupport::random_positive_rational(rng, 3, 3))};
        cert.witness_j = 1;
        cert.witness_Aj = 1;

        Rational lo(1 + static_cast<int>(rng() % 8), 10);
        Rational hi = lo + Rational(1, 10);
        cert.lambda = lo;
        auto low = verify_polynomial(space, map, cert).verdict.status;
        cert.lambda = hi;
        auto high = verify_polynomial(space, map, cert).verdict.status;
        if (low == Verdict::Status::pass) CHECK(high == Verdict::Status::pass);
        if (low == Verdict::Status::infeasible) CHECK(high == Verdict::Status::infeasible);
    }
}

TEST_CASE("degree-1 unit family reduces to the banach ratio (fuzzed)") {
    testsupport::Rng rng(2468);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng() % 5;
        FiniteMetricSpace space = testsupport::random_space(rng, n);
        TableMap map = testsupport::random_table_map(rng, n);
        PolynomialCertificate cert;
        cert.lambda = Rational(1, 2);
        cert.family.k = 1;
        cert.family.a = {Coefficient(Rational(0)), Coefficient(Rational(1))};
        cert.witness_j = 1;
        cert.witness_Aj = 1;
        VerifyResult vr = verify_polynomial(space, map, cert);
        REQUIRE(vr.verdict.min_feasible_lambda.has_value());
        CHECK(*vr.verdict.min_feasible_lambda == verify_banach(space, map).ratio);
    }
}

TEST_CASE("L_1 = ell/lambda reduction agrees with the almost contraction (fuzzed)") {
    testsupport::Rng rng(8642);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + rng() % 4;
        FiniteMetricSpace space = testsupport::random_space(rng, n);
        TableMap map = testsupport::random_table_map(rng, n);
        Rational lambda(1 + static_cast<int>(rng() % 9), 10);
        Rational ell = testsupport::random_positive_rational(rng, 4, 4);

        AlmostPolynomialCertificate cert;
        cert.lambda = lambda;
        cert.family.k = 1;
        cert.family.a = {Coefficient(Rational(0)), Coefficient(Rational(1))};
        cert.witness_j = 1;
        cert.witness_Aj = 1;
        cert.L = {Rational(1), ell / lambda};

        const bool poly_pass = verify_almost_polynomial(space, map, cert).verdict.status ==
                               Verdict::Status::pass;
        const bool almost_pass =
            verify_almost_contraction(space, map, lambda, ell).status == Verdict::Status::pass;
        CHECK(poly_pass == almost_pass);
    }
}

TEST_CASE("parallel and serial scans produce identical verdicts") {
    // A grid big enough to trigger the parallel path.
    IntervalGridSpace grid(Rational(0), Rational(1), 301);
    PiecewiseMap map({PiecewiseBranch{Rational(0), Rational(1), true, false,
                                      parse_expression("1/4")},
                      PiecewiseBranch{Rational(1), Rational(1), true, true, parse_expression("0")}});
    PolynomialCertificate cert;
    cert.lambda = Rational(1, 2);
    cert.family.k = 1;
    cert.family.a = {Coefficient(parse_expression("(5/6)*(x*abs(x - 1/4) + y*abs(y - 1/4))")),
                     Coefficient(Rational(1))};
    cert.witness_j = 1;
    cert.witness_Aj = 1;

    ScanOptions serial;
    serial.parallel = false;
    ScanOptions parallel;
    parallel.parallel = true;
    Verdict vs = verify_polynomial(grid, map, cert, serial).verdict;
    Verdict vp = verify_polynomial(grid, map, cert, parallel).verdict;
    CHECK(vs.status == vp.status);
    CHECK(vs.worst_indices == vp.worst_indices);
    CHECK(vs.lhs == vp.lhs);
    CHECK(vs.rhs == vp.rhs);
    CHECK(vs.min_feasible_lambda == vp.min_feasible_lambda);
}

TEST_CASE("grid coefficient negativity is an input error") {
    IntervalGridSpace grid(Rational(0), Rational(1), 5);
    PiecewiseMap map({PiecewiseBranch{Rational(0), Rational(1), true, true,
                                      parse_expression("1/2")}});
    PolynomialCertificate cert;
    cert.lambda = Rational(1, 2);
    cert.family.k = 1;
    cert.family.a = {Coefficient(parse_expression("x - 1")), Coefficient(Rational(1))};
    cert.witness_j = 1;
    cert.witness_Aj = 1;
    CHECK_THROWS_AS(verify_polynomial(grid, map, cert), InputError);
}
