#include "polycontract/picard.hpp"

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

CoefficientFamily chain_family() {
    PairTable a0;
    a0.values = {
        {Rational(0), Rational(3), Rational(2), Rational(1)},
        {Rational(3), Rational(0), Rational(3), Rational(6)},
        {Rational(2), Rational(3), Rational(0), Rational(2)},
        {Rational(1), Rational(6), Rational(2), Rational(0)},
    };
    CoefficientFamily family;
    family.k = 1;
    family.a = {Coefficient(std::move(a0)), Coefficient(Rational(1))};
    return family;
}

PiecewiseMap quarter_map() {
    return PiecewiseMap(
        {PiecewiseBranch{Rational(0), Rational(1), true, false, parse_expression("1/4")},
         PiecewiseBranch{Rational(1), Rational(1), true, true, parse_expression("0")}});
}

CoefficientFamily quarter_family() {
    CoefficientFamily family;
    family.k = 1;
    family.a = {Coefficient(parse_expression("(5/6)*(x*abs(x - 1/4) + y*abs(y - 1/4))")),
                Coefficient(Rational(1))};
    return family;
}

}  // namespace

TEST_CASE("finite trace reaches the fixed point and records distances") {
    FiniteMetricSpace space(testsupport::point_labels(4), discrete(4));
    TableMap map({0, 2, 3, 0});
    PicardTrace t = iterate(space, map, 1);
    CHECK(t.status == PicardTrace::Status::converged);
    CHECK(t.iterates == std::vector<std::string>{"p1", "p2", "p3", "p0", "p0"});
    CHECK(t.limit == "p0");
    CHECK(t.steps_to_limit() == 3);
    CHECK(t.step_dist == std::vector<Rational>{1, 1, 1, 0});
    CHECK(t.dist_to_limit == std::vector<Rational>{1, 1, 1, 0, 0});

    PicardTrace fixed = iterate(space, map, 0);
    CHECK(fixed.status == PicardTrace::Status::converged);
    CHECK(fixed.iterates == std::vector<std::string>{"p0", "p0"});
    CHECK(fixed.steps_to_limit() == 0);
}

TEST_CASE("finite trace detects longer cycles") {
    FiniteMetricSpace space(testsupport::point_labels(2), discrete(2));
    PicardTrace t = iterate(space, TableMap({1, 0}), 0);
    CHECK(t.status == PicardTrace::Status::cycle_detected);
    CHECK(!t.limit.has_value());
    CHECK(t.dist_to_limit.empty());
}

TEST_CASE("grid trace lands exactly on the fixed point") {
    IntervalGridSpace space(Rational(0), Rational(1), 1001);
    PicardTrace t = iterate(space, quarter_map(), Rational(1));
    CHECK(t.status == PicardTrace::Status::converged);
    CHECK(t.iterates == std::vector<std::string>{"1", "0", "1/4", "1/4"});
    CHECK(t.limit == "1/4");
    CHECK(t.steps_to_limit() == 2);
}

TEST_CASE("grid trace hits the iteration cap on a 2-cycle") {
    IntervalGridSpace space(Rational(0), Rational(1), 5);
    PiecewiseMap mirror({PiecewiseBranch{Rational(0), Rational(1), true, true,
                                         parse_expression("1 - x")}});
    StopRule stop;
    stop.max_iter = 10;
    PicardTrace t = iterate(space, mirror, Rational(1, 4), stop);
    CHECK(t.status == PicardTrace::Status::max_iter_reached);
    CHECK(t.step_dist.size() == 10);
}

TEST_CASE("positive tolerance stops within the declared bound") {
    IntervalGridSpace space(Rational(0), Rational(1), 1025);
    PiecewiseMap halve({PiecewiseBranch{Rational(0), Rational(1), true, true,
                                        parse_expression("x*(1/2)")}});
    StopRule stop;
    stop.tolerance = Rational(1, 100);
    PicardTrace t = iterate(space, halve, Rational(1), stop);
    REQUIRE(t.status == PicardTrace::Status::converged);
    REQUIRE(t.limit_value.has_value());
    CHECK(space.distance(*t.limit_value, halve.apply(*t.limit_value)) <= stop.tolerance);
}

TEST_CASE("sigma of the first step") {
    FiniteMetricSpace space(testsupport::point_labels(4), discrete(4));
    TableMap map({0, 2, 3, 0});
    CoefficientFamily family = chain_family();
    CHECK(sigma0(space, map, family, 1, Rational(1), 1) == Rational(4));  // a_0(x2,x3) + d
    CHECK(sigma0(space, map, family, 1, Rational(1), 0) == Rational(0));  // fixed start
    CHECK(sigma0(space, map, family, 1, Rational(2), 1) == Rational(2));  // scales by 1/A_j
    CHECK_THROWS_AS(sigma0(space, map, family, 1, Rational(0), 1), InputError);
    CHECK_THROWS_AS(sigma0(space, map, family, 2, Rational(1), 1), InputError);  // j > k

    IntervalGridSpace grid(Rational(0), Rational(1), 1001);
    CHECK(sigma0(grid, quarter_map(), quarter_family(), 1, Rational(1), Rational(1)) ==
          Rational(13, 8));
}

TEST_CASE("a-priori bound values, exact for j = 1") {
    BoundValue b0 = a_priori_bound(0, 1, Rational(3, 4), Rational(4));
    CHECK(b0.exact);
    CHECK(b0.value == Rational(16));
    CHECK(a_priori_bound(2, 1, Rational(3, 4), Rational(4)).value == Rational(9));
    CHECK(a_priori_bound(3, 1, Rational(3, 4), Rational(4)).value == Rational(27, 4));
    for (std::size_t n = 0; n < 6; ++n) {
        CHECK(a_priori_bound(n, 1, Rational(1, 2), Rational(0)).value == Rational(0));
    }
    CHECK_THROWS_AS(a_priori_bound(0, 1, Rational(1), Rational(1)), InputError);
    CHECK_THROWS_AS(a_priori_bound(0, 1, Rational(1, 2), Rational(-1)), InputError);
}

TEST_CASE("a-priori bound encloses the root tightly for j >= 2") {
    // radicand (sigma * lambda^n / (1 - lambda)); perfect squares stay exact
    // within one ulp of the 2^-64 grid.
    BoundValue b = a_priori_bound(0, 2, Rational(1, 2), Rational(1, 2));  // sqrt(1) = 1
    CHECK(!b.exact);
    CHECK(b.lower <= Rational(1));
    CHECK(b.upper >= Rational(1));
    CHECK(b.upper - b.lower <= Rational(Int(1), Int(1) << 64));

    BoundValue c = a_priori_bound(0, 3, Rational(1, 2), Rational(4));  // cbrt(8) = 2
    CHECK(c.lower <= Rational(2));
    CHECK(c.upper >= Rational(2));

    // Enclosure brackets an irrational root: 2^(1/2).
    BoundValue d = a_priori_bound(0, 2, Rational(1, 2), Rational(1));
    CHECK(d.lower * d.lower <= Rational(2));
    CHECK(d.upper * d.upper >= Rational(2));
}

TEST_CASE("bound check against the chain-example trace") {
    FiniteMetricSpace space(testsupport::point_labels(4), discrete(4));
    TableMap map({0, 2, 3, 0});
    PicardTrace t = iterate(space, map, 1);
    BoundCheckReport report = check_bound_against_trace(t, 1, Rational(3, 4), Rational(4));
    CHECK(report.hard);
    CHECK(report.all_within);
    REQUIRE(report.rows.size() == 5);
    CHECK(report.rows[0].bound.value == Rational(16));
    CHECK(report.rows[1].bound.value == Rational(12));
    CHECK(report.rows[2].bound.value == Rational(9));
    CHECK(report.rows[3].bound.value == Rational(27, 4));

    // Shrinking sigma far enough makes the first row violate.
    BoundCheckReport broken = check_bound_against_trace(t, 1, Rational(3, 4), Rational(1, 100));
    CHECK(!broken.all_within);
    CHECK(broken.rows[0].outcome == BoundCheckRow::Outcome::violated);

    CHECK_THROWS_AS(
        check_bound_against_trace(PicardTrace{}, 1, Rational(1, 2), Rational(1)), InputError);
}

TEST_CASE("bound check is empirical for j >= 2") {
    FiniteMetricSpace space(testsupport::point_labels(3), discrete(3));
    TableMap map({0, 1, 0});
    PicardTrace t = iterate(space, map, 2);
    // sigma for j = 2 with the unit degree-2 family: d + d^2 at the first step = 2.
    BoundCheckReport report = check_bound_against_trace(t, 2, Rational(2, 3), Rational(2));
    CHECK(!report.hard);
    CHECK(report.all_within);
}

TEST_CASE("geometric step decay holds on verified instances (fuzzed)") {
    testsupport::Rng rng(909);
    int verified = 0;
    for (int trial = 0; trial < 120; ++trial) {
        std::size_t n = 2 + rng() % 4;
        FiniteMetricSpace space = testsupport::random_space(rng, n);
        TableMap map = testsupport::random_table_map(rng, n);
        CoefficientFamily family;
        family.k = 1;
        family.a = {Coefficient(Rational(0)), Coefficient(Rational(1))};

        PolynomialCertificate cert;
        cert.lambda = Rational(1, 2);
        cert.family = family;
        cert.witness_j = 1;
        cert.witness_Aj = 1;
        auto min_lambda = verify_polynomial(space, map, cert).verdict.min_feasible_lambda;
        REQUIRE(min_lambda.has_value());
        if (!(*min_lambda < 1)) continue;  // not a contraction candidate
        if (*min_lambda == 0) continue;    // constant-image maps are immediate
        ++verified;
        const Rational lambda = *min_lambda;

        for (std::size_t z0 = 0; z0 < n; ++z0) {
            Rational sigma = sigma0(space, map, family, 1, Rational(1), z0);
            PicardTrace t = iterate(space, map, z0);
            Rational geometric = sigma;
            for (std::size_t step = 0; step < t.step_dist.size(); ++step) {
                CHECK(t.step_dist[step] <= geometric);
                geometric *= lambda;
            }
        }
    }
    CHECK(verified > 5);
}

TEST_CASE("verified contractions drive every orbit to the unique fixed point") {
    // Chain example: all starts reach the same fixed point.
    FiniteMetricSpace space(testsupport::point_labels(4), discrete(4));
    TableMap map({0, 2, 3, 0});
    for (std::size_t z0 = 0; z0 < 4; ++z0) {
        PicardTrace t = iterate(space, map, z0);
        CHECK(t.status == PicardTrace::Status::converged);
        CHECK(t.limit == "p0");
    }

    // Two-fixed-point example: orbits converge, but not to the same point.
    FiniteMetricSpace space3(testsupport::point_labels(3), discrete(3));
    TableMap map3({0, 1, 0});
    PicardTrace from_x3 = iterate(space3, map3, 2);
    PicardTrace from_x2 = iterate(space3, map3, 1);
    CHECK(from_x3.limit == "p0");
    CHECK(from_x2.limit == "p1");
}
