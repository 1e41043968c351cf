#include "polycontract/metric_space.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

using namespace polycontract;

namespace {

std::vector<std::vector<Rational>> discrete(std::size_t n) {
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(1)));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    return d;
}

}  // namespace

TEST_CASE("the discrete metric on 4 points is valid") {
    CHECK(!validate_metric(discrete(4)).has_value());
}

TEST_CASE("a 1x1 zero matrix is a valid metric") {
    CHECK(!validate_metric({{Rational(0)}}).has_value());
}

TEST_CASE("the shifted weight d + a_0 breaks the triangle inequality at (x2, x1, x4)") {
    // Distance plus the degree-0 weights of the 4-point example.
    std::vector<std::vector<Rational>> D = {
        {Rational(0), Rational(4), Rational(3), Rational(2)},
        {Rational(4), Rational(0), Rational(4), Rational(7)},
        {Rational(3), Rational(4), Rational(0), Rational(3)},
        {Rational(2), Rational(7), Rational(3), Rational(0)},
    };
    auto violation = validate_metric(D);
    REQUIRE(violation.has_value());
    CHECK(violation->kind == MetricViolation::Kind::triangle);
    CHECK(violation->witness == std::vector<std::size_t>{1, 0, 3});
    CHECK(violation->left == Rational(7));
    CHECK(violation->right == Rational(6));
    CHECK(violation->left > violation->right);
}

TEST_CASE("each axiom violation is classified with a witness") {
    auto asym = discrete(3);
    asym[0][1] = 2;
    auto v = validate_metric(asym);
    REQUIRE(v);
    CHECK(v->kind == MetricViolation::Kind::asymmetry);

    auto diag = discrete(3);
    diag[1][1] = 1;
    v = validate_metric(diag);
    REQUIRE(v);
    CHECK(v->kind == MetricViolation::Kind::nonzero_diagonal);

    auto indistinct = discrete(3);
    indistinct[0][1] = indistinct[1][0] = 0;
    v = validate_metric(indistinct);
    REQUIRE(v);
    CHECK(v->kind == MetricViolation::Kind::indistinct_points);
}

TEST_CASE("malformed matrices are input errors, not violations") {
    CHECK_THROWS_AS(validate_metric({{Rational(0), Rational(1)}}), InputError);
    auto negative = discrete(2);
    negative[0][1] = negative[1][0] = -1;
    CHECK_THROWS_AS(validate_metric(negative), InputError);
}

TEST_CASE("validator agrees with the brute-force oracle on random matrices") {
    testsupport::Rng rng(31337);
    int invalid_seen = 0;
    for (int i = 0; i < 300; ++i) {
        std::size_t n = 2 + rng() % 5;
        // Entries in {1..4} so triangle violations genuinely occur.
        auto m = testsupport::random_symmetric_matrix(rng, n, 1, 4);
        const bool oracle = testsupport::brute_force_is_metric(m);
        if (!oracle) ++invalid_seen;
        CHECK(!validate_metric(m).has_value() == oracle);
    }
    CHECK(invalid_seen > 10);  // the generator must actually exercise failures
}

TEST_CASE("finite space construction rejects non-metrics and duplicate labels") {
    CHECK_THROWS_AS(FiniteMetricSpace({"a", "a"}, discrete(2)), InputError);
    auto bad = discrete(3);
    bad[0][1] = bad[1][0] = 9;  // 9 > 1 + 1
    CHECK_THROWS_AS(FiniteMetricSpace(testsupport::point_labels(3), bad), InputError);
}

TEST_CASE("interval grid points are exact and bracket the endpoints") {
    IntervalGridSpace space(Rational(0), Rational(1), 1001);
    CHECK(space.point(0) == Rational(0));
    CHECK(space.point(1000) == Rational(1));
    CHECK(space.point(250) == Rational(1, 4));
    CHECK(space.index_of(Rational(1, 4)) == 250);
    CHECK(!space.index_of(Rational(1, 3)).has_value());
    CHECK(!space.index_of(Rational(2)).has_value());
    for (std::size_t t = 0; t < space.size(); t += 97) {
        CHECK(space.point(t) >= space.lo());
        CHECK(space.point(t) <= space.hi());
    }

    IntervalGridSpace shifted(Rational(-1, 2), Rational(3, 2), 5);
    CHECK(shifted.point(1) == Rational(0));
    CHECK(shifted.point(4) == Rational(3, 2));

    CHECK_THROWS_AS(IntervalGridSpace(Rational(1), Rational(0), 4), InputError);
    CHECK_THROWS_AS(IntervalGridSpace(Rational(0), Rational(1), 1), InputError);
}

TEST_CASE("power_distance follows the d^0 = 1 convention everywhere") {
    FiniteMetricSpace space(testsupport::point_labels(4), discrete(4));
    CHECK(power_distance(space, 0, 0, 0) == Rational(1));  // even on the diagonal
    CHECK(power_distance(space, 0, 0, 1) == Rational(1));
    CHECK(power_distance(space, 2, 0, 1) == Rational(1));
    CHECK(power_distance(space, 3, 1, 1) == Rational(0));

    IntervalGridSpace grid(Rational(0), Rational(1), 5);
    CHECK(power_distance(grid, 1, Rational(1, 4), Rational(0)) == Rational(1, 4));
    CHECK(power_distance(grid, 0, Rational(1, 4), Rational(1, 4)) == Rational(1));
    CHECK(power_distance(grid, 2, Rational(3, 4), Rational(1, 4)) == Rational(1, 4));
}

TEST_CASE("power_distance is the power of the distance, exactly") {
    testsupport::Rng rng(17);
    auto space = testsupport::random_space(rng, 5);
    for (unsigned i = 1; i <= 6; ++i) {
        for (std::size_t p = 0; p < space.size(); ++p) {
            for (std::size_t q = 0; q < space.size(); ++q) {
                CHECK(power_distance(space, i, p, q) ==
                      rational_pow(power_distance(space, 1, p, q), i));
            }
        }
    }
}

TEST_CASE("power_distance enforces the exponent cap") {
    FiniteMetricSpace space(testsupport::point_labels(2), discrete(2));
    CHECK_THROWS_AS(power_distance(space, kMaxDistancePower + 1, 0, 1), InputError);
}
