#include "polycontract/rational.hpp"

#include "polycontract/errors.hpp"

#include <doctest.h>

#include <random>

using namespace polycontract;

TEST_CASE("parse_rational accepts integers, fractions and exact decimals") {
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-7/2") == Rational(-7, 2));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-1.5e-3") == Rational(-3, 2000));
    CHECK(parse_rational("2.5e2") == Rational(250));
    CHECK(parse_rational(" 3/4 ") == Rational(3, 4));
    CHECK(parse_rational(".5") == Rational(1, 2));
}

TEST_CASE("parse_rational rejects malformed input") {
    CHECK_THROWS_AS(parse_rational(""), InputError);
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("1//2"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
    CHECK_THROWS_AS(parse_rational("1.2.3"), InputError);
    CHECK_THROWS_AS(parse_rational("0x10"), InputError);
}

TEST_CASE("to_string emits the canonical form") {
    CHECK(to_string(Rational(3, 4)) == "3/4");
    CHECK(to_string(Rational(8, 4)) == "2");
    CHECK(to_string(Rational(-6, 8)) == "-3/4");
    CHECK(to_string(Rational(0)) == "0");
}

TEST_CASE("string round-trip on random rationals") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-1000, 1000);
    std::uniform_int_distribution<long> den(1, 1000);
    for (int i = 0; i < 200; ++i) {
        Rational r(num(rng), den(rng));
        CHECK(parse_rational(to_string(r)) == r);
    }
}

TEST_CASE("rational_pow uses the 0^0 = 1 convention") {
    CHECK(rational_pow(Rational(0), 0) == Rational(1));
    CHECK(rational_pow(Rational(0), 3) == Rational(0));
    CHECK(rational_pow(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(rational_pow(Rational(-1, 2), 2) == Rational(1, 4));
}

TEST_CASE("floor_nth_root is exact on both sides of perfect powers") {
    CHECK(floor_nth_root(Int(27), 3) == 3);
    CHECK(floor_nth_root(Int(26), 3) == 2);
    CHECK(floor_nth_root(Int(28), 3) == 3);
    CHECK(floor_nth_root(Int(0), 5) == 0);
    CHECK(floor_nth_root(Int(1), 7) == 1);

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<unsigned> base(1, 50);
    std::uniform_int_distribution<unsigned> exp(2, 6);
    for (int i = 0; i < 100; ++i) {
        Int b = base(rng);
        unsigned e = exp(rng);
        Int power = 1;
        for (unsigned k = 0; k < e; ++k) power *= b;
        CHECK(floor_nth_root(power, e) == b);
        CHECK(floor_nth_root(power - 1, e) == b - 1);
        CHECK(floor_nth_root(power + 1, e) == b);
    }
}
