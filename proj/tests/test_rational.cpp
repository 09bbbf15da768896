#include <catch2/catch_amalgamated.hpp>

#include "parskew/rational.hpp"

using namespace parskew;

TEST_CASE("rationals are always canonical") {
    Rational r(BigInt(6), BigInt(-8));
    CHECK(r.num() == -3);
    CHECK(r.den() == 4);
    CHECK(r.str() == "-3/4");

    CHECK(Rational(BigInt(0), BigInt(7)).str() == "0");
    CHECK((rat(1, 2) + rat(1, 3)).str() == "5/6");
    CHECK((rat(1, 2) - rat(1, 2)).is_zero());
    CHECK((rat(2, 3) * rat(3, 2)) == Rational(1));
    CHECK((rat(1, 3) / rat(1, 6)) == Rational(2));
}

TEST_CASE("addition recanonicalizes instead of rounding") {
    Rational third = rat(1, 3);
    Rational sum = third + third + third;
    CHECK(sum == Rational(1));
    // large numerators stay exact
    Rational big = Rational(BigInt("123456789012345678901234567890"), BigInt(2));
    CHECK((big + big).num() == BigInt("123456789012345678901234567890"));
}

TEST_CASE("parsing accepts p and p/q, rejects junk") {
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational::parse("3/6") == rat(1, 2));
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/-2"), ParseError);
    CHECK_THROWS_AS(Rational::parse(""), ParseError);
    CHECK_THROWS_AS(Rational::parse("a/b"), ParseError);
    CHECK_THROWS_AS((void)(Rational(1) / Rational(0)), InvalidElement);
}

TEST_CASE("ordering") {
    CHECK(rat(1, 3) < rat(1, 2));
    CHECK(rat(-1, 2) < rat(0, 5));
}
