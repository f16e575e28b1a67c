#include "qsrlab/dyadic.hpp"

#include <doctest.h>

using qsrlab::BigInt;
using qsrlab::Dyadic;

TEST_CASE("dyadic normal form") {
    CHECK(Dyadic::scaled(4, 2) == Dyadic(1));
    CHECK(Dyadic::scaled(6, 1) == Dyadic(3));
    CHECK(Dyadic::scaled(0, 7) == Dyadic(0));
    CHECK(Dyadic::scaled(12, 3).numerator() == 3);
    CHECK(Dyadic::scaled(12, 3).exponent() == 1);
    CHECK(Dyadic(2).exponent() == 0);  // integers keep exponent zero
}

TEST_CASE("dyadic arithmetic is exact") {
    Dyadic a = Dyadic::scaled(3, 2);   // 3/4
    Dyadic b = Dyadic::scaled(1, 3);   // 1/8
    CHECK(a + b == Dyadic::scaled(7, 3));
    CHECK(a - b == Dyadic::scaled(5, 3));
    CHECK(a * b == Dyadic::scaled(3, 5));
    CHECK((a - a).is_zero());
    CHECK(-b + b == Dyadic(0));
    CHECK((b - a).abs() == Dyadic::scaled(5, 3));
    CHECK(Dyadic::pow2(-3) == b);
    CHECK(Dyadic::pow2(3) == Dyadic(8));
}

TEST_CASE("dyadic comparisons") {
    CHECK(Dyadic::scaled(1, 2) < Dyadic::scaled(3, 3));
    CHECK(Dyadic::scaled(-1, 1) < Dyadic(0));
    CHECK(Dyadic(2) >= Dyadic::scaled(15, 3));
    CHECK(Dyadic::scaled(21, 5) <= Dyadic(1));
}

TEST_CASE("dyadic formatting and parsing") {
    Dyadic v = Dyadic::scaled(21, 5);
    CHECK(v.to_fraction() == "21/32");
    CHECK(v.to_caret() == "21/2^5");
    CHECK(Dyadic::parse("21/32") == v);
    CHECK(Dyadic::parse("21/2^5") == v);
    CHECK(Dyadic::parse("-3/4") == Dyadic::scaled(-3, 2));
    CHECK(Dyadic::parse("2") == Dyadic(2));
    CHECK(Dyadic(0).to_fraction() == "0");
    CHECK_THROWS_AS(Dyadic::parse("1/3"), std::invalid_argument);
    CHECK(v.to_double() == doctest::Approx(0.65625).epsilon(0));
}

TEST_CASE("dyadic handles huge exponents") {
    // Product of 400 halves stays exact.
    Dyadic p(1);
    for (int i = 0; i < 400; ++i) p *= Dyadic::pow2(-1);
    CHECK(p == Dyadic::pow2(-400));
    CHECK((p + p) == Dyadic::pow2(-399));
}
