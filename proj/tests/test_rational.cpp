#include "doctest.h"
#include "schwarz/rational.hpp"

using namespace schwarz;

TEST_CASE("canonical form") {
    Rat r(6, -4);
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(Rat(0, 5) == Rat());
    CHECK(Rat(0, 5).den() == 1);
    CHECK_THROWS_AS(Rat(1, 0), DegenerateError);
}

TEST_CASE("arithmetic") {
    Rat a(1, 3), b(1, 6);
    CHECK(a + b == Rat(1, 2));
    CHECK(a - b == Rat(1, 6));
    CHECK(a * b == Rat(1, 18));
    CHECK(a / b == Rat(2));
    CHECK((-a).sign() == -1);
    CHECK(a.inverse() == Rat(3));
    CHECK_THROWS_AS(Rat().inverse(), DegenerateError);
    CHECK(Rat(-2, 3).pow(3) == Rat(-8, 27));
    CHECK(Rat(2, 3).pow(-2) == Rat(9, 4));
}

TEST_CASE("big values stay exact") {
    Rat big = Rat(1);
    for (int i = 1; i <= 40; ++i) big *= Rat(i);
    // 40! has 48 digits
    CHECK(big.str().size() == 48);
    Rat r = big / (big + Rat(1));
    CHECK(r * (big + Rat(1)) == big);
}

TEST_CASE("string io") {
    CHECK(Rat::from_string("-7/3") == Rat(-7, 3));
    CHECK(Rat::from_string("195/2744") == Rat(195, 2744));
    CHECK_THROWS_AS(Rat::from_string("x"), ParseError);
}
