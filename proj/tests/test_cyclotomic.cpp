#include "doctest.h"
#include "schwarz/cyclotomic.hpp"

using namespace schwarz;

TEST_CASE("euler phi and cyclotomic polynomials") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(7) == 6);
    CHECK(euler_phi(9) == 6);
    CHECK(euler_phi(12) == 4);
    auto p7 = cyclotomic_poly(7);  // 1 + x + ... + x^6
    REQUIRE(p7.size() == 7);
    for (auto& c : p7) CHECK(c == Rat(1));
    auto p4 = cyclotomic_poly(4);  // x^2 + 1
    REQUIRE(p4.size() == 3);
    CHECK(p4[0] == Rat(1));
    CHECK(p4[1] == Rat(0));
    CHECK(p4[2] == Rat(1));
}

TEST_CASE("roots of unity reduce") {
    CycNum z = CycNum::zeta(7);
    CHECK(z.pow(7) == CycNum::one());
    CycNum s = CycNum::one();
    for (int k = 1; k <= 6; ++k) s += z.pow(k);
    CHECK(s.is_zero());
    // minimal polynomial evaluates to zero
    CycNum acc = CycNum::zero();
    for (int k = 0; k <= 6; ++k) acc += z.pow(k);
    CHECK(acc.is_zero());
}

TEST_CASE("gauss sum squares to -7") {
    CycNum z = CycNum::zeta(7);
    CycNum s = (z - z.pow(6)) + (z.pow(2) - z.pow(5)) + (z.pow(4) - z.pow(3));
    CHECK(s * s == CycNum(Rat(-7)));
}

TEST_CASE("field operations") {
    CycNum z = CycNum::zeta(7);
    CycNum a = z.pow(4) - z.pow(3) + CycNum(Rat(2));
    CHECK(a * a.inverse() == CycNum::one());
    CHECK((a / a) == CycNum::one());
    CHECK_THROWS_AS(CycNum::zero().inverse(), DegenerateError);
    // mixing with rationals (conductor 1) works
    CHECK(a + CycNum(Rat(1, 2)) - CycNum(Rat(1, 2)) == a);
    CHECK(z.pow(-1) == z.pow(6));
}

TEST_CASE("other conductors") {
    CycNum i = CycNum::zeta(4);
    CHECK(i * i == CycNum(Rat(-1)));
    CycNum z9 = CycNum::zeta(9);
    CHECK(z9.pow(9) == CycNum::one());
    CHECK(z9.pow(3).pow(3) == CycNum::one());
    CHECK((z9.pow(3) + z9.pow(6) + CycNum::one()).is_zero());
}
