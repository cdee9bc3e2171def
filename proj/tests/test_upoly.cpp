#include "doctest.h"
#include "schwarz/ramified.hpp"

using namespace schwarz;

using P = UPoly<Rat>;
using RF = RatFun<Rat>;
using R = Ram<Rat>;

TEST_CASE("upoly basics") {
    P p({Rat(1), Rat(0), Rat(3)});  // 1 + 3x^2
    CHECK(p.degree() == 2);
    CHECK(p.eval(Rat(2)) == Rat(13));
    CHECK((p * p).degree() == 4);
    CHECK(p - p == P());
    P q = P::x();
    auto [quo, rem] = divmod(p, q);
    CHECK(quo == P({Rat(0), Rat(3)}));
    CHECK(rem == P(Rat(1)));
    CHECK(p.derivative() == P({Rat(0), Rat(6)}));
    CHECK(p.shift(Rat(1)) == P({Rat(4), Rat(6), Rat(3)}));  // 3(x+1)^2 + 1
}

TEST_CASE("gcd") {
    P a = P({Rat(-1), Rat(0), Rat(1)});         // x^2 - 1
    P b = P({Rat(-1), Rat(1)});                 // x - 1
    CHECK(gcd(a, b) == b);
    CHECK(gcd(a, P({Rat(1), Rat(1)})) == P({Rat(1), Rat(1)}));
    CHECK(gcd(b * b * a, b * a) == (b * a).monic());
}

TEST_CASE("ratfun normalization") {
    // (2z - 2) / (2z^2 - 2z) -> 1/z
    RF f(P({Rat(-2), Rat(2)}), P({Rat(0), Rat(-2), Rat(2)}));
    CHECK(f == RF(P::one(), P::x()));
    CHECK(f.den().lc() == Rat(1));
    // w^3 / w -> w^2
    RF g(P::x(3), P::x(1));
    CHECK(g == RF(P::x(2)));
    CHECK_THROWS_AS(RF(P::one(), P()), DegenerateError);
}

TEST_CASE("ratfun arithmetic") {
    RF z = RF::x();
    RF f = RF::one() / z;               // 1/z
    RF g = (z - RF::one()) / z;         // (z-1)/z
    CHECK(f + g == (z - RF::one() + RF::one()) / z);
    CHECK(f * z == RF::one());
    CHECK((f / f) == RF::one());
    CHECK(f.derivative() == -(RF::one() / (z * z)));
}

TEST_CASE("ramified lift and reduce") {
    // w^7 with r = 7 is z
    R f(7, RF::x(7));
    CHECK(f.reduced().ram() == 1);
    CHECK(f.reduced() == R::z());
    CHECK(R::z_pow(3, 7).ram() == 7);
    // equality across ramifications
    CHECK(R::z() == R(7, RF::x(7)));
    CHECK(R::z_pow(2, 2) == R::z());
}

TEST_CASE("derivation exact values") {
    R f = R::z_pow(3, 7);
    R expect = R(7, RF(P({Rat(3, 7)}), P::x(4)));
    CHECK(dz(f) == expect);
    // f = 1/z^4 -> -4 z^-5
    R g = R::z_pow(-4);
    CHECK(dz(g) == R(1, RF(P(Rat(-4)), P::x(5))));
    // Leibniz on samples
    R a = R::z_pow(3, 7), b = R::z_pow(-9, 1);
    CHECK(dz(a * b) == dz(a) * b + a * dz(b));
    // d(z)/dz = 1, d(const) = 0
    CHECK(dz(R::z()) == R::one());
    CHECK(dz(R::from_rat(Rat(5, 3))).is_zero());
}

TEST_CASE("lcm lifting in mixed arithmetic") {
    R a = R::z_pow(1, 2), b = R::z_pow(1, 3);
    R p = a * b;  // z^{5/6}
    CHECK(p.ram() == 6);
    CHECK(p == R::z_pow(5, 6));
}
