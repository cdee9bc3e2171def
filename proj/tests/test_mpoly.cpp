#include <random>

#include "doctest.h"
#include "schwarz/mpoly.hpp"
#include "schwarz/ramified.hpp"

using namespace schwarz;

using MP = MPoly<Rat>;

namespace {

MP random_poly(std::mt19937& rng, int nvars, int maxdeg, int nterms) {
    std::uniform_int_distribution<int> ed(0, maxdeg);
    std::uniform_int_distribution<long> cd(-9, 9);
    MP p(nvars);
    for (int t = 0; t < nterms; ++t) {
        Mono m;
        for (int i = 0; i < nvars; ++i) m.e[i] = static_cast<uint16_t>(ed(rng));
        p += MP::monomial(nvars, m, Rat(cd(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("construction and canonical form") {
    MP x = MP::variable(3, 0), y = MP::variable(3, 1);
    MP p = x * x + y - y;  // collapses to x^2
    CHECK(p.nterms() == 1);
    CHECK(p.degree() == 2);
    CHECK((x - x).is_zero());
    CHECK(MP::from_rat(3, Rat(0)).is_zero());
}

TEST_CASE("ring axioms on random inputs") {
    std::mt19937 rng(12345);
    for (int iter = 0; iter < 1000; ++iter) {
        MP a = random_poly(rng, 3, 4, 4);
        MP b = random_poly(rng, 3, 4, 4);
        MP c = random_poly(rng, 3, 4, 4);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("partial derivatives") {
    // d(X1^3 X2 + X2^3 X3 + X3^3 X1)/dX1 = 3 X1^2 X2 + X3^3
    MP x1 = MP::variable(3, 0), x2 = MP::variable(3, 1), x3 = MP::variable(3, 2);
    MP f4 = x1.pow(3) * x2 + x2.pow(3) * x3 + x3.pow(3) * x1;
    CHECK(f4.partial(0) == x1.pow(2) * x2.scaled_rat(Rat(3)) + x3.pow(3));
    CHECK(MP::from_rat(3, Rat(7)).partial(1).is_zero());
    CHECK((x1 * x2).partial(1) == x1);
}

TEST_CASE("product rule holds on random inputs") {
    std::mt19937 rng(777);
    for (int iter = 0; iter < 1000; ++iter) {
        MP p = random_poly(rng, 3, 5, 4);
        MP q = random_poly(rng, 3, 5, 4);
        int i = static_cast<int>(iter % 3);
        CHECK((p * q).partial(i) == p * q.partial(i) + q * p.partial(i));
    }
}

TEST_CASE("homogeneous components and content") {
    MP x = MP::variable(2, 0), y = MP::variable(2, 1);
    MP p = x * x * y + x * y + x * x;
    auto comps = p.homogeneous_components();
    CHECK(comps.size() == 2);
    CHECK(comps.at(3) == x * x * y);
    CHECK(comps.at(2) == x * y + x * x);
    Mono c = p.content_mono();
    CHECK(c.e[0] == 1);
    CHECK(c.e[1] == 0);
    CHECK(p.div_mono(c) == x * y + y + x);
}

TEST_CASE("evaluation in another ring") {
    using R = Ram<Rat>;
    MP x = MP::variable(2, 0), y = MP::variable(2, 1);
    MP p = x * x + y.scaled_rat(Rat(3));
    std::vector<R> vals = {R::z(), R::z_pow(-1)};
    R v = p.eval<R>(vals, [](const Rat& c) { return R::from_rat(c); });
    // z^2 + 3/z
    CHECK(v == R::z() * R::z() + R::z_pow(-1) * R::from_rat(Rat(3)));
}

TEST_CASE("exact division") {
    std::mt19937 rng(999);
    for (int iter = 0; iter < 200; ++iter) {
        MP a = random_poly(rng, 3, 3, 3);
        MP b = random_poly(rng, 3, 3, 3);
        if (b.is_zero()) continue;
        CHECK(exact_div(a * b, b) == a);
    }
    MP x = MP::variable(2, 0), y = MP::variable(2, 1);
    CHECK_THROWS(exact_div(x, y));
}
