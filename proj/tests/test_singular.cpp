#include "doctest.h"
#include "schwarz/klein.hpp"
#include "schwarz/singular.hpp"

using namespace schwarz;

using K = Ram<Rat>;
using P = UPoly<Rat>;
using RF = RatFun<Rat>;

namespace {

OdeResult make_ode(int order, std::vector<RF> coeffs) {
    OdeResult ode;
    ode.order = order;
    ode.r = 1;
    for (auto& c : coeffs) ode.coeffs.push_back(K(1, std::move(c)));
    return ode;
}

OdeResult hurwitz_equation() {
    // (d/dz)^3 y + (7z-4)/(z(z-1)) y'' + (2592z^2-2963z+560)/(252 z^2 (z-1)^2) y'
    //   + (57024z-40805)/(24696 z^2 (z-1)^2) y = 0
    P zm1({Rat(-1), Rat(1)});
    RF c2(P({Rat(-4), Rat(7)}), P::x() * zm1);
    RF c1(P({Rat(560, 252), Rat(-2963, 252), Rat(2592, 252)}), P::x(2) * zm1 * zm1);
    RF c0(P({Rat(-40805, 24696), Rat(57024, 24696)}), P::x(2) * zm1 * zm1);
    return make_ode(3, {c0, c1, c2});
}

}  // namespace

TEST_CASE("singular points of simple equations") {
    // y'' = 0: only infinity
    auto flat = make_ode(2, {RF(), RF()});
    auto pts = singular_points(flat);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].kind == SingularPoint::Kind::Infinity);

    // y' = y/z: 0 and infinity
    auto euler1 = make_ode(1, {RF(P(Rat(-1)), P::x())});
    auto pts1 = singular_points(euler1);
    REQUIRE(pts1.size() == 2);
    CHECK(pts1[0].kind == SingularPoint::Kind::Finite);
    CHECK(pts1[0].location == Rat(0));
    CHECK(pts1[1].kind == SingularPoint::Kind::Infinity);
}

TEST_CASE("hurwitz equation singular set is {0, 1, infinity}") {
    auto pts = singular_points(hurwitz_equation());
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].location == Rat(0));
    CHECK(pts[1].location == Rat(1));
    CHECK(pts[2].kind == SingularPoint::Kind::Infinity);
}

TEST_CASE("indicial exponents: ordinary and euler cases") {
    // y'' = 0 at z = 0 is ordinary: exponents {0, 1}
    auto flat = make_ode(2, {RF(), RF()});
    auto e = indicial_exponents(flat, SingularPoint::finite(Rat(0)));
    CHECK(e == std::vector<Rat>{Rat(0), Rat(1)});

    // z^2 y'' + z y' - 1/4 y = 0  ==>  y'' + (1/z) y' - (1/(4z^2)) y = 0
    auto euler = make_ode(2, {RF(P(Rat(-1, 4)), P::x(2)), RF(P::one(), P::x())});
    auto ee = indicial_exponents(euler, SingularPoint::finite(Rat(0)));
    CHECK(ee == std::vector<Rat>{Rat(-1, 2), Rat(1, 2)});
}

TEST_CASE("irregular point and non-rational exponents are typed errors") {
    // y' + (1/z^2) y = 0 has an irregular point at 0
    auto irr = make_ode(1, {RF(P::one(), P::x(2))});
    CHECK_THROWS_AS(indicial_exponents(irr, SingularPoint::finite(Rat(0))), ScopeError);
    // z^2 y'' + z y' - 2 y = 0: exponents +-sqrt(2)
    auto irrat = make_ode(2, {RF(P(Rat(-2)), P::x(2)), RF(P::one(), P::x())});
    CHECK_THROWS_AS(indicial_exponents(irrat, SingularPoint::finite(Rat(0))), ScopeError);
}

TEST_CASE("hurwitz exponents at 0, 1, infinity") {
    auto ode = hurwitz_equation();
    auto e0 = indicial_exponents(ode, SingularPoint::finite(Rat(0)));
    CHECK(e0 == std::vector<Rat>{Rat(-2, 3), Rat(-1, 3), Rat(0)});
    auto e1 = indicial_exponents(ode, SingularPoint::finite(Rat(1)));
    CHECK(e1 == std::vector<Rat>{Rat(-1, 2), Rat(0), Rat(1, 2)});
    auto einf = indicial_exponents(ode, SingularPoint::infinity());
    CHECK(einf == std::vector<Rat>{Rat(8, 7), Rat(9, 7), Rat(11, 7)});
}

TEST_CASE("exponent normal form") {
    auto d1 = exponent_normal_form({Rat(0), Rat(1, 2), Rat(3, 2)});
    CHECK(d1.e == Rat(0));
    CHECK(d1.r == 2);
    CHECK(d1.nu == 1);
    CHECK(d1.lambda == std::vector<int>{2});

    auto d2 = exponent_normal_form({Rat(0), Rat(1), Rat(2)});
    CHECK(d2.r == 1);
    CHECK(d2.nu == 1);
    CHECK(d2.lambda == std::vector<int>{1});

    auto d3 = exponent_normal_form({Rat(-1, 3), Rat(0), Rat(1, 3)});
    CHECK(d3.e == Rat(-1, 3));
    CHECK(d3.r == 3);
    CHECK(d3.nu == 1);
    CHECK(d3.lambda == std::vector<int>{1});

    CHECK_THROWS_AS(exponent_normal_form({Rat(0), Rat(0), Rat(1)}), ScopeError);
}

TEST_CASE("round trip: normal form reconstructs the raw exponents") {
    auto rebuild = [](const ExponentData& d) {
        std::vector<Rat> out = {d.e};
        if (!d.raw.empty() && d.raw.size() > 1) {
            out.push_back(d.e + Rat(d.nu, d.r));
            for (int l : d.lambda) out.push_back(d.e + Rat(d.nu + l, d.r));
        }
        return out;
    };
    std::vector<std::vector<Rat>> cases = {
        {Rat(0), Rat(1, 2), Rat(3, 2)},
        {Rat(-2, 3), Rat(-1, 3), Rat(0)},
        {Rat(8, 7), Rat(9, 7), Rat(11, 7)},
        {Rat(1, 6), Rat(1, 3), Rat(5, 6), Rat(7, 6)},
    };
    for (auto& c : cases) {
        auto d = exponent_normal_form(c);
        std::sort(c.begin(), c.end());
        CHECK(rebuild(d) == c);
        int g = d.r;
        g = std::gcd(g, d.nu);
        for (int l : d.lambda) g = std::gcd(g, l);
        CHECK(g == 1);
    }
}

TEST_CASE("classification per the exponent data") {
    auto cusp = classify_point(exponent_normal_form({Rat(0), Rat(2, 5), Rat(3, 5)}), 1, 3, true);
    REQUIRE(cusp.cusp.has_value());
    CHECK(*cusp.cusp == std::pair<int, int>{2, 3});
    CHECK(!cusp.smooth);

    auto flex = classify_point(exponent_normal_form({Rat(0), Rat(1, 4), Rat(3, 4)}), 1, 3, true);
    REQUIRE(flex.flex.has_value());
    CHECK(*flex.flex == std::pair<int, int>{1, 3});

    auto smooth = classify_point(exponent_normal_form({Rat(0), Rat(1), Rat(2)}), 1, 3, true);
    CHECK(smooth.smooth);
    CHECK(smooth.apparent);
    CHECK(!smooth.cusp);
    CHECK(!smooth.flex);

    CHECK_THROWS_AS(classify_point(exponent_normal_form({Rat(0), Rat(1), Rat(2)}), 2, 3, true),
                    ScopeError);
}

TEST_CASE("euler characteristic conventions") {
    CHECK(euler_characteristic({2, 3, 7}, 168) == Rat(-4));
    CHECK(euler_characteristic({1, 1}, 10) == Rat(20));
    CHECK(euler_characteristic({}, 1) == Rat(2));
    // the printed convention is available but does not match the Klein data
    CHECK(euler_characteristic({2, 3, 7}, 168, EulerConvention::Printed) == Rat(-676));
}

TEST_CASE("curve degree formula") {
    CHECK(curve_degree(Rat(0), 3, Rat(17)) == Rat(0));
    CHECK(curve_degree(Rat(-1, 42), 1, Rat(168)) == Rat(4));
    // doubling m halves the result
    CHECK(curve_degree(Rat(-1, 42), 2, Rat(168)) == Rat(2));
}

TEST_CASE("full analysis of the hurwitz equation") {
    auto rep = analyze_ode(hurwitz_equation(), 1, 168, 3);
    REQUIRE(rep.points.size() == 3);
    std::vector<int> rs;
    for (const auto& p : rep.points) rs.push_back(p.normal.r);
    std::sort(rs.begin(), rs.end());
    CHECK(rs == std::vector<int>{2, 3, 7});
    CHECK(rep.euler_characteristic == Rat(-4));
    CHECK(rep.euler_integral);
    CHECK(rep.exponent_sum == Rat(-1, 42));
    // group-order scale reproduces the quartic's degree
    CHECK(rep.degree == Rat(4));
    CHECK(rep.warnings.empty());
    // infinity carries the (1,3)-flexes of the quartic
    const auto& pinf = rep.points.back();
    REQUIRE(pinf.cls.flex.has_value());
    CHECK(*pinf.cls.flex == std::pair<int, int>{1, 3});
}

TEST_CASE("fuchs relation from the trace for the golden equation") {
    auto ode = hurwitz_equation();
    // route one: sum the indicial exponents over all singular points
    Rat total;
    for (const auto& p : singular_points(ode))
        for (const auto& e : indicial_exponents(ode, p)) total += e;
    // route two: residues of c_{n-1} determine the local exponent sums
    // (n(n-1)/2 - res_p at finite p, A - n(n-1)/2 at infinity)
    CHECK(total == Rat(3));  // (|S| - 2) n(n-1)/2 = 3
}
