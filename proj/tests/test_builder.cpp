#include "doctest.h"
#include "schwarz/builder.hpp"
#include "schwarz/klein.hpp"

using namespace schwarz;

using K = Ram<Rat>;
using MP = MPoly<Rat>;
using P = UPoly<Rat>;
using RF = RatFun<Rat>;

namespace {

// X^k as the only invariant of the trivial group in one variable
InvariantBasis power_basis(int k) {
    return InvariantBasis::make(1, {MP::variable(1, 0).pow(k)}, {k}, {0}, {});
}

InvariantBasis pm_basis() {
    // invariants of {+-I} in two variables: X1^2, X2^2, X1 X2 with
    // Phi1 Phi2 - Phi3^2 = 0
    MP x1 = MP::variable(2, 0), x2 = MP::variable(2, 1);
    Mono m12, m3sq;
    m12.e[0] = 1, m12.e[1] = 1;
    m3sq.e[2] = 2;
    MPoly<Rat> syz =
        MPoly<Rat>::monomial(3, m12, Rat(1)) + MPoly<Rat>::monomial(3, m3sq, Rat(-1));
    return InvariantBasis::make(2, {x1 * x1, x2 * x2, x1 * x2}, {2, 2, 2}, {0, 1}, {syz});
}

GroupSpec pm_group() {
    Mat<CycNum> minus(2, 2);
    minus(0, 0) = CycNum(Rat(-1));
    minus(1, 1) = CycNum(Rat(-1));
    return GroupSpec::make(2, {minus}, 2, true);
}

}  // namespace

TEST_CASE("setup_derivation lifts to the least common ramification") {
    std::vector<std::optional<K>> fs = {K::z_pow(1, 2), K::z_pow(1, 3)};
    auto ctx = setup_derivation(fs);
    CHECK(ctx.r == 6);
    CHECK(fs[0]->ram() == 6);
    CHECK(*fs[0] == K::z_pow(3, 6));
}

TEST_CASE("jacobian rejects dependent generators") {
    MP x1 = MP::variable(2, 0), x2 = MP::variable(2, 1);
    auto jac = jacobian({x1 * x1, x1 * x2});
    CHECK(!det(jac).is_zero());
    CHECK_THROWS_AS(
        [&] {
            auto t = build_xij<K>({}, {x1 * x1, x1.pow(2)}, {K::z(), K::z()});
            (void)t;
        }(),
        DegenerateError);
}

TEST_CASE("xij table base cases") {
    // n = 1, F = X1, f = z: columns (X1 | 1)
    auto t = build_xij<K>({}, {MP::variable(1, 0)}, {K::z()});
    REQUIRE(t.cols.size() == 2);
    CHECK(t.cols[0][0] == MPoly<K>::variable(1, 0));
    CHECK(t.cols[1][0] == MPoly<K>::constant(1, K::one()));
    CHECK(t.den_pow == std::vector<int>{0, 1});
    CHECK(t.delta == MP::constant(1, Rat(1)));

    // n = 1, F = X1^2, f = z: X_{1,1} = 1/(2 X1), i.e. A_1 = 1 over Delta = 2 X1
    auto t2 = build_xij<K>({}, {MP::variable(1, 0).pow(2)}, {K::z()});
    CHECK(t2.cols[1][0] == MPoly<K>::constant(1, K::one()));
    CHECK(t2.delta == MP::variable(1, 0).scaled_rat(Rat(2)));
}

TEST_CASE("solve_dependence on the trivial table") {
    auto t = build_xij<K>({}, {MP::variable(1, 0)}, {K::z()});
    auto c = solve_dependence(t);
    REQUIRE(c.size() == 2);
    // (C0, C1) = (1, -X1) up to sign
    CHECK(c[0] == MFrac<K>(MPoly<K>::constant(1, K::one())));
    CHECK(c[1] == MFrac<K>(-MPoly<K>::variable(1, 0)));
    // annihilation: C0 * X_{1,0} + C1 * X_{1,1} = 0
    MFrac<K> x10(t.cols[0][0]);
    MFrac<K> x11(t.cols[1][0], MPoly<K>::constant(1, K::from_rat(Rat(1))));
    CHECK((c[0] * x10 + c[1] * x11).is_zero());
}

TEST_CASE("solve_dependence detects rank deficiency") {
    XijTable<K> t;
    t.n = 2;
    MPoly<K> zero(2);
    t.delta = MP::constant(2, Rat(1));
    t.delta_k = MPoly<K>::constant(2, K::one());
    // duplicate columns: all maximal minors vanish
    std::vector<MPoly<K>> col = {MPoly<K>::variable(2, 0), MPoly<K>::variable(2, 1)};
    t.cols = {col, col, col};
    t.den_pow = {0, 1, 3};
    CHECK_THROWS_AS(solve_dependence(t), DegenerateError);
}

TEST_CASE("dependence identity holds on an honest n = 2 table") {
    MP x1 = MP::variable(2, 0), x2 = MP::variable(2, 1);
    std::vector<MP> prim = {x1 * x1, x2 * x2};
    std::vector<K> fp = {K::z_pow(2), K::z_pow(4) + K::z()};
    auto t = build_xij<K>({}, prim, fp);
    auto c = solve_dependence(t);
    for (int i = 0; i < 2; ++i) {
        MFrac<K> acc;
        for (int j = 0; j <= 2; ++j) {
            MFrac<K> entry(t.cols[j][i], t.delta_k.pow(t.den_pow[j]));
            acc += c[j] * entry;
        }
        CHECK(acc.is_zero());
    }
}

TEST_CASE("delta commutes with the table representation") {
    // delta of A/Delta^e is (delta A)/Delta^e since Delta has constant
    // coefficients; check against the quotient rule on expanded fractions
    MP x1 = MP::variable(2, 0), x2 = MP::variable(2, 1);
    std::vector<MP> prim = {x1 * x1, x2 * x2};
    std::vector<K> fp = {K::z_pow(2), K::z_pow(3)};
    auto t = build_xij<K>({}, prim, fp);
    const auto& a1 = t.cols[1][0];
    MPoly<K> lhs = a1.map_coeffs([](const K& c) { return dz(c); });
    // quotient rule with constant denominator degenerates to the same thing;
    // verify coefficient-wise on every term
    for (const auto& [m, c] : a1.terms()) {
        CHECK(lhs.coeff(m) == dz(c));
    }
}

TEST_CASE("n = 1 sanity family: y' = y/(k z)") {
    Mat<CycNum> id(1, 1);
    id(0, 0) = CycNum::one();
    GroupSpec triv = GroupSpec::make(1, {id}, 1, true);
    for (int k = 1; k <= 3; ++k) {
        auto basis = power_basis(k);
        std::vector<std::optional<K>> given = {K::z()};
        auto ode = construct_ode<K>(basis, triv, given);
        REQUIRE(ode.order == 1);
        // delta y + c0 y = 0 with c0 = -1/(k z)
        K expect = K(1, RF(P(Rat(-1, k)), P::x()));
        CHECK(ode.coeffs[0] == expect);
    }
}

TEST_CASE("order-2 oracle: solutions z and z^2") {
    // y = (z, z^2) pulls back to f = (z^2, z^4, z^3); the monic annihilator of
    // span{z, z^2} is y'' - (2/z) y' + (2/z^2) y = 0
    auto basis = pm_basis();
    auto group = pm_group();
    std::vector<std::optional<K>> given(3);
    given[0] = K::z_pow(2);
    given[1] = K::z_pow(4);
    given[2] = K::z_pow(3);
    auto ode = construct_ode<K>(basis, group, given);
    REQUIRE(ode.order == 2);
    CHECK(ode.coeffs[1] == K(1, RF(P(Rat(-2)), P::x())));
    CHECK(ode.coeffs[0] == K(1, RF(P(Rat(2)), P::x(2))));
}

TEST_CASE("construction requires the determinant-1 flag") {
    Mat<CycNum> minus(2, 2);
    minus(0, 0) = CycNum(Rat(-1));
    minus(1, 1) = CycNum(Rat(1));
    GroupSpec g = GroupSpec::make(2, {minus}, 2, false);
    auto basis = pm_basis();
    std::vector<std::optional<K>> given(3);
    given[0] = K::z_pow(2);
    given[1] = K::z_pow(4);
    given[2] = K::z_pow(3);
    CHECK_THROWS_AS(construct_ode<K>(basis, g, given), ValidationError);
}

TEST_CASE("pullback validation is enforced and waivable") {
    auto basis = pm_basis();
    auto group = pm_group();
    std::vector<std::optional<K>> bad(3);
    bad[0] = K::z_pow(2);
    bad[1] = K::z_pow(4);
    bad[2] = K::z();  // violates f1 f2 = f3^2
    CHECK_THROWS_AS(construct_ode<K>(basis, group, bad), ValidationError);
}

TEST_CASE("zero primary pullback is allowed while the rank survives") {
    // Klein-quartic run has f4 = 0 in a primary slot; the small analogue:
    // f1 = 0 forces X1 = 0 on the curve, rank drops, and the builder reports
    // the degeneracy instead of dividing by zero
    auto basis = pm_basis();
    auto group = pm_group();
    std::vector<std::optional<K>> given(3);
    given[0] = K::zero();
    given[1] = K::z_pow(2);
    given[2] = K::zero();
    CHECK_THROWS_AS(construct_ode<K>(basis, group, given), DegenerateError);
}

TEST_CASE("scaling invariance of the dependence ratios") {
    auto t = build_xij<K>({}, {MP::variable(1, 0).pow(2)}, {K::z()});
    auto c = solve_dependence(t);
    MFrac<K> lambda(MPoly<K>::constant(1, K::z_pow(3)));
    // (lambda C0)/(lambda C1) == C0/C1
    CHECK(c[0] / c[1] == (lambda * c[0]) / (lambda * c[1]));
}

TEST_CASE("representative independence under the syzygy") {
    // two rewritings differing by a syzygy multiple agree after substituting
    // pullbacks that satisfy the relations
    const auto& basis = klein_preset().basis;
    RewriteEngine eng(basis);
    MP f21sq = basis.gens[3] * basis.gens[3];
    MPoly<Rat> q = eng.rewrite(f21sq);           // avoids Phi21^2
    Mono m21sq;
    m21sq.e[3] = 2;
    MPoly<Rat> q2 = q + basis.syzygies[0];       // ... and a representative using it
    CHECK(q.coeff(m21sq).is_zero());
    CHECK(!q2.coeff(m21sq).is_zero());
    CHECK(expand_symbols_rat(q2, basis) == f21sq);

    std::vector<std::optional<K>> given(4);
    given[0] = K::zero();
    given[1] = K::z_pow(-4);
    given[2] = K::z_pow(-9) * K::from_rat(Rat(-12));
    auto ps = resolve_pullbacks<K>(basis, given);
    auto vals = ps.ext_values();
    auto to_ext = [](const Rat& c) { return Ext<K>::from_rat(c); };
    CHECK(q.eval<Ext<K>>(vals, to_ext) == q2.eval<Ext<K>>(vals, to_ext));
}

TEST_CASE("klein construction smoke test (literal printed input)") {
    const auto& [group, basis] = klein_preset();
    std::vector<std::optional<K>> given(4);
    given[0] = K::zero();
    given[1] = K::z_pow(-4);
    given[2] = K::z_pow(-9) * K::from_rat(Rat(-12));
    auto ode = construct_ode<K>(basis, group, given);
    REQUIRE(ode.order == 3);
    CHECK(ode.r == 1);
    // frozen from the jet oracle (see tests/acceptance for the full goldens)
    P zm1({Rat(-1), Rat(1)});
    CHECK(ode.coeffs[2] == K(1, RF(P({Rat(-4), Rat(11, 2)}), P::x() * zm1)));
    CHECK(ode.coeffs[0] == K(1, RF(P(Rat(1485, 2744)), P::x(2) * zm1)));
}
