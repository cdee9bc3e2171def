#include "doctest.h"
#include "schwarz/klein.hpp"
#include "schwarz/numeric.hpp"

using namespace schwarz;

using K = Ram<Rat>;
using MP = MPoly<Rat>;
using P = UPoly<Rat>;
using RF = RatFun<Rat>;

TEST_CASE("initial point: identity and square systems") {
    NumericConfig cfg;
    auto r1 = initial_point({MP::variable(1, 0)}, {Cplx(2, 0)}, cfg, 1);
    CHECK(std::abs(r1.x[0] - Cplx(2, 0)) < 1e-10);

    auto r2 = initial_point({MP::variable(1, 0).pow(2)}, {Cplx(4, 0)}, cfg, 2);
    CHECK(std::abs(std::abs(r2.x[0]) - 2.0) < 1e-10);
}

TEST_CASE("derived initials on scalar examples") {
    // F = X1, f = z: y'(z0) = 1
    {
        std::vector<std::vector<Cplx>> dfs = {{Cplx(2, 0)}, {Cplx(1, 0)}};
        auto jets = derived_initials({MP::variable(1, 0)}, {Cplx(2, 0)}, dfs, 2);
        CHECK(std::abs(jets[1][0] - Cplx(1, 0)) < 1e-12);
    }
    // F = X1^2, f = z, x0 = 2: y' = 1/4
    {
        std::vector<std::vector<Cplx>> dfs = {{Cplx(4, 0)}, {Cplx(1, 0)}};
        auto jets = derived_initials({MP::variable(1, 0).pow(2)}, {Cplx(2, 0)}, dfs, 2);
        CHECK(std::abs(jets[1][0] - Cplx(0.25, 0)) < 1e-12);
    }
}

TEST_CASE("integrator on y' = y reaches e") {
    OdeResult ode;
    ode.order = 1;
    ode.r = 1;
    ode.coeffs = {K::from_rat(Rat(-1))};  // y' - y = 0
    std::vector<Cplx> path = {Cplx(0, 0), Cplx(1, 0)};
    auto traj = integrate_ode(ode, path, {{Cplx(1, 0)}}, 1e-8);
    Cplx yend = traj.states.back()[0];
    CHECK(std::abs(yend - std::exp(Cplx(1, 0))) < 1e-10);
}

TEST_CASE("integrator on y'' = 0 is exact for y = z") {
    OdeResult ode;
    ode.order = 2;
    ode.r = 1;
    ode.coeffs = {K::zero(), K::zero()};
    std::vector<Cplx> path = {Cplx(0, 0), Cplx(0.7, 0.3)};
    auto traj = integrate_ode(ode, path, {{Cplx(0, 0)}, {Cplx(1, 0)}}, 1e-8);
    Cplx yend = traj.states.back()[0];
    CHECK(std::abs(yend - Cplx(0.7, 0.3)) < 1e-12);
}

TEST_CASE("exact synthetic verification: F = X1, f = z") {
    Mat<CycNum> id(1, 1);
    id(0, 0) = CycNum::one();
    GroupSpec triv = GroupSpec::make(1, {id}, 1, true);
    auto basis = InvariantBasis::make(1, {MP::variable(1, 0)}, {1}, {0}, {});
    std::vector<std::optional<K>> given = {K::z()};
    auto ode = construct_ode<K>(basis, triv, given);
    auto pulls = resolve_pullbacks<K>(basis, {K::z()});
    NumericConfig cfg;
    cfg.base_point = Cplx(0.5, 0);
    auto rep = verify_ode(basis, pulls, ode, cfg);
    CHECK(rep.passed);
    CHECK(rep.residual < 1e-9);  // machine-epsilon scale
}

TEST_CASE("hurwitz end-to-end verification and sensitivity") {
    const auto& [group, basis] = klein_preset();
    std::vector<std::optional<K>> given(4);
    given[0] = K::zero();
    given[1] = K::z_pow(-4);
    given[2] = K::z_pow(-9) * K::from_rat(Rat(-12));
    auto ode = construct_ode<K>(basis, group, given);

    std::vector<std::optional<K>> again = given;
    auto ctx = setup_derivation(again);
    (void)ctx;
    auto pulls = resolve_pullbacks<K>(basis, again);

    NumericConfig cfg;
    cfg.tolerance = 1e-6;
    auto rep = verify_ode(basis, pulls, ode, cfg);
    CHECK(rep.passed);
    CHECK(rep.residual < 1e-6);

    // 1% corruption of any coefficient must push the residual past tolerance
    for (int i = 0; i < 3; ++i) {
        auto bad = verify_ode(basis, pulls, ode, cfg, i, 1.01);
        CHECK(!bad.passed);
        CHECK(bad.residual > 1e-6);
    }
}

TEST_CASE("branch consistency: homotopic paths agree at the endpoint") {
    const auto& [group, basis] = klein_preset();
    std::vector<std::optional<K>> given(4);
    given[0] = K::zero();
    given[1] = K::z_pow(-4);
    given[2] = K::z_pow(-9) * K::from_rat(Rat(-12));
    auto ode = construct_ode<K>(basis, group, given);
    auto pulls = resolve_pullbacks<K>(basis, given);

    std::vector<MP> prim = {basis.gens[0], basis.gens[1], basis.gens[2]};
    std::vector<K> prim_f = {*pulls.given[0], *pulls.given[1], *pulls.given[2]};

    NumericConfig cfg;
    Cplx z0(0.5, 0.0);
    std::vector<std::vector<Cplx>> dfs(3);
    {
        std::vector<K> cur = prim_f;
        for (int k = 0; k < 3; ++k) {
            for (int m = 0; m < 3; ++m) {
                dfs[k].push_back(cur[m].ram() == 1
                                      ? cur[m].fun().eval<Cplx>(z0, [](const Rat& q) {
                                            return Cplx(q.to_double(), 0);
                                        })
                                      : Cplx(0, 0));
            }
            for (auto& f : cur) f = dz(f);
        }
    }
    auto nr = initial_point(prim, dfs[0], cfg, 4);
    auto jets = derived_initials(prim, nr.x, dfs, 3);

    std::vector<Cplx> up = {z0, z0 + Cplx(0, 0.4), z0 + Cplx(0.3, 0.4), z0 + Cplx(0.3, 0.1)};
    std::vector<Cplx> low = {z0, z0 + Cplx(0.15, 0.05), z0 + Cplx(0.3, 0.1)};
    auto t1 = integrate_ode(ode, up, jets, 1e-8);
    auto t2 = integrate_ode(ode, low, jets, 1e-8);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(t1.states.back()[i] - t2.states.back()[i]) < 1e-7);
}
