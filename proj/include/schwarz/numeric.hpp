#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "schwarz/builder.hpp"

namespace schwarz {

using Cplx = std::complex<double>;

struct NumericConfig {
    Cplx base_point{0.5, 0.0};
    std::vector<Cplx> path;     // polyline through the complex plane; empty =>
                                // a documented default loop-free path is built
    double tolerance = 1e-6;    // relative residual bound
    double margin = 0.08;       // required distance from every singular point
    int newton_starts = 64;     // random starts within the documented radius
    int newton_iters = 80;
    uint64_t seed = 0x5eed;
};

struct Trajectory {
    std::vector<Cplx> zs;
    std::vector<std::vector<Cplx>> states;  // per sample: y_1..y_n, y'_1.., up to order n-1
    int dim = 0;
    int order = 0;
};

struct NewtonResult {
    std::vector<Cplx> x;
    double residual = 0;
    double condition = 0;
};

struct VerifyReport {
    Cplx base_point;
    std::vector<Cplx> path;
    uint64_t seed = 0;
    double tolerance = 0;
    double residual = 0;             // max_{i,k} |F_i(y(z_k)) - f_i(z_k)| / (1 + |f_i(z_k)|)
    std::vector<double> per_pullback;
    double newton_residual = 0;
    double jacobian_condition = 0;
    size_t samples = 0;
    bool passed = false;
};

// Solve F_i(x) = target_i by Newton iteration from random complex starts.
NewtonResult initial_point(const std::vector<MPoly<Rat>>& fs, const std::vector<Cplx>& targets,
                           const NumericConfig& cfg, int min_degree);

// Jets y^{(1)}..y^{(order-1)} at z0 from the differentiated system
// F_m(y(z)) = f_m(z); dfs[k][m] holds the exact k-th derivative values.
std::vector<std::vector<Cplx>> derived_initials(const std::vector<MPoly<Rat>>& fs,
                                                const std::vector<Cplx>& x0,
                                                const std::vector<std::vector<Cplx>>& dfs,
                                                int order);

// End-to-end verification of a constructed equation against its input data.
// `corrupt_index` >= 0 multiplies that coefficient by `corrupt_factor` before
// integrating (the sensitivity check of the acceptance suite).
VerifyReport verify_ode(const InvariantBasis& basis, const PullbackSet<Ram<Rat>>& pulls,
                        const OdeResult& ode, NumericConfig cfg, int corrupt_index = -1,
                        double corrupt_factor = 1.0);

// Adaptive Dormand-Prince integration of the companion system along the
// polyline; local error per step is kept below tolerance/100.
Trajectory integrate_ode(const OdeResult& ode, const std::vector<Cplx>& path,
                         const std::vector<std::vector<Cplx>>& initials, double tolerance,
                         int corrupt_index = -1, double corrupt_factor = 1.0);

}  // namespace schwarz
