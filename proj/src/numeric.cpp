#include "schwarz/numeric.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "schwarz/singular.hpp"

namespace schwarz {

namespace {

constexpr double kPi = 3.14159265358979323846;

Cplx eval_upoly(const UPoly<Rat>& p, Cplx x) {
    Cplx acc = 0.0;
    for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.coeff(i).to_double();
    return acc;
}

Cplx eval_ratfun(const RatFun<Rat>& f, Cplx x) {
    return eval_upoly(f.num(), x) / eval_upoly(f.den(), x);
}

// continuous branch of w = z^{1/r} along a path, per ramification index
class BranchCtx {
  public:
    void update(Cplx z) {
        z_ = z;
        for (auto& [r, w] : ws_) w = nearest_root(z, r, w);
    }
    Cplx w_for(int r, Cplx z) {
        auto it = ws_.find(r);
        if (it == ws_.end()) {
            Cplx w = principal_root(z, r);
            if (r > 1) ws_.emplace(r, w);
            return w;
        }
        if (z == z_) return it->second;
        return nearest_root(z, r, it->second);
    }
    Cplx eval(const Ram<Rat>& f, Cplx z) {
        if (f.ram() == 1) return eval_ratfun(f.fun(), z);
        return eval_ratfun(f.fun(), w_for(f.ram(), z));
    }

  private:
    static Cplx principal_root(Cplx z, int r) {
        if (r == 1) return z;
        return std::pow(z, 1.0 / r);
    }
    static Cplx nearest_root(Cplx z, int r, Cplx ref) {
        if (r == 1) return z;
        Cplx base = principal_root(z, r);
        Cplx best = base;
        double bd = std::abs(base - ref);
        for (int k = 1; k < r; ++k) {
            Cplx rot = std::polar(1.0, 2.0 * kPi * k / r);
            Cplx cand = base * rot;
            double d = std::abs(cand - ref);
            if (d < bd) {
                bd = d;
                best = cand;
            }
        }
        return best;
    }

    Cplx z_{0.0, 0.0};
    std::map<int, Cplx> ws_;
};

Cplx eval_mpoly(const MPoly<Rat>& p, const std::vector<Cplx>& x) {
    Cplx acc = 0.0;
    for (const auto& [m, c] : p.terms()) {
        Cplx t = c.to_double();
        for (int i = 0; i < p.nvars(); ++i)
            for (int e = 0; e < m.e[i]; ++e) t *= x[i];
        acc += t;
    }
    return acc;
}

double seg_point_distance(Cplx a, Cplx b, Cplx p) {
    Cplx d = b - a;
    double len2 = std::norm(d);
    if (len2 == 0) return std::abs(p - a);
    double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(a + t * d - p);
}

}  // namespace

NewtonResult initial_point(const std::vector<MPoly<Rat>>& fs, const std::vector<Cplx>& targets,
                           const NumericConfig& cfg, int min_degree) {
    const int n = static_cast<int>(fs.size());
    std::vector<std::vector<MPoly<Rat>>> grads;
    for (const auto& f : fs) grads.push_back(gradient(f));

    double maxt = 0;
    for (const auto& t : targets) maxt = std::max(maxt, std::abs(t));
    double radius = std::max(1.0, std::pow(maxt, 1.0 / std::max(1, min_degree)));

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> ud(-radius, radius);

    bool found_ramified_only = false;
    for (int s = 0; s < cfg.newton_starts; ++s) {
        std::vector<Cplx> x(n);
        for (auto& xi : x) xi = Cplx(ud(rng), ud(rng));
        bool diverged = false;
        for (int it = 0; it < cfg.newton_iters && !diverged; ++it) {
            Eigen::VectorXcd r(n);
            for (int i = 0; i < n; ++i) r(i) = eval_mpoly(fs[i], x) - targets[i];
            double rn = r.norm();
            if (rn < 1e-12 * (1 + maxt)) {
                Eigen::MatrixXcd J(n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) J(i, j) = eval_mpoly(grads[i][j], x);
                Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
                double cond = svd.singularValues()(0) /
                              std::max(svd.singularValues()(n - 1), 1e-300);
                if (cond > 1e10) {
                    found_ramified_only = true;
                    diverged = true;
                    continue;
                }
                NewtonResult res;
                res.x = x;
                res.residual = rn;
                res.condition = cond;
                return res;
            }
            Eigen::MatrixXcd J(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) J(i, j) = eval_mpoly(grads[i][j], x);
            Eigen::FullPivLU<Eigen::MatrixXcd> lu(J);
            if (!lu.isInvertible()) {
                diverged = true;
                continue;
            }
            Eigen::VectorXcd dx = lu.solve(r);
            for (int i = 0; i < n; ++i) x[i] -= dx(i);
            if (!std::isfinite(std::abs(x[0]))) diverged = true;
        }
    }
    if (found_ramified_only)
        throw VerifyError("only ramified points found: Jacobian near-singular at every root");
    throw VerifyError("no initial point found within the Newton retry budget");
}

std::vector<std::vector<Cplx>> derived_initials(const std::vector<MPoly<Rat>>& fs,
                                                const std::vector<Cplx>& x0,
                                                const std::vector<std::vector<Cplx>>& dfs,
                                                int order) {
    const int n = static_cast<int>(fs.size());
    const int jet_vars = n * order;
    if (jet_vars > Mono::kMaxVars)
        throw ScopeError("jet prolongation supports n * order <= " +
                         std::to_string(Mono::kMaxVars));

    // variables Y_{i,j} at index j*n + i; P^0_m = F_m(Y_{.,0})
    std::vector<MPoly<Rat>> pk;
    for (const auto& f : fs) {
        MPoly<Rat> g(jet_vars);
        std::vector<typename MPoly<Rat>::Term> ts;
        for (const auto& [m, c] : f.terms()) ts.push_back({m, c});
        g.set_terms(std::move(ts));
        pk.push_back(std::move(g));
    }
    auto total_derivative = [&](const MPoly<Rat>& p) {
        MPoly<Rat> out(jet_vars);
        for (int j = 0; j + 1 < order; ++j)
            for (int i = 0; i < n; ++i) {
                MPoly<Rat> d = p.partial(j * n + i);
                if (d.is_zero()) continue;
                out += d * MPoly<Rat>::variable(jet_vars, (j + 1) * n + i);
            }
        return out;
    };

    Eigen::MatrixXcd J(n, n);
    for (int m = 0; m < n; ++m) {
        auto g = gradient(fs[m]);
        for (int i = 0; i < n; ++i) J(m, i) = eval_mpoly(g[i], x0);
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(J);
    if (!lu.isInvertible()) throw VerifyError("singular Jacobian at the initial point");

    std::vector<std::vector<Cplx>> jets = {x0};
    std::vector<Cplx> point(jet_vars, Cplx(0, 0));
    for (int i = 0; i < n; ++i) point[i] = x0[i];

    for (int k = 1; k < order; ++k) {
        for (auto& p : pk) p = total_derivative(p);
        // P^k is linear in the top jet Y_{.,k} with matrix J(x0); evaluate the
        // rest at (x0, y^{(1)}, ..., y^{(k-1)}, 0)
        Eigen::VectorXcd rhs(n);
        for (int m = 0; m < n; ++m) rhs(m) = dfs[k][m] - eval_mpoly(pk[m], point);
        Eigen::VectorXcd yk = lu.solve(rhs);
        std::vector<Cplx> jet(n);
        for (int i = 0; i < n; ++i) {
            jet[i] = yk(i);
            point[k * n + i] = yk(i);
        }
        jets.push_back(std::move(jet));
    }
    return jets;
}

Trajectory integrate_ode(const OdeResult& ode, const std::vector<Cplx>& path,
                         const std::vector<std::vector<Cplx>>& initials, double tolerance,
                         int corrupt_index, double corrupt_factor) {
    const int order = ode.order;
    const int n = static_cast<int>(initials[0].size());
    const int dim = n * order;
    BranchCtx branches;

    auto rhs = [&](Cplx z, const Eigen::VectorXcd& s) {
        Eigen::VectorXcd d(dim);
        for (int k = 0; k + 1 < order; ++k)
            for (int i = 0; i < n; ++i) d(k * n + i) = s((k + 1) * n + i);
        std::vector<Cplx> cs(order);
        for (int k = 0; k < order; ++k) {
            cs[k] = branches.eval(ode.coeffs[k], z);
            if (k == corrupt_index) cs[k] *= corrupt_factor;
        }
        for (int i = 0; i < n; ++i) {
            Cplx top = 0.0;
            for (int k = 0; k < order; ++k) top -= cs[k] * s(k * n + i);
            d((order - 1) * n + i) = top;
        }
        return d;
    };

    // Dormand-Prince 5(4)
    static const double A[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    static const double C[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
    static const double E[7] = {35.0 / 384 - 5179.0 / 57600, 0, 500.0 / 1113 - 7571.0 / 16695,
                                125.0 / 192 - 393.0 / 640, -2187.0 / 6784 + 92097.0 / 339200,
                                11.0 / 84 - 187.0 / 2100, -1.0 / 40};

    Eigen::VectorXcd s(dim);
    for (int k = 0; k < order; ++k)
        for (int i = 0; i < n; ++i) s(k * n + i) = initials[k][i];

    Trajectory traj;
    traj.dim = n;
    traj.order = order;
    const double loctol = tolerance / 100.0;

    for (size_t seg = 0; seg + 1 < path.size(); ++seg) {
        Cplx a = path[seg], b = path[seg + 1];
        Cplx dir = b - a;
        double t = 0.0, h = 0.05;
        branches.update(a);
        traj.zs.push_back(a);
        traj.states.emplace_back(s.data(), s.data() + dim);
        while (t < 1.0) {
            h = std::min(h, 1.0 - t);
            Eigen::VectorXcd k[7];
            k[0] = dir * rhs(a + t * dir, s);
            for (int st = 1; st < 7; ++st) {
                Eigen::VectorXcd y = s;
                for (int j = 0; j < st; ++j)
                    if (A[st][j] != 0) y += h * A[st][j] * k[j];
                k[st] = dir * rhs(a + (t + C[st] * h) * dir, y);
            }
            Eigen::VectorXcd y5 = s;
            for (int j = 0; j < 7; ++j)
                if (A[6][j] != 0 && j < 6) y5 += h * A[6][j] * k[j];
            Eigen::VectorXcd err = Eigen::VectorXcd::Zero(dim);
            for (int j = 0; j < 7; ++j)
                if (E[j] != 0) err += h * E[j] * k[j];
            double scale = 1.0 + s.cwiseAbs().maxCoeff();
            double en = err.cwiseAbs().maxCoeff() / scale;
            if (en <= loctol) {
                t += h;
                s = y5;
                branches.update(a + t * dir);
                traj.zs.push_back(a + t * dir);
                traj.states.emplace_back(s.data(), s.data() + dim);
            }
            double factor = en > 0 ? 0.9 * std::pow(loctol / en, 0.2) : 5.0;
            h *= std::clamp(factor, 0.2, 5.0);
            if (h < 1e-13)
                throw VerifyError("integration stalled near an unexpected singularity");
        }
    }
    return traj;
}

VerifyReport verify_ode(const InvariantBasis& basis, const PullbackSet<Ram<Rat>>& pulls,
                        const OdeResult& ode, NumericConfig cfg, int corrupt_index,
                        double corrupt_factor) {
    const int n = basis.nvars;
    const int N = basis.ngens();

    if (cfg.path.empty()) {
        // default loop-free path: rise from the base point, sweep right, drop
        Cplx z0 = cfg.base_point;
        cfg.path = {z0, z0 + Cplx(0, 0.45), z0 + Cplx(0.35, 0.45), z0 + Cplx(0.35, 0.12)};
    }
    // the path must respect the margin around every finite singular point
    std::vector<Cplx> sing;
    for (const auto& p : singular_points(ode))
        if (p.kind == SingularPoint::Kind::Finite)
            sing.push_back(Cplx(p.location.to_double(), 0.0));
    for (size_t i = 0; i + 1 < cfg.path.size(); ++i)
        for (const auto& sp : sing)
            if (seg_point_distance(cfg.path[i], cfg.path[i + 1], sp) < cfg.margin)
                throw ValidationError("verification path enters the margin disk of a singular point");

    VerifyReport rep;
    rep.base_point = cfg.path.front();
    rep.path = cfg.path;
    rep.seed = cfg.seed;
    rep.tolerance = cfg.tolerance;

    BranchCtx base_branches;
    Cplx z0 = cfg.path.front();

    // exact derivatives of the primary pullbacks, evaluated at the base point
    std::vector<MPoly<Rat>> prim;
    std::vector<Ram<Rat>> prim_f;
    int dmin = INT32_MAX;
    for (int idx : basis.primary) {
        prim.push_back(basis.gens[idx]);
        prim_f.push_back(*pulls.given[idx]);
        dmin = std::min(dmin, basis.degrees[idx]);
    }
    std::vector<std::vector<Cplx>> dfs(ode.order);
    {
        std::vector<Ram<Rat>> cur = prim_f;
        for (int k = 0; k < ode.order; ++k) {
            for (int m = 0; m < n; ++m) dfs[k].push_back(base_branches.eval(cur[m], z0));
            for (auto& f : cur) f = dz(f);
        }
    }

    NewtonResult nr = initial_point(prim, dfs[0], cfg, dmin);
    rep.newton_residual = nr.residual;
    rep.jacobian_condition = nr.condition;

    auto jets = derived_initials(prim, nr.x, dfs, ode.order);
    Trajectory traj = integrate_ode(ode, cfg.path, jets, cfg.tolerance, corrupt_index,
                                    corrupt_factor);
    rep.samples = traj.zs.size();

    // residual of every pullback along the trajectory; the derived pullback is
    // continued as a square root starting from its value at the base point
    rep.per_pullback.assign(N, 0.0);
    BranchCtx branches;
    Cplx tprev = 0.0;
    if (pulls.derived >= 0) tprev = eval_mpoly(basis.gens[pulls.derived], nr.x);

    for (size_t samp = 0; samp < traj.zs.size(); ++samp) {
        Cplx z = traj.zs[samp];
        branches.update(z);
        std::vector<Cplx> y(traj.states[samp].begin(), traj.states[samp].begin() + n);
        for (int i = 0; i < N; ++i) {
            Cplx fi;
            if (i == pulls.derived) {
                Cplx g = branches.eval(*pulls.square, z);
                Cplx root = std::sqrt(g);
                fi = (std::abs(root - tprev) <= std::abs(-root - tprev)) ? root : -root;
                tprev = fi;
            } else {
                fi = branches.eval(*pulls.given[i], z);
            }
            double dev = std::abs(eval_mpoly(basis.gens[i], y) - fi) / (1.0 + std::abs(fi));
            rep.per_pullback[i] = std::max(rep.per_pullback[i], dev);
        }
    }
    rep.residual = *std::max_element(rep.per_pullback.begin(), rep.per_pullback.end());
    rep.passed = rep.residual < cfg.tolerance;
    return rep;
}

}  // namespace schwarz
