#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schwarz/group.hpp"
#include "schwarz/invariant.hpp"
#include "schwarz/matrix.hpp"
#include "schwarz/ramified.hpp"
#include "schwarz/tensor.hpp"

namespace schwarz {

// ---- derivation setup ----------------------------------------------------

struct DerivationContext {
    int r = 1;  // z = w^r, delta = d/dz realized as (1/(r w^{r-1})) d/dw
};

// Lift all supplied pullbacks to their least common ramification.
template <class K>
DerivationContext setup_derivation(std::vector<std::optional<K>>& pullbacks) {
    int r = 1;
    for (const auto& f : pullbacks)
        if (f) r = static_cast<int>(std::lcm(r, f->ram()));
    for (auto& f : pullbacks)
        if (f) *f = f->lifted(r);
    return {r};
}

// ---- step (ii): the X_{i,j} recursion -------------------------------------

// Jacobian matrix of n polynomials in n variables; rejects generator sets
// whose determinant is identically zero.
inline Mat<MPoly<Rat>> jacobian(const std::vector<MPoly<Rat>>& fs) {
    const int n = static_cast<int>(fs.size());
    if (n == 0) throw ValidationError("jacobian of an empty generator list");
    for (const auto& f : fs)
        if (f.nvars() != n)
            throw ValidationError("jacobian needs as many variables as polynomials");
    Mat<MPoly<Rat>> j(n, n, MPoly<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) j(i, k) = fs[i].partial(k);
    return j;
}

// Columns of the recursion, with the Jacobian inverse realized exactly as
// adjugate over determinant.  Column j holds the numerators A_j; the actual
// entry is X_{i,j} = A_j[i] / Delta^{e_j} with e_0 = 0 and e_j = 2j - 1.
template <class K>
struct XijTable {
    int n = 0;
    std::vector<std::vector<MPoly<K>>> cols;  // (n+1) columns of n entries each
    MPoly<Rat> delta;                         // det of the primary Jacobian
    MPoly<K> delta_k;                         // same, lifted into K coefficients
    std::vector<int> den_pow;                 // e_j per column

    static int exponent(int j) { return j == 0 ? 0 : 2 * j - 1; }
};

template <class K>
MPoly<K> lift_rat(const MPoly<Rat>& p) {
    return p.template lift<K>([](const Rat& r) { return K::from_rat(r); });
}

template <class K>
XijTable<K> build_xij(const DerivationContext& ctx, const std::vector<MPoly<Rat>>& primary,
                      const std::vector<K>& primary_pullbacks) {
    (void)ctx;
    const int n = static_cast<int>(primary.size());
    if (static_cast<int>(primary_pullbacks.size()) != n)
        throw ValidationError("need one pullback per primary generator");

    Mat<MPoly<Rat>> jac = jacobian(primary);
    MPoly<Rat> delta = det(jac);
    if (delta.is_zero())
        throw DegenerateError("degenerate generator set: Jacobian determinant is zero");
    Mat<MPoly<Rat>> adj = adjugate(jac);

    XijTable<K> t;
    t.n = n;
    t.delta = delta;
    t.delta_k = lift_rat<K>(delta);

    std::vector<K> df;
    df.reserve(n);
    for (const auto& f : primary_pullbacks) df.push_back(dz(f));

    // column 0: the variables themselves
    std::vector<MPoly<K>> col0;
    for (int i = 0; i < n; ++i) col0.push_back(MPoly<K>::variable(n, i));
    t.cols.push_back(std::move(col0));
    t.den_pow.push_back(0);
    if (n == 0) return t;

    // column 1: a = adj(J) * delta f
    std::vector<MPoly<K>> a(n, MPoly<K>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (df[k].is_zero() || adj(i, k).is_zero()) continue;
            a[i] += lift_rat<K>(adj(i, k)).scaled(df[k]);
        }
    t.cols.push_back(a);
    t.den_pow.push_back(1);

    // u = grad(Delta) . a
    MPoly<K> u(n);
    for (int k = 0; k < n; ++k) {
        MPoly<Rat> dk = delta.partial(k);
        if (dk.is_zero() || a[k].is_zero()) continue;
        u += lift_rat<K>(dk) * a[k];
    }
    const MPoly<K>& dk2 = t.delta_k;
    MPoly<K> delta_sq = dk2 * dk2;

    for (int j = 2; j <= n; ++j) {
        const auto& prev = t.cols[j - 1];
        int e_prev = XijTable<K>::exponent(j - 1);
        std::vector<MPoly<K>> cur;
        cur.reserve(n);
        for (int i = 0; i < n; ++i) {
            MPoly<K> grad_dot(n);
            for (int k = 0; k < n; ++k) {
                MPoly<K> p = prev[i].partial(k);
                if (p.is_zero() || a[k].is_zero()) continue;
                grad_dot += p * a[k];
            }
            MPoly<K> entry = grad_dot * dk2;
            if (e_prev > 0 && !u.is_zero())
                entry -= prev[i].scaled_rat(Rat(static_cast<long>(e_prev))) * u;
            MPoly<K> dcoef = prev[i].map_coeffs([](const K& c) { return dz(c); });
            if (!dcoef.is_zero()) entry += delta_sq * dcoef;
            cur.push_back(std::move(entry));
        }
        t.cols.push_back(std::move(cur));
        t.den_pow.push_back(XijTable<K>::exponent(j));
    }
    return t;
}

// ---- step (iii): dependence solve -----------------------------------------

// Fraction of multivariate polynomials; normalization cancels the joint
// monomial content only (full multivariate gcd is never needed here).
template <class C>
struct MFrac {
    MPoly<C> num, den;

    MFrac() = default;
    explicit MFrac(MPoly<C> n) : num(std::move(n)), den(one_like(num)) {}
    MFrac(MPoly<C> n, MPoly<C> d) : num(std::move(n)), den(std::move(d)) { normalize(); }

    bool is_zero() const { return num.is_zero(); }

    MFrac operator-() const {
        MFrac r = *this;
        r.num = -r.num;
        return r;
    }
    friend MFrac operator+(const MFrac& x, const MFrac& y) {
        if (x.is_zero()) return y;
        if (y.is_zero()) return x;
        if (x.den == y.den) return MFrac(x.num + y.num, x.den);
        return MFrac(x.num * y.den + y.num * x.den, x.den * y.den);
    }
    friend MFrac operator-(const MFrac& x, const MFrac& y) { return x + (-y); }
    friend MFrac operator*(const MFrac& x, const MFrac& y) {
        if (x.is_zero()) return x;
        if (y.is_zero()) return y;
        return MFrac(x.num * y.num, x.den * y.den);
    }
    friend MFrac operator/(const MFrac& x, const MFrac& y) {
        if (y.is_zero()) throw DegenerateError("division by zero polynomial fraction");
        if (x.is_zero()) return x;
        return MFrac(x.num * y.den, x.den * y.num);
    }
    MFrac& operator+=(const MFrac& o) { return *this = *this + o; }
    MFrac& operator-=(const MFrac& o) { return *this = *this - o; }
    MFrac& operator*=(const MFrac& o) { return *this = *this * o; }

    friend bool operator==(const MFrac& x, const MFrac& y) {
        if (x.is_zero()) return y.is_zero();
        if (y.is_zero()) return false;
        return x.num * y.den == y.num * x.den;
    }

  private:
    static MPoly<C> one_like(const MPoly<C>& p) {
        return MPoly<C>::constant(p.nvars(), C::one());
    }
    void normalize() {
        if (den.is_zero()) throw DegenerateError("zero denominator in polynomial fraction");
        if (num.is_zero()) {
            den = one_like(den);
            return;
        }
        Mono cn = num.content_mono(), cd = den.content_mono();
        Mono joint;
        bool nontrivial = false;
        for (int i = 0; i < Mono::kMaxVars; ++i) {
            joint.e[i] = std::min(cn.e[i], cd.e[i]);
            nontrivial = nontrivial || joint.e[i] > 0;
        }
        if (nontrivial) {
            num = num.div_mono(joint);
            den = den.div_mono(joint);
        }
    }
};

// Signed maximal minors of the n x (n+1) table of X_{i,j} entries; the result
// satisfies sum_j C_j X_{i,j} = 0 identically in every row.
template <class K>
std::vector<MFrac<K>> solve_dependence(const XijTable<K>& t) {
    const int n = t.n;
    Mat<MFrac<K>> m(n, n + 1);
    for (int j = 0; j <= n; ++j) {
        MPoly<K> den = t.delta_k.pow(t.den_pow[j]);
        for (int i = 0; i < n; ++i) m(i, j) = MFrac<K>(t.cols[j][i], den);
    }
    return nullspace_cofactor(m);
}

// ---- internal tensor form of the table -------------------------------------

// Same recursion as build_xij, carried in the factored representation
// sum_t w_t (x) P_t (weights in K, polynomials over Q).  The polynomial
// arithmetic stays rational, which is what makes the larger runs fast.
template <class K>
struct TensorTable {
    int n = 0;
    std::vector<std::vector<TPoly<K>>> cols;
    MPoly<Rat> delta;
    std::vector<int> den_pow;
};

template <class K>
TensorTable<K> build_xij_tensor(const std::vector<MPoly<Rat>>& primary,
                                const std::vector<K>& primary_pullbacks) {
    const int n = static_cast<int>(primary.size());
    Mat<MPoly<Rat>> jac = jacobian(primary);
    MPoly<Rat> delta = det(jac);
    if (delta.is_zero())
        throw DegenerateError("degenerate generator set: Jacobian determinant is zero");
    Mat<MPoly<Rat>> adj = adjugate(jac);

    TensorTable<K> t;
    t.n = n;
    t.delta = delta;

    std::vector<K> df;
    for (const auto& f : primary_pullbacks) df.push_back(dz(f));

    std::vector<TPoly<K>> col0;
    for (int i = 0; i < n; ++i) col0.push_back(TPoly<K>::variable(n, i));
    t.cols.push_back(std::move(col0));
    t.den_pow.push_back(0);

    std::vector<TPoly<K>> a(n, TPoly<K>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (df[k].is_zero() || adj(i, k).is_zero()) continue;
            a[i].add_part(df[k], adj(i, k));
        }
    t.cols.push_back(a);
    t.den_pow.push_back(1);

    TPoly<K> u(n);
    for (int k = 0; k < n; ++k) {
        MPoly<Rat> dk = delta.partial(k);
        if (dk.is_zero()) continue;
        u += a[k].mul_poly(dk);
    }
    MPoly<Rat> delta_sq = delta * delta;

    for (int j = 2; j <= n; ++j) {
        const auto& prev = t.cols[j - 1];
        int e_prev = XijTable<K>::exponent(j - 1);
        std::vector<TPoly<K>> cur;
        for (int i = 0; i < n; ++i) {
            TPoly<K> grad_dot(n);
            for (int k = 0; k < n; ++k) {
                TPoly<K> p = prev[i].partial(k);
                if (p.is_zero() || a[k].is_zero()) continue;
                grad_dot += p * a[k];
            }
            TPoly<K> entry = grad_dot.mul_poly(delta);
            if (e_prev > 0 && !u.is_zero())
                entry -= (prev[i] * u).scaled_rat(Rat(static_cast<long>(e_prev)));
            TPoly<K> dw = prev[i].weight_derivative();
            if (!dw.is_zero()) entry += dw.mul_poly(delta_sq);
            cur.push_back(std::move(entry));
        }
        t.cols.push_back(std::move(cur));
        t.den_pow.push_back(XijTable<K>::exponent(j));
    }
    return t;
}

// ---- steps (iv)+(v): rewrite and substitute --------------------------------

template <class K>
struct OdeResultT {
    int order = 0;
    int r = 1;  // ramification of the presentation; 1 means plain z
    std::vector<K> coeffs;  // c_0 .. c_{n-1}, leading coefficient 1 implied

    // provenance
    std::vector<int> gen_degrees;
    std::vector<int> primary;
    std::vector<std::string> pullbacks;
    bool symbol_path = true;  // entries rewritten before the minor solve
};

namespace detail {

template <class K>
Ext<K> ext_pow(Ext<K> base, int e) {
    Ext<K> r = Ext<K>::one();
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

// joint presentation: reduce common ramification of all coefficients
template <class F>
void reduce_presentation(OdeResultT<Ram<F>>& ode) {
    int g = 0;
    for (const auto& c : ode.coeffs) {
        if (c.is_constant()) continue;
        g = std::gcd(g, std::gcd(c.fun().num().exponent_gcd(), c.fun().den().exponent_gcd()));
    }
    g = g == 0 ? ode.r : std::gcd(g, ode.r);
    if (g <= 1) return;
    for (auto& c : ode.coeffs)
        c = Ram<F>(ode.r / g, RatFun<F>(c.fun().num().unstretch(g), c.fun().den().unstretch(g)));
    ode.r /= g;
}

}  // namespace detail

// The whole pipeline: derivation setup, X_{i,j} recursion, dependence solve,
// invariant rewriting, substitution of the pullbacks.
//
// The dependence solve runs on the matrix S_{m,j} = grad(F_m) . A_j, the
// pairing of the table columns with the gradients of the primary generators
// (row-equivalent to the X_{i,j} table via the Jacobian, so the nullspace is
// the same; column j carries the tracked denominator Delta^{e_j}).  For a
// determinant-1 group every S_{m,j} is an invariant polynomial, so each entry
// is rewritten in the generator symbols first and the signed minors are taken
// after substituting the pullbacks; the Delta powers re-enter as the rewritten
// Jacobian determinant evaluated on the pullbacks.  If some entry fails to
// rewrite (e.g. a declared generator list that spans less than the full
// invariant ring), the minors are taken in X-space instead, the shared
// monomial content of numerator and cleared denominator is cancelled, and the
// two sides are rewritten separately.
template <class K>
OdeResultT<K> construct_ode(const InvariantBasis& basis, const GroupSpec& group,
                            std::vector<std::optional<K>> given_pullbacks,
                            bool skip_validation = false) {
    const int n = basis.nvars;
    const int N = basis.ngens();
    if (!group.det_one)
        throw ValidationError(
            "construction requires a determinant-1 group (set of generators inside SL_n); "
            "the dependence coefficients are invariant only in that case");
    if (group.dim != n) throw ValidationError("group dimension does not match the generators");

    DerivationContext ctx = setup_derivation(given_pullbacks);
    PullbackSet<K> pulls = resolve_pullbacks(basis, std::move(given_pullbacks));
    if (!skip_validation) {
        SyzygyReport rep = validate_pullbacks(basis, pulls);
        if (!rep.all_ok) {
            std::string which;
            for (size_t i = 0; i < rep.ok.size(); ++i)
                if (!rep.ok[i]) which += (which.empty() ? "" : ", ") + std::to_string(i + 1);
            throw ValidationError("pullbacks violate syzygy " + which +
                                  " (pass --skip-validation to waive)");
        }
    }

    std::vector<MPoly<Rat>> primary;
    std::vector<K> fp;
    for (int idx : basis.primary) {
        primary.push_back(basis.gens[idx]);
        fp.push_back(*pulls.given[idx]);
    }

    RewriteEngine eng(basis);
    std::vector<Ext<K>> vals = pulls.ext_values();
    auto to_ext_k = [](const K& c) { return Ext<K>(c); };
    auto to_ext_rat = [](const Rat& c) { return Ext<K>::from_rat(c); };

    OdeResultT<K> ode;
    ode.order = n;
    ode.r = ctx.r;
    ode.gen_degrees = basis.degrees;
    ode.primary = basis.primary;

    // final coefficient extraction from the evaluated dependence matrix
    auto finish = [&](Mat<Ext<K>>& se, const Ext<K>& dphi) {
        if (dphi.is_zero())
            throw DegenerateError(
                "Jacobian determinant vanishes on the pullback data (branch locus)");
        std::vector<Ext<K>> b = nullspace_cofactor(se);
        if (b[n].is_zero())
            throw DegenerateError(
                "degenerate dependence: the order-n leading minor vanishes on this data");
        std::vector<K> coeffs(n);
        for (int i = 0; i < n; ++i) {
            int epow = XijTable<K>::exponent(n) - XijTable<K>::exponent(i);
            Ext<K> ci = b[i] / (b[n] * detail::ext_pow(dphi, epow));
            if (!ci.in_base_field())
                throw NotExpressibleError(
                    "coefficient c_" + std::to_string(i) +
                    " does not descend to the declared function field");
            coeffs[i] = ci.base();
        }
        return coeffs;
    };

    bool done = false;
    bool symbol_path = true;

    // Fast route: tensor table, per-part rewriting over Q.
    try {
        TensorTable<K> tt = build_xij_tensor(primary, fp);
        Mat<Ext<K>> se(n, n + 1);
        for (int m = 0; m < n; ++m) {
            std::vector<MPoly<Rat>> grad;
            for (int k = 0; k < n; ++k) grad.push_back(primary[m].partial(k));
            for (int j = 0; j <= n; ++j) {
                TPoly<K> sig(n);
                for (int k = 0; k < n; ++k) {
                    if (grad[k].is_zero() || tt.cols[j][k].is_zero()) continue;
                    sig += tt.cols[j][k].mul_poly(grad[k]);
                }
                Ext<K> acc;
                for (const auto& part : sig.parts()) {
                    MPoly<Rat> rho = eng.rewrite(part.poly);
                    acc += Ext<K>(part.weight) *
                           rho.template eval<Ext<K>>(vals, to_ext_rat);
                }
                se(m, j) = std::move(acc);
            }
        }
        Ext<K> dphi = eng.rewrite(tt.delta).template eval<Ext<K>>(vals, to_ext_rat);
        ode.coeffs = finish(se, dphi);
        done = true;
    } catch (const NotExpressibleError&) {
        // a tensor part failed to rewrite on its own; retry on the expanded form
    }

    if (!done) {
        XijTable<K> table = build_xij(ctx, primary, fp);

        // S_{m,j} = grad(F_m) . A_j, expanded with K coefficients
        Mat<MPoly<K>> s(n, n + 1, MPoly<K>(n));
        for (int m = 0; m < n; ++m) {
            std::vector<MPoly<K>> grad;
            for (int k = 0; k < n; ++k) grad.push_back(lift_rat<K>(primary[m].partial(k)));
            for (int j = 0; j <= n; ++j) {
                MPoly<K> acc(n);
                for (int k = 0; k < n; ++k) {
                    if (grad[k].is_zero() || table.cols[j][k].is_zero()) continue;
                    acc += grad[k] * table.cols[j][k];
                }
                s(m, j) = std::move(acc);
            }
        }

        try {
            Mat<Ext<K>> se(n, n + 1);
            for (int m = 0; m < n; ++m)
                for (int j = 0; j <= n; ++j)
                    se(m, j) = eng.rewrite(s(m, j)).template eval<Ext<K>>(vals, to_ext_k);
            Ext<K> dphi =
                eng.rewrite(lift_rat<K>(table.delta)).template eval<Ext<K>>(vals, to_ext_k);
            ode.coeffs = finish(se, dphi);
            done = true;
        } catch (const NotExpressibleError&) {
            symbol_path = false;
        }

        if (!done) {
            // X-space fallback: signed minors of S, then cancel the joint
            // monomial content of numerator and cleared denominator before
            // rewriting the two sides separately.
            std::vector<MPoly<K>> b = nullspace_cofactor(s);
            MPoly<K> deltak = table.delta_k;
            std::vector<K> coeffs(n);
            for (int i = 0; i < n; ++i) {
                int epow = XijTable<K>::exponent(n) - XijTable<K>::exponent(i);
                MPoly<K> num = b[i];
                MPoly<K> den = b[n] * deltak.pow(epow);
                if (num.is_zero()) {
                    coeffs[i] = K::zero();
                    continue;
                }
                Mono cn = num.content_mono(), cd = den.content_mono();
                Mono joint;
                for (int v = 0; v < Mono::kMaxVars; ++v) joint.e[v] = std::min(cn.e[v], cd.e[v]);
                num = num.div_mono(joint);
                den = den.div_mono(joint);
                Ext<K> nv = eng.rewrite(num).template eval<Ext<K>>(vals, to_ext_k);
                Ext<K> dv = eng.rewrite(den).template eval<Ext<K>>(vals, to_ext_k);
                if (dv.is_zero())
                    throw DegenerateError("degenerate dependence: denominator vanishes");
                Ext<K> ci = nv / dv;
                if (!ci.in_base_field())
                    throw NotExpressibleError(
                        "coefficient c_" + std::to_string(i) +
                        " does not descend to the declared function field");
                coeffs[i] = ci.base();
            }
            ode.coeffs = std::move(coeffs);
        }
    }

    ode.symbol_path = symbol_path;
    detail::reduce_presentation(ode);
    return ode;
}

using OdeResult = OdeResultT<Ram<Rat>>;

}  // namespace schwarz
