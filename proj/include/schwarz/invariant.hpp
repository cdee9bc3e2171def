#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "schwarz/matrix.hpp"
#include "schwarz/mpoly.hpp"
#include "schwarz/quadext.hpp"

namespace schwarz {

// Generators of the invariant ring of a finite linear group, with a
// distinguished "primary" subset of n generators whose Jacobian determinant
// does not vanish, plus the polynomial relations (syzygies) among all
// generators.  Generator polynomials live in X_1..X_n over Q; syzygies live
// in N abstract symbols, one per generator.
struct InvariantBasis {
    int nvars = 0;
    std::vector<MPoly<Rat>> gens;
    std::vector<int> degrees;
    std::vector<int> primary;          // 0-based indices into gens, size == nvars
    std::vector<MPoly<Rat>> syzygies;  // in ngens() symbol variables

    int ngens() const { return static_cast<int>(gens.size()); }

    static InvariantBasis make(int nvars, std::vector<MPoly<Rat>> gens, std::vector<int> degrees,
                               std::vector<int> primary, std::vector<MPoly<Rat>> syzygies);
};

// Substitute the concrete generators for the symbols of q.
template <class C>
MPoly<C> expand_symbols(const MPoly<C>& q, const InvariantBasis& b) {
    if (q.nvars() != b.ngens()) throw Error("symbol polynomial has wrong variable count");
    std::vector<MPoly<C>> vals;
    vals.reserve(b.gens.size());
    for (const auto& f : b.gens)
        vals.push_back(f.template lift<C>([](const Rat& r) { return C::from_rat(r); }));
    return q.template eval<MPoly<C>>(vals,
                                     [&](const C& c) { return MPoly<C>::constant(b.nvars, c); });
}

inline MPoly<Rat> expand_symbols_rat(const MPoly<Rat>& q, const InvariantBasis& b) {
    if (q.nvars() != b.ngens()) throw Error("symbol polynomial has wrong variable count");
    return q.eval<MPoly<Rat>>(b.gens,
                              [&](const Rat& c) { return MPoly<Rat>::constant(b.nvars, c); });
}

inline InvariantBasis InvariantBasis::make(int nvars, std::vector<MPoly<Rat>> gens,
                                           std::vector<int> degrees, std::vector<int> primary,
                                           std::vector<MPoly<Rat>> syzygies) {
    InvariantBasis b;
    b.nvars = nvars;
    b.gens = std::move(gens);
    b.degrees = std::move(degrees);
    b.primary = std::move(primary);
    b.syzygies = std::move(syzygies);
    if (b.degrees.size() != b.gens.size())
        throw ValidationError("generator/degree count mismatch");
    for (size_t i = 0; i < b.gens.size(); ++i) {
        if (b.gens[i].nvars() != nvars) throw ValidationError("generator has wrong variable count");
        if (b.gens[i].is_zero() || !b.gens[i].is_homogeneous())
            throw ValidationError("generator " + std::to_string(i + 1) + " is not homogeneous");
        if (b.degrees[i] < 1)
            throw ValidationError("generator degrees must be positive");
        if (b.gens[i].degree() != b.degrees[i])
            throw ValidationError("generator " + std::to_string(i + 1) +
                                  " does not match its declared degree");
    }
    if (static_cast<int>(b.primary.size()) != nvars)
        throw ValidationError("primary subset must have exactly n generators");
    for (int idx : b.primary)
        if (idx < 0 || idx >= b.ngens()) throw ValidationError("primary index out of range");
    // Jacobian of the primary subset must be nonzero
    Mat<MPoly<Rat>> jac(nvars, nvars, MPoly<Rat>(nvars));
    for (int i = 0; i < nvars; ++i)
        for (int j = 0; j < nvars; ++j) jac(i, j) = b.gens[b.primary[i]].partial(j);
    if (det(jac).is_zero())
        throw ValidationError("primary generators have identically zero Jacobian determinant");
    for (const auto& s : b.syzygies) {
        if (s.nvars() != b.ngens()) throw ValidationError("syzygy has wrong symbol count");
        if (!expand_symbols_rat(s, b).is_zero())
            throw ValidationError("declared syzygy does not vanish on the generators");
    }
    return b;
}

// Rewrites invariant polynomials as polynomials in the generators, one
// homogeneous X-degree at a time: enumerate the generator monomials of that
// weighted degree, expand them, and solve the exact linear system matching
// X-monomial coefficients.  The expansion matrix lives over Q regardless of
// the coefficient field of the input, so elimination data is cached per
// degree and shared across calls; the (possibly function-field) coefficients
// only ever appear on the right-hand side.
//
// When syzygies make the system underdetermined, the representative chosen
// minimizes the exponent of the last generator symbol (free columns, which
// come last in preference order, are set to zero); ties normalize
// lexicographically.
class RewriteEngine {
  public:
    explicit RewriteEngine(const InvariantBasis& b) : basis_(&b) {}

    const InvariantBasis& basis() const { return *basis_; }

    template <class K>
    MPoly<K> rewrite(const MPoly<K>& p) {
        if (p.nvars() != basis_->nvars) throw Error("rewrite: wrong variable count");
        const int N = basis_->ngens();
        MPoly<K> out(N);
        for (auto& [d, comp] : p.homogeneous_components()) {
            MPoly<K> q = rewrite_component(comp, d);
            out += q;
        }
        return out;
    }

  private:
    using Key = std::array<uint16_t, Mono::kMaxVars>;

    struct Pivot {
        int row;                 // probe row index
        std::vector<Rat> col;    // reduced column over probe rows
        std::vector<Rat> alpha;  // expression in the original candidates
    };
    struct DegreeData {
        std::vector<Mono> candidates;             // preference order
        std::vector<const MPoly<Rat>*> expansions;
        std::vector<Mono> probes;                 // deglex-descending X-monomials
        std::vector<Pivot> pivots;
        int level = 0;
        bool full = false;
    };

    const MPoly<Rat>& expansion(const Mono& m) {
        auto it = expansion_cache_.find(m.e);
        if (it != expansion_cache_.end()) return it->second;
        MPoly<Rat> value(basis_->nvars);
        bool trivial = true;
        for (int i = 0; i < basis_->ngens(); ++i)
            if (m.e[i]) trivial = false;
        if (trivial) {
            value = MPoly<Rat>::constant(basis_->nvars, Rat(1));
        } else {
            int i = 0;
            while (m.e[i] == 0) ++i;
            Mono prev = m;
            prev.e[i] -= 1;
            value = expansion(prev) * basis_->gens[i];
        }
        return expansion_cache_.emplace(m.e, std::move(value)).first->second;
    }

    void enumerate_candidates(int d, int gi, Mono cur, std::vector<Mono>& out) {
        const int N = basis_->ngens();
        if (gi == N) {
            if (d == 0) out.push_back(cur);
            return;
        }
        int dg = basis_->degrees[gi];
        for (int a = 0; a * dg <= d; ++a) {
            cur.e[gi] = static_cast<uint16_t>(a);
            enumerate_candidates(d - a * dg, gi + 1, cur, out);
        }
        cur.e[gi] = 0;
    }

    DegreeData& degree_data(int d) {
        auto it = cache_.find(d);
        if (it != cache_.end()) return it->second;
        DegreeData dd;
        const int N = basis_->ngens();
        enumerate_candidates(d, 0, Mono{}, dd.candidates);
        std::sort(dd.candidates.begin(), dd.candidates.end(), [N](const Mono& a, const Mono& b) {
            if (a.e[N - 1] != b.e[N - 1]) return a.e[N - 1] < b.e[N - 1];
            return a.e < b.e;
        });
        dd.expansions.reserve(dd.candidates.size());
        for (const auto& c : dd.candidates) dd.expansions.push_back(&expansion(c));
        build_probes(dd, 1);
        return cache_.emplace(d, std::move(dd)).first->second;
    }

    void build_probes(DegreeData& dd, int level) {
        const int nv = basis_->nvars;
        dd.level = level;
        std::map<Key, int, std::greater<Key>> probe_set;  // deglex desc == array desc per degree
        bool all_taken = true;
        for (const auto* e : dd.expansions) {
            const auto& ts = e->terms();
            size_t take = dd.full ? ts.size() : std::min<size_t>(level, ts.size());
            if (take < ts.size()) all_taken = false;
            for (size_t k = 0; k < take; ++k) probe_set.emplace(ts[k].first.e, 0);
        }
        if (all_taken) dd.full = true;
        dd.probes.clear();
        dd.probes.reserve(probe_set.size());
        for (auto& [k, idx] : probe_set) {
            idx = static_cast<int>(dd.probes.size());
            Mono m;
            m.e = k;
            dd.probes.push_back(m);
        }
        // column echelonization in preference order over the probe rows
        dd.pivots.clear();
        const size_t R = dd.probes.size(), C = dd.candidates.size();
        for (size_t j = 0; j < C; ++j) {
            std::vector<Rat> v(R, Rat());
            for (const auto& [m, c] : dd.expansions[j]->terms()) {
                auto it = probe_set.find(m.e);
                if (it != probe_set.end()) v[it->second] = c;
            }
            std::vector<Rat> alpha(C, Rat());
            alpha[j] = Rat(1);
            for (const auto& p : dd.pivots) {
                const Rat& c = v[p.row];
                if (c.is_zero()) continue;
                Rat cc = c;  // v[p.row] is modified below
                for (size_t r = 0; r < R; ++r)
                    if (!p.col[r].is_zero()) v[r] -= cc * p.col[r];
                for (size_t t = 0; t < C; ++t)
                    if (!p.alpha[t].is_zero()) alpha[t] -= cc * p.alpha[t];
            }
            int row = -1;
            for (size_t r = 0; r < R; ++r)
                if (!v[r].is_zero()) {
                    row = static_cast<int>(r);
                    break;
                }
            if (row < 0) continue;  // dependent candidate (syzygy multiple): never used
            Rat inv = v[row].inverse();
            for (auto& x : v) x *= inv;
            for (auto& x : alpha) x *= inv;
            dd.pivots.push_back({row, std::move(v), std::move(alpha)});
        }
        (void)nv;
    }

    template <class K>
    MPoly<K> rewrite_component(const MPoly<K>& comp, int d) {
        DegreeData& dd0 = degree_data(d);
        if (dd0.candidates.empty())
            throw NotExpressibleError("no invariant of degree " + std::to_string(d) +
                                      " exists in the generators (input not invariant?)");
        for (;;) {
            DegreeData& dd = cache_.at(d);
            auto result = try_solve(comp, dd);
            if (result) return *result;
            if (dd.full)
                throw NotExpressibleError(
                    "polynomial component of degree " + std::to_string(d) +
                    " is not expressible in the generators (input not invariant, or the "
                    "generator list is incomplete)");
            DegreeData rebuilt = std::move(dd);
            rebuilt.full = rebuilt.level >= 2;  // escalate once, then go full
            build_probes(rebuilt, rebuilt.level + 2);
            cache_[d] = std::move(rebuilt);
        }
    }

    template <class K>
    std::optional<MPoly<K>> try_solve(const MPoly<K>& comp, const DegreeData& dd) {
        const size_t R = dd.probes.size(), C = dd.candidates.size();
        // gather right-hand side at the probe monomials (both sides deglex desc)
        std::vector<K> b(R, K::zero());
        {
            const auto& ts = comp.terms();
            size_t i = 0, r = 0;
            const int nv = comp.nvars();
            while (i < ts.size() && r < R) {
                int c = mono_cmp(ts[i].first, dd.probes[r], nv);
                if (c > 0) {
                    ++i;
                } else if (c < 0) {
                    ++r;
                } else {
                    b[r] = ts[i].second;
                    ++i, ++r;
                }
            }
        }
        std::vector<K> beta;
        beta.reserve(dd.pivots.size());
        for (const auto& p : dd.pivots) {
            K c = b[p.row];
            if (!c.is_zero())
                for (size_t r = 0; r < R; ++r)
                    if (!p.col[r].is_zero()) b[r] -= scale_rat(c, p.col[r]);
            beta.push_back(std::move(c));
        }
        for (const auto& x : b)
            if (!x.is_zero()) return std::nullopt;  // probe rows inconsistent: escalate/fail
        std::vector<K> q(C, K::zero());
        for (size_t k = 0; k < dd.pivots.size(); ++k) {
            if (beta[k].is_zero()) continue;
            const auto& alpha = dd.pivots[k].alpha;
            for (size_t j = 0; j < C; ++j)
                if (!alpha[j].is_zero()) q[j] += scale_rat(beta[k], alpha[j]);
        }
        // full verification: the reconstruction must reproduce comp exactly
        std::map<Key, K, std::greater<Key>> residual;
        for (const auto& [m, c] : comp.terms()) residual.emplace(m.e, c);
        for (size_t j = 0; j < C; ++j) {
            if (q[j].is_zero()) continue;
            for (const auto& [m, c] : dd.expansions[j]->terms()) {
                auto [it, fresh] = residual.try_emplace(m.e, K::zero());
                it->second -= scale_rat(q[j], c);
            }
        }
        for (const auto& [m, c] : residual)
            if (!c.is_zero()) return std::nullopt;
        MPoly<K> out(basis_->ngens());
        std::vector<typename MPoly<K>::Term> ts;
        for (size_t j = 0; j < C; ++j)
            if (!q[j].is_zero()) ts.push_back({dd.candidates[j], std::move(q[j])});
        out.set_terms(std::move(ts));
        return out;
    }

    template <class K>
    static K scale_rat(const K& k, const Rat& r) {
        if constexpr (std::is_same_v<K, Rat>) {
            return k * r;
        } else {
            return k * K::from_rat(r);
        }
    }

    const InvariantBasis* basis_;
    std::map<Key, MPoly<Rat>> expansion_cache_;
    std::map<int, DegreeData> cache_;
};

// ---- pullbacks ----------------------------------------------------------

// One pullback value per generator; at most one may be left unspecified, in
// which case it is solved from a syzygy that is quadratic in its symbol (the
// solved value enters later computation as a formal square root).
template <class K>
struct PullbackSet {
    std::vector<std::optional<K>> given;  // size N
    int derived = -1;
    std::shared_ptr<const K> square;  // g with f_derived^2 = g

    int size() const { return static_cast<int>(given.size()); }

    std::vector<Ext<K>> ext_values() const {
        std::vector<Ext<K>> v;
        v.reserve(given.size());
        for (int i = 0; i < size(); ++i) {
            if (i == derived)
                v.push_back(Ext<K>(K::zero(), K::one(), square));
            else
                v.push_back(Ext<K>(*given[i]));
        }
        return v;
    }
};

template <class K>
PullbackSet<K> resolve_pullbacks(const InvariantBasis& b, std::vector<std::optional<K>> given) {
    if (static_cast<int>(given.size()) != b.ngens())
        throw ValidationError("expected one pullback per generator (" +
                              std::to_string(b.ngens()) + ")");
    PullbackSet<K> ps;
    ps.given = std::move(given);
    std::vector<int> missing;
    for (int i = 0; i < ps.size(); ++i)
        if (!ps.given[i]) missing.push_back(i);
    for (int idx : b.primary)
        if (!ps.given[idx])
            throw ValidationError("pullback for primary generator " + std::to_string(idx + 1) +
                                  " must be given explicitly");
    if (missing.empty()) return ps;
    if (missing.size() > 1)
        throw ValidationError("more than one pullback missing; cannot derive");
    int idx = missing[0];
    const int N = b.ngens();
    for (const auto& s : b.syzygies) {
        if (s.degree_in(idx) != 2) continue;
        // split s = A * Phi_idx^2 + L * Phi_idx + B
        MPoly<Rat> A(N), L(N), B(N);
        for (const auto& [m, c] : s.terms()) {
            Mono mm = m;
            int e = m.e[idx];
            mm.e[idx] = 0;
            MPoly<Rat> t = MPoly<Rat>::monomial(N, mm, c);
            if (e == 0)
                B += t;
            else if (e == 1)
                L += t;
            else if (e == 2)
                A += t;
            else
                throw ValidationError("syzygy has degree > 2 in the missing pullback symbol");
        }
        if (!L.is_zero()) continue;  // needs completing the square; unsupported
        std::vector<K> vals(N, K::zero());
        for (int i = 0; i < N; ++i)
            if (i != idx) vals[i] = *ps.given[i];
        auto to_k = [](const Rat& r) { return K::from_rat(r); };
        K a = A.template eval<K>(vals, to_k);
        if (a.is_zero()) continue;
        K g = -(B.template eval<K>(vals, to_k) / a);
        ps.derived = idx;
        ps.square = std::make_shared<const K>(std::move(g));
        return ps;
    }
    throw ValidationError("no quadratic syzygy determines the missing pullback " +
                          std::to_string(idx + 1));
}

// Evaluate every declared syzygy on the pullback values; pass iff each one
// vanishes identically as a function.
struct SyzygyReport {
    std::vector<bool> ok;
    bool all_ok = true;
};

template <class T>
SyzygyReport check_syzygies(const InvariantBasis& b, const std::vector<T>& values) {
    SyzygyReport rep;
    for (const auto& s : b.syzygies) {
        T v = s.template eval<T>(values, [](const Rat& r) { return T::from_rat(r); });
        bool ok = v.is_zero();
        rep.ok.push_back(ok);
        rep.all_ok = rep.all_ok && ok;
    }
    return rep;
}

template <class K>
SyzygyReport validate_pullbacks(const InvariantBasis& b, const PullbackSet<K>& ps) {
    return check_syzygies(b, ps.ext_values());
}

}  // namespace schwarz
