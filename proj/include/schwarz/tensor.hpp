#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "schwarz/mpoly.hpp"
#include "schwarz/ramified.hpp"

namespace schwarz {

// Does a == c * b for a rational constant c?  Exact tests, used to keep
// tensor weights pairwise non-proportional.
inline std::optional<Rat> rat_ratio(const Rat& a, const Rat& b) {
    if (b.is_zero()) return std::nullopt;
    return a / b;
}

template <class F>
std::optional<Rat> rat_ratio(const RatFun<F>& a, const RatFun<F>& b) {
    if (b.is_zero() || a.is_zero()) return std::nullopt;
    if (!(a.den() == b.den())) return std::nullopt;  // monic canonical forms
    if (a.num().degree() != b.num().degree()) return std::nullopt;
    auto c = rat_ratio(a.num().lc(), b.num().lc());
    if (!c) return std::nullopt;
    if (!(a.num() == b.num().scaled(F::from_rat(*c)))) return std::nullopt;
    return c;
}

template <class F>
std::optional<Rat> rat_ratio(const Ram<F>& a, const Ram<F>& b) {
    if (a.ram() != b.ram()) {
        int r = static_cast<int>(std::lcm(a.ram(), b.ram()));
        return rat_ratio(a.lifted(r).fun(), b.lifted(r).fun());
    }
    return rat_ratio(a.fun(), b.fun());
}

// Sum of separable terms  sum_t  w_t (x) P_t  with function-field weights w_t
// and polynomials P_t over Q.  Everything the X_{i,j} recursion produces has
// this shape (the weights are products of derivatives of the pullbacks), so
// the heavy polynomial arithmetic happens over Q and the function field only
// carries a handful of weights.
//
// Weights are kept pairwise non-proportional (exact merge).  When they are in
// fact Q-linearly independent, a K-valued polynomial that is invariant per
// X-degree has every P_t invariant as well, so each part can be rewritten in
// the generator symbols on its own; a hidden higher-order dependence merely
// makes that per-part rewrite fail, which callers treat as a cue to fall back
// to the expanded representation.
template <class K>
class TPoly {
  public:
    struct Part {
        K weight;
        MPoly<Rat> poly;
    };

    TPoly() : nv_(0) {}
    explicit TPoly(int nvars) : nv_(nvars) {}

    static TPoly from_poly(int nvars, MPoly<Rat> p, K w) {
        TPoly t(nvars);
        t.add_part(std::move(w), std::move(p));
        return t;
    }
    static TPoly variable(int nvars, int i) {
        return from_poly(nvars, MPoly<Rat>::variable(nvars, i), K::one());
    }

    int nvars() const { return nv_; }
    bool is_zero() const { return parts_.empty(); }
    const std::vector<Part>& parts() const { return parts_; }

    void add_part(K w, MPoly<Rat> p) {
        if (w.is_zero() || p.is_zero()) return;
        for (auto& pt : parts_) {
            if (auto c = rat_ratio(w, pt.weight)) {
                pt.poly += p.scaled_rat(*c);
                if (pt.poly.is_zero()) prune();
                return;
            }
        }
        parts_.push_back({std::move(w), std::move(p)});
    }

    TPoly operator-() const {
        TPoly r = *this;
        for (auto& pt : r.parts_) pt.poly = -pt.poly;
        return r;
    }
    friend TPoly operator+(const TPoly& a, const TPoly& b) {
        TPoly r = a;
        r += b;
        return r;
    }
    friend TPoly operator-(const TPoly& a, const TPoly& b) {
        TPoly r = a;
        r -= b;
        return r;
    }
    TPoly& operator+=(const TPoly& o) {
        if (nv_ == 0) nv_ = o.nv_;
        for (const auto& pt : o.parts_) add_part(pt.weight, pt.poly);
        return *this;
    }
    TPoly& operator-=(const TPoly& o) {
        if (nv_ == 0) nv_ = o.nv_;
        for (const auto& pt : o.parts_) add_part(pt.weight, -pt.poly);
        return *this;
    }

    friend TPoly operator*(const TPoly& a, const TPoly& b) {
        TPoly r(a.nv_ ? a.nv_ : b.nv_);
        for (const auto& x : a.parts_)
            for (const auto& y : b.parts_) r.add_part(x.weight * y.weight, x.poly * y.poly);
        return r;
    }

    TPoly mul_poly(const MPoly<Rat>& q) const {
        TPoly r(nv_);
        if (q.is_zero()) return r;
        for (const auto& pt : parts_) r.parts_.push_back({pt.weight, pt.poly * q});
        r.prune();
        return r;
    }
    TPoly scaled_weight(const K& w) const {
        TPoly r(nv_);
        if (w.is_zero()) return r;
        for (const auto& pt : parts_) r.add_part(pt.weight * w, pt.poly);
        return r;
    }
    TPoly scaled_rat(const Rat& q) const {
        TPoly r(nv_);
        if (q.is_zero()) return r;
        for (const auto& pt : parts_) r.parts_.push_back({pt.weight, pt.poly.scaled_rat(q)});
        return r;
    }

    TPoly partial(int i) const {
        TPoly r(nv_);
        for (const auto& pt : parts_) {
            MPoly<Rat> d = pt.poly.partial(i);
            if (!d.is_zero()) r.parts_.push_back({pt.weight, std::move(d)});
        }
        return r;  // partial keeps weights, so pairwise non-proportionality survives
    }

    // apply the derivation to the weights (the X-part is delta-constant)
    TPoly weight_derivative() const {
        TPoly r(nv_);
        for (const auto& pt : parts_) r.add_part(dz(pt.weight), pt.poly);
        return r;
    }

    // expand into an ordinary polynomial with K coefficients
    MPoly<K> expand() const {
        MPoly<K> r(nv_);
        for (const auto& pt : parts_) {
            const K& w = pt.weight;
            r += pt.poly.template lift<K>([&](const Rat& c) { return w * K::from_rat(c); });
        }
        return r;
    }

  private:
    void prune() {
        parts_.erase(std::remove_if(parts_.begin(), parts_.end(),
                                    [](const Part& p) { return p.poly.is_zero(); }),
                     parts_.end());
    }

    int nv_;
    std::vector<Part> parts_;
};

}  // namespace schwarz
