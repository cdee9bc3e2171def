#pragma once

#include <memory>

#include "schwarz/errors.hpp"
#include "schwarz/rational.hpp"

namespace schwarz {

// Element a + b*t of the quadratic extension K[t]/(t^2 - g).  Used when a
// pullback is only known through its square (solved from a syzygy): the
// construction carries t formally and the final coefficients must land back
// in K.  Values without a t-part carry no g and mix with any extension.
template <class K>
class Ext {
  public:
    Ext() = default;
    explicit Ext(K a) : a_(std::move(a)) {}
    Ext(K a, K b, std::shared_ptr<const K> g) : a_(std::move(a)), b_(std::move(b)), g_(std::move(g)) {
        if (b_.is_zero()) g_.reset();
    }

    static Ext zero() { return Ext(); }
    static Ext one() { return Ext(K::one()); }
    static Ext from_rat(const Rat& q) { return Ext(K::from_rat(q)); }
    // the generator t itself, with t^2 = g
    static Ext sqrt_of(K g) {
        return Ext(K::zero(), K::one(), std::make_shared<const K>(std::move(g)));
    }

    const K& base() const { return a_; }
    const K& t_part() const { return b_; }
    bool in_base_field() const { return b_.is_zero(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_one() const { return b_.is_zero() && a_.is_one(); }

    Ext operator-() const { return Ext(-a_, -b_, g_); }

    friend Ext operator+(const Ext& x, const Ext& y) {
        auto g = merge(x, y);
        return Ext(x.a_ + y.a_, x.b_ + y.b_, g);
    }
    friend Ext operator-(const Ext& x, const Ext& y) { return x + (-y); }
    friend Ext operator*(const Ext& x, const Ext& y) {
        auto g = merge(x, y);
        if (!g || x.b_.is_zero() || y.b_.is_zero())
            return Ext(x.a_ * y.a_, x.a_ * y.b_ + x.b_ * y.a_, g);
        return Ext(x.a_ * y.a_ + x.b_ * y.b_ * (*g), x.a_ * y.b_ + x.b_ * y.a_, g);
    }
    friend Ext operator/(const Ext& x, const Ext& y) { return x * y.inverse(); }
    Ext& operator+=(const Ext& o) { return *this = *this + o; }
    Ext& operator-=(const Ext& o) { return *this = *this - o; }
    Ext& operator*=(const Ext& o) { return *this = *this * o; }

    Ext inverse() const {
        if (b_.is_zero()) {
            if (a_.is_zero()) throw DegenerateError("inverse of zero");
            return Ext(K::one() / a_);
        }
        K nrm = a_ * a_ - b_ * b_ * (*g_);
        if (nrm.is_zero())
            throw DegenerateError("quadratic extension norm vanishes (t^2 - g splits on input)");
        return Ext(a_ / nrm, -(b_ / nrm), g_);
    }

    friend bool operator==(const Ext& x, const Ext& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const Ext& x, const Ext& y) { return !(x == y); }

  private:
    static std::shared_ptr<const K> merge(const Ext& x, const Ext& y) {
        if (!x.g_) return y.g_;
        if (!y.g_) return x.g_;
        if (x.g_ != y.g_ && !(*x.g_ == *y.g_))
            throw Error("mixing distinct quadratic extensions");
        return x.g_;
    }

    K a_{};
    K b_{};
    std::shared_ptr<const K> g_;
};

}  // namespace schwarz
