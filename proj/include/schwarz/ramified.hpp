#pragma once

#include <numeric>
#include <string>

#include "schwarz/upoly.hpp"

namespace schwarz {

// A function of z represented as a rational function of w with z = w^r.
// r = 1 means plain rational functions of z.  Values with different r
// interoperate by lifting to the least common ramification.  The base field F
// is Rat for ordinary runs, or a rational-function field in parameter
// generators for parameterized runs; the derivation d/dz never touches F.
template <class F>
class Ram {
  public:
    Ram() : r_(1) {}
    explicit Ram(F c) : r_(1), v_(std::move(c)) {}
    Ram(int r, RatFun<F> v) : r_(r), v_(std::move(v)) {
        if (r_ < 1) throw ValidationError("ramification index must be positive");
    }

    static Ram zero() { return Ram(); }
    static Ram one() { return Ram(F::one()); }
    static Ram from_rat(const Rat& q) { return Ram(F::from_rat(q)); }
    static Ram z() { return Ram(1, RatFun<F>::x()); }
    // z^{p/q} as w^p with r = q (p may be negative)
    static Ram z_pow(long p, long q = 1) {
        if (q < 1) throw ValidationError("z_pow: nonpositive ramification");
        auto g = std::gcd(p < 0 ? -p : p, q);
        if (g > 1) { p /= g; q /= g; }
        UPoly<F> mono = UPoly<F>::x(static_cast<int>(p < 0 ? -p : p));
        RatFun<F> v = p >= 0 ? RatFun<F>(mono) : RatFun<F>(UPoly<F>::one(), mono);
        return Ram(static_cast<int>(q), std::move(v));
    }

    int ram() const { return r_; }
    const RatFun<F>& fun() const { return v_; }

    bool is_zero() const { return v_.is_zero(); }
    bool is_one() const { return v_.is_one(); }
    bool is_constant() const { return v_.is_constant(); }
    F constant_value() const { return v_.constant_value(); }

    Ram lifted(int R) const {
        if (R == r_) return *this;
        if (R % r_ != 0) throw Error("cannot lift ramification " + std::to_string(r_) + " to " +
                                     std::to_string(R));
        int k = R / r_;
        return Ram(R, RatFun<F>(v_.num().stretch(k), v_.den().stretch(k)));
    }

    Ram operator-() const { return Ram(r_, -v_); }

    friend Ram operator+(const Ram& a, const Ram& b) {
        auto [x, y, r] = unify(a, b);
        return Ram(r, x + y);
    }
    friend Ram operator-(const Ram& a, const Ram& b) { return a + (-b); }
    friend Ram operator*(const Ram& a, const Ram& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        auto [x, y, r] = unify(a, b);
        return Ram(r, x * y);
    }
    friend Ram operator/(const Ram& a, const Ram& b) {
        auto [x, y, r] = unify(a, b);
        return Ram(r, x / y);
    }
    Ram& operator+=(const Ram& o) { return *this = *this + o; }
    Ram& operator-=(const Ram& o) { return *this = *this - o; }
    Ram& operator*=(const Ram& o) { return *this = *this * o; }
    Ram& operator/=(const Ram& o) { return *this = *this / o; }

    Ram inverse() const { return Ram(r_, v_.inverse()); }

    friend bool operator==(const Ram& a, const Ram& b) {
        auto [x, y, r] = unify(a, b);
        (void)r;
        return x == y;
    }
    friend bool operator!=(const Ram& a, const Ram& b) { return !(a == b); }

    // drop r to the minimal ramification actually used
    Ram reduced() const {
        if (r_ == 1) return *this;
        int gn = v_.num().exponent_gcd();
        int gd = v_.den().exponent_gcd();
        int g = std::gcd(r_, std::gcd(gn, gd));
        if (v_.num().is_constant() && v_.den().is_constant()) g = r_;
        if (g <= 1) return *this;
        return Ram(r_ / g, RatFun<F>(v_.num().unstretch(g), v_.den().unstretch(g)));
    }

    std::string str(const std::string& zvar = "z", const std::string& wvar = "w") const {
        return v_.str(r_ == 1 ? zvar : wvar);
    }

  private:
    static std::tuple<RatFun<F>, RatFun<F>, int> unify(const Ram& a, const Ram& b) {
        if (a.r_ == b.r_) return {a.v_, b.v_, a.r_};
        int R = static_cast<int>(std::lcm(a.r_, b.r_));
        return {a.lifted(R).v_, b.lifted(R).v_, R};
    }

    int r_;
    RatFun<F> v_;
};

// d/dz, realized on w-representations as (1 / (r w^{r-1})) d/dw.
template <class F>
Ram<F> dz(const Ram<F>& f) {
    if (f.is_constant()) return Ram<F>::zero();
    int r = f.ram();
    RatFun<F> d = f.fun().derivative();
    if (r == 1) return Ram<F>(1, d);
    RatFun<F> scale(UPoly<F>::one(),
                    UPoly<F>::monomial(F::from_rat(Rat(static_cast<long>(r))), r - 1));
    return Ram<F>(r, d * scale);
}

}  // namespace schwarz
