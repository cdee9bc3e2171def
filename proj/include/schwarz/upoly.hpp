#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "schwarz/rational.hpp"

namespace schwarz {

// Dense univariate polynomial over a field F.  coeff(i) multiplies x^i;
// trailing zeros are never stored, the zero polynomial has no coefficients.
template <class F>
class UPoly {
  public:
    UPoly() = default;
    explicit UPoly(F c) {
        if (!c.is_zero()) c_.push_back(std::move(c));
    }
    explicit UPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly zero() { return UPoly(); }
    static UPoly one() { return UPoly(F::one()); }
    static UPoly x(int k = 1) { return monomial(F::one(), k); }
    static UPoly monomial(F c, int k) {
        UPoly p;
        if (!c.is_zero()) {
            p.c_.assign(static_cast<size_t>(k) + 1, F::zero());
            p.c_.back() = std::move(c);
        }
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    // true iff a single term c * x^k
    bool is_monomial() const {
        if (c_.empty()) return false;
        for (size_t i = 0; i + 1 < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    int order() const {  // valuation at x = 0; degree+1 sentinel for zero poly
        for (size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return static_cast<int>(i);
        return static_cast<int>(c_.size());
    }
    const F& lc() const { return c_.back(); }
    F coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return F::zero();
        return c_[i];
    }
    const std::vector<F>& coeffs() const { return c_; }

    UPoly operator-() const {
        UPoly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        UPoly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), F::zero());
        for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
        r.trim();
        return r;
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly();
        UPoly r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, F::zero());
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                r.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        r.trim();
        return r;
    }
    UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
    UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

    UPoly scaled(const F& s) const {
        if (s.is_zero()) return UPoly();
        UPoly r = *this;
        for (auto& c : r.c_) c = c * s;
        return r;
    }

    // quotient and remainder; F must be a field
    friend std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
        if (b.is_zero()) throw DegenerateError("polynomial division by zero");
        UPoly q;
        if (a.c_.size() >= b.c_.size()) q.c_.assign(a.c_.size() - b.c_.size() + 1, F::zero());
        F binv = b.lc().inverse();
        while (!a.is_zero() && a.c_.size() >= b.c_.size()) {
            F c = a.lc() * binv;
            size_t shift = a.c_.size() - b.c_.size();
            q.c_[shift] = c;
            for (size_t i = 0; i < b.c_.size(); ++i) a.c_[shift + i] -= c * b.c_[i];
            a.trim();
        }
        q.trim();
        return {q, a};
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return UPoly();
        UPoly r;
        r.c_.resize(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * F::from_rat(Rat(static_cast<long>(i)));
        r.trim();
        return r;
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        return scaled(lc().inverse());
    }

    // substitute x -> x^k
    UPoly stretch(int k) const {
        if (is_zero() || k == 1) return *this;
        UPoly r;
        r.c_.assign((c_.size() - 1) * k + 1, F::zero());
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i * k] = c_[i];
        return r;
    }
    // inverse of stretch: substitute x^k -> x, requires all exponents divisible by k
    UPoly unstretch(int k) const {
        if (is_zero() || k == 1) return *this;
        UPoly r;
        r.c_.assign((c_.size() - 1) / k + 1, F::zero());
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (i % k) throw Error("unstretch: exponent not divisible");
            r.c_[i / k] = c_[i];
        }
        r.trim();
        return r;
    }
    // gcd of exponents carrying nonzero coefficients (0 for constants)
    int exponent_gcd() const {
        long g = 0;
        for (size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) g = std::gcd(g, static_cast<long>(i));
        return static_cast<int>(g);
    }

    // substitute x -> x + a (Taylor shift)
    UPoly shift(const F& a) const {
        UPoly r;
        for (int i = degree(); i >= 0; --i) {
            // r = r * (x + a) + c_i
            UPoly t;
            t.c_.assign(r.c_.size() + 1, F::zero());
            for (size_t j = 0; j < r.c_.size(); ++j) {
                t.c_[j + 1] += r.c_[j];
                t.c_[j] += r.c_[j] * a;
            }
            t.c_.resize(std::max<size_t>(t.c_.size(), 1), F::zero());
            t.c_[0] += c_[i];
            t.trim();
            r = std::move(t);
        }
        return r;
    }

    template <class T, class Map>
    T eval(const T& x, Map to_t) const {
        // Horner; Map converts F coefficients into T
        T r = to_t(F::zero());
        for (int i = degree(); i >= 0; --i) r = r * x + to_t(c_[i]);
        return r;
    }
    F eval(const F& x) const {
        return eval<F>(x, [](const F& c) { return c; });
    }

    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            if (c_[i].is_zero()) continue;
            std::ostringstream cs;
            cs << c_[i];
            std::string c = cs.str();
            bool neg = !c.empty() && c[0] == '-';
            if (neg) c = c.substr(1);
            os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
            bool needs_coeff = (c != "1") || i == 0;
            bool composite = c.find_first_of("+- ") != std::string::npos;
            if (needs_coeff) os << (composite ? "(" + c + ")" : c);
            if (i > 0) {
                if (needs_coeff) os << "*";
                os << var;
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        return os.str();
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<F> c_;
};

template <class F>
UPoly<F> gcd(UPoly<F> a, UPoly<F> b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

// Rational function num/den over a field F, kept normalized: gcd(num, den) = 1
// and den monic.  Fast paths avoid the Euclid call where the structure makes
// the gcd obvious (constant or monomial denominators).
template <class F>
class RatFun {
  public:
    RatFun() : num_(), den_(UPoly<F>::one()) {}
    explicit RatFun(F c) : num_(std::move(c)), den_(UPoly<F>::one()) {}
    explicit RatFun(UPoly<F> n) : num_(std::move(n)), den_(UPoly<F>::one()) {}
    RatFun(UPoly<F> n, UPoly<F> d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static RatFun zero() { return RatFun(); }
    static RatFun one() { return RatFun(F::one()); }
    static RatFun from_rat(const Rat& r) { return RatFun(F::from_rat(r)); }
    static RatFun x(int k = 1) { return RatFun(UPoly<F>::x(k)); }

    const UPoly<F>& num() const { return num_; }
    const UPoly<F>& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    F constant_value() const { return num_.coeff(0); }  // valid when is_constant()

    RatFun operator-() const {
        RatFun r = *this;
        r.num_ = -r.num_;
        return r;
    }

    // Both operands are kept reduced with monic denominators, which lets the
    // arithmetic below cancel through small gcds of cofactors instead of one
    // large gcd of the results.
    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_.is_one() && b.den_.is_one())
            return RatFun(raw{}, a.num_ + b.num_, b.den_);
        if (a.den_ == b.den_) {
            UPoly<F> n = a.num_ + b.num_;
            if (n.is_zero()) return RatFun();
            UPoly<F> g = gcd_fast(n, a.den_);
            if (g.is_one()) return RatFun(raw{}, std::move(n), a.den_);
            return RatFun(raw{}, divmod(n, g).first, divmod(a.den_, g).first);
        }
        UPoly<F> g = gcd_fast(a.den_, b.den_);
        if (g.is_one()) {
            UPoly<F> n = a.num_ * b.den_ + b.num_ * a.den_;
            if (n.is_zero()) return RatFun();
            return RatFun(raw{}, std::move(n), a.den_ * b.den_);
        }
        UPoly<F> da = divmod(a.den_, g).first;  // a.den / g
        UPoly<F> db = divmod(b.den_, g).first;  // b.den / g
        UPoly<F> n = a.num_ * db + b.num_ * da;
        if (n.is_zero()) return RatFun();
        UPoly<F> h = gcd_fast(n, g);
        if (h.is_one()) return RatFun(raw{}, std::move(n), da * b.den_);
        return RatFun(raw{}, divmod(n, h).first, da * divmod(b.den_, h).first);
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
    friend RatFun operator*(const RatFun& a, const RatFun& b) {
        if (a.is_zero() || b.is_zero()) return RatFun();
        if (a.den_.is_one() && b.den_.is_one()) return RatFun(raw{}, a.num_ * b.num_, a.den_);
        // cross-cancel: reduced inputs make the result reduced afterwards
        UPoly<F> g1 = gcd_fast(a.num_, b.den_);
        UPoly<F> g2 = gcd_fast(b.num_, a.den_);
        UPoly<F> n1 = g1.is_one() ? a.num_ : divmod(a.num_, g1).first;
        UPoly<F> n2 = g2.is_one() ? b.num_ : divmod(b.num_, g2).first;
        UPoly<F> d1 = g2.is_one() ? a.den_ : divmod(a.den_, g2).first;
        UPoly<F> d2 = g1.is_one() ? b.den_ : divmod(b.den_, g1).first;
        return RatFun(raw{}, n1 * n2, d1 * d2);
    }
    friend RatFun operator/(const RatFun& a, const RatFun& b) {
        if (b.is_zero()) throw DegenerateError("rational function division by zero");
        if (a.is_zero()) return RatFun();
        return a * b.inverse();
    }
    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
    RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

    RatFun inverse() const {
        if (is_zero()) throw DegenerateError("inverse of zero rational function");
        F lc = num_.lc().inverse();
        return RatFun(raw{}, den_.scaled(lc), num_.scaled(lc));
    }

    // d/dx by the quotient rule
    RatFun derivative() const {
        if (den_.is_one()) return RatFun(num_.derivative());
        return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    template <class T, class Map>
    T eval(const T& x, Map to_t) const {
        return num_.template eval<T>(x, to_t) / den_.template eval<T>(x, to_t);
    }

    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    std::string str(const std::string& var = "x") const {
        if (den_.is_one()) return num_.str(var);
        std::string n = num_.str(var), d = den_.str(var);
        bool np = num_.degree() > num_.order() || n.find_first_of("+-", 1) != std::string::npos;
        bool dp = den_.degree() > den_.order() || d.find_first_of("+-", 1) != std::string::npos;
        return (np ? "(" + n + ")" : n) + "/" + (dp ? "(" + d + ")" : d);
    }

    // nested occurrences (field of parameters) print their variable as "s"
    friend std::ostream& operator<<(std::ostream& os, const RatFun& f) { return os << f.str("s"); }

  private:
    struct raw {};  // trusted constructor: operands already reduced, den monic
    RatFun(raw, UPoly<F> n, UPoly<F> d) : num_(std::move(n)), den_(std::move(d)) {
        if (num_.is_zero()) den_ = UPoly<F>::one();
    }

    static UPoly<F> gcd_fast(const UPoly<F>& a, const UPoly<F>& b) {
        if (a.is_constant() || b.is_constant()) return UPoly<F>::one();
        int oa = a.order(), ob = b.order();
        if (a.is_monomial()) return UPoly<F>::x(std::min(oa, ob));
        if (b.is_monomial()) return UPoly<F>::x(std::min(oa, ob));
        return gcd(a, b);
    }

    void normalize() {
        if (den_.is_zero()) throw DegenerateError("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = UPoly<F>::one();
            return;
        }
        // common power of x
        int v = std::min(num_.order(), den_.order());
        if (v > 0) {
            num_ = shift_down(num_, v);
            den_ = shift_down(den_, v);
        }
        if (!den_.is_constant() && !num_.is_constant() && !den_.is_monomial()) {
            UPoly<F> g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = divmod(num_, g).first;
                den_ = divmod(den_, g).first;
            }
        } else if (den_.is_monomial() && num_.is_constant() && den_.degree() > 0) {
            // nothing further: constant over monomial is already reduced
        }
        if (!den_.lc().is_one()) {
            F inv = den_.lc().inverse();
            den_ = den_.scaled(inv);
            num_ = num_.scaled(inv);
        }
    }

    static UPoly<F> shift_down(const UPoly<F>& p, int v) {
        std::vector<F> c(p.coeffs().begin() + v, p.coeffs().end());
        return UPoly<F>(std::move(c));
    }

    UPoly<F> num_, den_;
};

}  // namespace schwarz
