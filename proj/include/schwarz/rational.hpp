#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "schwarz/errors.hpp"

namespace schwarz {

// Arbitrary-precision rational, always canonical: gcd(|num|, den) = 1,
// den > 0, zero stored as 0/1.  Thin value wrapper around GMP's mpq.
class Rat {
  public:
    Rat() : q_(0) {}
    Rat(long n) : q_(n) {}  // NOLINT: implicit by design, mirrors int literals
    Rat(long num, long den) {
        if (den == 0) throw DegenerateError("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rat(const mpz_class& n) : q_(n) {}
    Rat(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw DegenerateError("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Accepts "p", "p/q", optional leading '-'.
    static Rat from_string(const std::string& s) {
        try {
            mpq_class q(s, 10);
            q.canonicalize();
            return Rat(q);
        } catch (const std::invalid_argument&) {
            throw ParseError("bad rational literal '" + s + "'");
        }
    }

    static Rat zero() { return Rat(); }
    static Rat one() { return Rat(1); }
    static Rat from_rat(const Rat& r) { return r; }

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }

    bool is_zero() const { return q_ == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rat operator-() const { return Rat(mpq_class(-q_)); }
    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw DegenerateError("rational division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

    Rat inverse() const {
        if (is_zero()) throw DegenerateError("inverse of zero");
        return Rat(mpq_class(1) / q_);
    }

    Rat abs() const { return sign() < 0 ? -*this : *this; }

    Rat pow(long e) const {
        if (e == 0) return one();
        if (is_zero()) {
            if (e < 0) throw DegenerateError("zero to a negative power");
            return zero();
        }
        mpz_class n, d;
        unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
        mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), ae);
        mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), ae);
        return e > 0 ? Rat(n, d) : Rat(d, n);
    }

    double to_double() const { return q_.get_d(); }

    std::string str() const { return q_.get_str(); }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.q_; }

    size_t hash() const {
        // cheap but adequate: fold limb data of num and den
        auto fold = [](const mpz_class& z) {
            size_t h = mpz_sgn(z.get_mpz_t()) < 0 ? 0x9e3779b97f4a7c15ull : 0;
            size_t n = mpz_size(z.get_mpz_t());
            for (size_t i = 0; i < n; ++i)
                h = h * 1099511628211ull + mpz_getlimbn(z.get_mpz_t(), i);
            return h;
        };
        return fold(num()) * 31 + fold(den());
    }

  private:
    mpq_class q_;
};

inline Rat rat_gcd(const Rat& a, const Rat& b) {
    // gcd of rationals: gcd(nums)/lcm(dens); used for content extraction.
    mpz_class gn, gd, l;
    mpz_gcd(gn.get_mpz_t(), a.num().get_mpz_t(), b.num().get_mpz_t());
    mpz_lcm(gd.get_mpz_t(), a.den().get_mpz_t(), b.den().get_mpz_t());
    return Rat(gn, gd);
}

inline long ilcm(long a, long b) {
    if (a == 0 || b == 0) return 0;
    mpz_class r;
    mpz_lcm_ui(r.get_mpz_t(), mpz_class(a).get_mpz_t(), static_cast<unsigned long>(b));
    return r.get_si();
}

}  // namespace schwarz
