#pragma once

#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "schwarz/rational.hpp"

namespace schwarz {

namespace detail {

// Dense polynomial helpers over Rat used only for the cyclotomic tables.
using RPoly = std::vector<Rat>;  // coeff[i] multiplies x^i, trailing zeros trimmed

inline void rp_trim(RPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline RPoly rp_mul(const RPoly& a, const RPoly& b) {
    if (a.empty() || b.empty()) return {};
    RPoly r(a.size() + b.size() - 1, Rat());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    rp_trim(r);
    return r;
}

// Quotient of exact division a / b (throws if remainder nonzero).
inline RPoly rp_divexact(RPoly a, const RPoly& b) {
    RPoly q(a.size(), Rat());
    while (a.size() >= b.size() && !a.empty()) {
        Rat c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        rp_trim(a);
    }
    if (!a.empty()) throw Error("inexact polynomial division in cyclotomic setup");
    rp_trim(q);
    return q;
}

inline RPoly rp_rem(RPoly a, const RPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        Rat c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        rp_trim(a);
    }
    return a;
}

}  // namespace detail

inline int euler_phi(int m) {
    int res = m, n = m;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            res -= res / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) res -= res / n;
    return res;
}

// m-th cyclotomic polynomial, computed as (x^m - 1) / prod_{d | m, d < m} Phi_d.
inline detail::RPoly cyclotomic_poly(int m) {
    using namespace detail;
    RPoly num(m + 1, Rat());
    num[0] = Rat(-1);
    num[m] = Rat(1);
    for (int d = 1; d < m; ++d)
        if (m % d == 0) num = rp_divexact(num, cyclotomic_poly(d));
    return num;
}

// Element of the cyclotomic field Q(zeta_m), stored reduced mod Phi_m in the
// power basis 1, zeta, ..., zeta^{phi(m)-1}.  Conductor 1 models plain Q and
// mixes freely with any other conductor; distinct conductors > 1 do not mix.
class CycNum {
  public:
    CycNum() : m_(1), c_(1, Rat()) {}
    explicit CycNum(const Rat& r) : m_(1), c_(1, r) {}
    CycNum(int conductor, std::vector<Rat> coeffs) : m_(conductor), c_(std::move(coeffs)) {
        const Table& t = table(m_);
        reduce(t);
    }

    static CycNum zero() { return CycNum(); }
    static CycNum one() { return CycNum(Rat(1)); }
    static CycNum from_rat(const Rat& r) { return CycNum(r); }

    // zeta_m^k
    static CycNum zeta(int m, long k = 1) {
        const Table& t = table(m);
        k %= m;
        if (k < 0) k += m;
        std::vector<Rat> c(static_cast<size_t>(k) + 1, Rat());
        c.back() = Rat(1);
        CycNum z;
        z.m_ = m;
        z.c_ = std::move(c);
        z.reduce(t);
        return z;
    }

    int conductor() const { return m_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_one() const {
        if (!c_[0].is_one()) return false;
        for (size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }
    Rat rational_part() const { return c_[0]; }

    CycNum operator-() const {
        CycNum r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend CycNum operator+(const CycNum& a, const CycNum& b) {
        auto [x, y] = unify(a, b);
        for (size_t i = 0; i < y.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend CycNum operator-(const CycNum& a, const CycNum& b) { return a + (-b); }
    friend CycNum operator*(const CycNum& a, const CycNum& b) {
        auto [x, y] = unify(a, b);
        if (x.m_ == 1) return CycNum(x.c_[0] * y.c_[0]);
        const Table& t = table(x.m_);
        std::vector<Rat> prod(x.c_.size() + y.c_.size() - 1, Rat());
        for (size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i].is_zero()) continue;
            for (size_t j = 0; j < y.c_.size(); ++j) {
                if (y.c_[j].is_zero()) continue;
                prod[i + j] += x.c_[i] * y.c_[j];
            }
        }
        CycNum r;
        r.m_ = x.m_;
        r.c_ = std::move(prod);
        r.reduce(t);
        return r;
    }

    CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
    CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
    CycNum& operator*=(const CycNum& o) { return *this = *this * o; }

    CycNum inverse() const {
        if (is_zero()) throw DegenerateError("inverse of zero in Q(zeta)");
        if (m_ == 1) return CycNum(c_[0].inverse());
        // extended Euclid: u * this + v * Phi_m = 1 in Q[x]
        using namespace detail;
        RPoly a = c_;
        rp_trim(a);
        RPoly b = table(m_).phi;
        RPoly u0{Rat(1)}, u1{};
        while (!b.empty()) {
            // a = q b + r
            RPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rat());
            RPoly r = a;
            while (r.size() >= b.size() && !r.empty()) {
                Rat c = r.back() / b.back();
                size_t shift = r.size() - b.size();
                q[shift] = c;
                for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
                rp_trim(r);
            }
            rp_trim(q);
            RPoly u2 = u0;
            RPoly qu1 = rp_mul(q, u1);
            if (u2.size() < qu1.size()) u2.resize(qu1.size(), Rat());
            for (size_t i = 0; i < qu1.size(); ++i) u2[i] -= qu1[i];
            rp_trim(u2);
            a = b;
            b = r;
            u0 = u1;
            u1 = u2;
        }
        // a is the gcd (a nonzero constant since Phi_m is irreducible)
        if (a.size() != 1) throw Error("cyclotomic inverse: gcd not constant");
        Rat inv = a[0].inverse();
        for (auto& x : u0) x *= inv;
        CycNum r;
        r.m_ = m_;
        r.c_ = std::move(u0);
        r.c_.resize(c_.size(), Rat());
        return r;
    }

    friend CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inverse(); }

    CycNum pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        CycNum r = one(), base = *this;
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const CycNum& a, const CycNum& b) {
        auto [x, y] = unify(a, b);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

    std::string str(const std::string& zname = "zeta") const {
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            Rat c = c_[i];
            if (!first) {
                os << (c.sign() < 0 ? " - " : " + ");
                c = c.abs();
            } else if (c.sign() < 0 && i > 0) {
                os << "-";
                c = c.abs();
            }
            if (i == 0) {
                os << c;
            } else {
                if (!c.is_one()) os << c << "*";
                os << zname;
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const CycNum& z) { return os << z.str(); }

  private:
    struct Table {
        detail::RPoly phi;                        // Phi_m
        std::vector<std::vector<Rat>> red;        // x^{phi+k} reduced, k = 0..phi-2
        int deg;
    };

    static const Table& table(int m) {
        static std::map<int, Table> cache;
        static std::mutex mu;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
        Table t;
        t.phi = cyclotomic_poly(m);
        t.deg = static_cast<int>(t.phi.size()) - 1;
        // successive reductions of x^{deg}, x^{deg+1}, ...
        std::vector<Rat> cur(t.deg, Rat());
        for (int i = 0; i < t.deg; ++i) cur[i] = -t.phi[i];  // x^deg = -(lower part), monic
        for (int k = 0; k <= t.deg - 2; ++k) {
            t.red.push_back(cur);
            // multiply by x and reduce
            std::vector<Rat> next(t.deg, Rat());
            Rat top = cur[t.deg - 1];
            for (int i = t.deg - 1; i > 0; --i) next[i] = cur[i - 1];
            next[0] = Rat();
            if (!top.is_zero())
                for (int i = 0; i < t.deg; ++i) next[i] += top * t.red[0][i];
            cur = std::move(next);
        }
        return cache.emplace(m, std::move(t)).first->second;
    }

    void reduce(const Table& t) {
        size_t phi = static_cast<size_t>(t.deg);
        if (c_.size() > phi) {
            std::vector<Rat> out(phi, Rat());
            for (size_t i = 0; i < c_.size(); ++i) {
                if (c_[i].is_zero()) continue;
                if (i < phi) {
                    out[i] += c_[i];
                } else {
                    const auto& row = t.red.at(i - phi);
                    for (size_t j = 0; j < phi; ++j) out[j] += c_[i] * row[j];
                }
            }
            c_ = std::move(out);
        } else {
            c_.resize(phi, Rat());
        }
    }

    static std::pair<CycNum, CycNum> unify(const CycNum& a, const CycNum& b) {
        if (a.m_ == b.m_) return {a, b};
        if (a.m_ == 1) {
            CycNum x;
            x.m_ = b.m_;
            x.c_.assign(b.c_.size(), Rat());
            x.c_[0] = a.c_[0];
            return {x, b};
        }
        if (b.m_ == 1) {
            auto [y, x] = unify(b, a);
            return {x, y};
        }
        throw Error("mixing cyclotomic conductors " + std::to_string(a.m_) + " and " +
                    std::to_string(b.m_));
    }

    int m_;
    std::vector<Rat> c_;
};

}  // namespace schwarz
