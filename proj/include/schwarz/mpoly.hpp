#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "schwarz/rational.hpp"

namespace schwarz {

// Exponent vector with inline storage.  Polynomials of up to kMaxVars
// variables; degrees fit in 16 bits.
struct Mono {
    static constexpr int kMaxVars = 12;
    std::array<uint16_t, kMaxVars> e{};

    int total(int nv) const {
        int s = 0;
        for (int i = 0; i < nv; ++i) s += e[i];
        return s;
    }
    bool operator==(const Mono& o) const { return e == o.e; }

    friend Mono operator*(const Mono& a, const Mono& b) {
        Mono r;
        for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<uint16_t>(a.e[i] + b.e[i]);
        return r;
    }
};

// degree-lexicographic: higher total degree first, then lex with X1 > X2 > ...
inline int mono_cmp(const Mono& a, const Mono& b, int nv) {
    int da = a.total(nv), db = b.total(nv);
    if (da != db) return da < db ? -1 : 1;
    for (int i = 0; i < nv; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
    return 0;
}

struct MonoHash {
    size_t operator()(const Mono& m) const {
        size_t h = 1469598103934665603ull;
        for (int i = 0; i < Mono::kMaxVars; ++i) h = (h ^ m.e[i]) * 1099511628211ull;
        return h;
    }
};

// Sparse multivariate polynomial over a commutative coefficient ring C.
// Terms are kept sorted deglex-descending with no zero coefficients, so the
// representation is canonical and equality is term-wise.
template <class C>
class MPoly {
  public:
    using Term = std::pair<Mono, C>;

    MPoly() : nv_(0) {}
    explicit MPoly(int nvars) : nv_(nvars) { check_nv(nvars); }

    static MPoly constant(int nvars, C c) {
        MPoly p(nvars);
        if (!c.is_zero()) p.t_.push_back({Mono{}, std::move(c)});
        return p;
    }
    static MPoly from_rat(int nvars, const Rat& q) { return constant(nvars, C::from_rat(q)); }
    static MPoly variable(int nvars, int i) {
        MPoly p(nvars);
        Mono m;
        m.e[i] = 1;
        p.t_.push_back({m, C::one()});
        return p;
    }
    static MPoly monomial(int nvars, const Mono& m, C c) {
        MPoly p(nvars);
        if (!c.is_zero()) p.t_.push_back({m, std::move(c)});
        return p;
    }

    int nvars() const { return nv_; }
    bool is_zero() const { return t_.empty(); }
    size_t nterms() const { return t_.size(); }
    const std::vector<Term>& terms() const { return t_; }
    const Term& leading() const { return t_.front(); }

    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first == Mono{}); }
    C constant_value() const {
        if (t_.empty()) return C::zero();
        return t_[0].second;
    }

    int degree() const {  // total degree, -1 for zero
        int d = -1;
        for (const auto& [m, c] : t_) d = std::max(d, m.total(nv_));
        return d;
    }
    bool is_homogeneous() const {
        if (t_.empty()) return true;
        int d = t_[0].first.total(nv_);
        for (const auto& [m, c] : t_)
            if (m.total(nv_) != d) return false;
        return true;
    }
    int degree_in(int var) const {
        int d = 0;
        for (const auto& [m, c] : t_) d = std::max<int>(d, m.e[var]);
        return d;
    }

    C coeff(const Mono& m) const {
        for (const auto& [mm, c] : t_)
            if (mm == m) return c;
        return C::zero();
    }

    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [m, c] : r.t_) c = -c;
        return r;
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        a.check_same(b);
        MPoly r(a.nv_);
        r.t_.reserve(a.t_.size() + b.t_.size());
        size_t i = 0, j = 0;
        while (i < a.t_.size() && j < b.t_.size()) {
            int c = mono_cmp(a.t_[i].first, b.t_[j].first, a.nv_);
            if (c > 0) {
                r.t_.push_back(a.t_[i++]);
            } else if (c < 0) {
                r.t_.push_back(b.t_[j++]);
            } else {
                C s = a.t_[i].second + b.t_[j].second;
                if (!s.is_zero()) r.t_.push_back({a.t_[i].first, std::move(s)});
                ++i, ++j;
            }
        }
        for (; i < a.t_.size(); ++i) r.t_.push_back(a.t_[i]);
        for (; j < b.t_.size(); ++j) r.t_.push_back(b.t_[j]);
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        a.check_same(b);
        MPoly r(a.nv_);
        if (a.is_zero() || b.is_zero()) return r;
        std::unordered_map<Mono, C, MonoHash> acc;
        acc.reserve(a.t_.size() * 2 + b.t_.size());
        const MPoly& outer = a.t_.size() <= b.t_.size() ? a : b;
        const MPoly& inner = a.t_.size() <= b.t_.size() ? b : a;
        for (const auto& [ma, ca] : outer.t_) {
            for (const auto& [mb, cb] : inner.t_) {
                Mono m = ma * mb;
                auto it = acc.find(m);
                if (it == acc.end())
                    acc.emplace(m, ca * cb);
                else
                    it->second += ca * cb;
            }
        }
        return from_map(a.nv_, std::move(acc));
    }
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly scaled(const C& s) const {
        MPoly r(nv_);
        if (s.is_zero()) return r;
        r.t_ = t_;
        for (auto& [m, c] : r.t_) c = c * s;
        r.drop_zeros();
        return r;
    }
    MPoly scaled_rat(const Rat& q) const { return scaled(C::from_rat(q)); }

    MPoly mul_mono(const Mono& mm, const C& cc) const {
        MPoly r(nv_);
        if (cc.is_zero()) return r;
        r.t_ = t_;
        for (auto& [m, c] : r.t_) {
            m = m * mm;
            c = c * cc;
        }
        r.drop_zeros();
        return r;
    }

    // formal partial derivative with respect to variable i
    MPoly partial(int i) const {
        MPoly r(nv_);
        r.t_.reserve(t_.size());
        for (const auto& [m, c] : t_) {
            if (m.e[i] == 0) continue;
            Mono mm = m;
            mm.e[i] -= 1;
            C cc = c * C::from_rat(Rat(static_cast<long>(m.e[i])));
            if (!cc.is_zero()) r.t_.push_back({mm, std::move(cc)});
        }
        r.sort_terms();
        return r;
    }

    MPoly pow(int k) const {
        if (k < 0) throw Error("negative power of a polynomial");
        MPoly r = constant(nv_, C::one());
        MPoly base = *this;
        while (k) {
            if (k & 1) r = r * base;
            if (k >>= 1) base = base * base;
        }
        return r;
    }

    // apply f to each coefficient (e.g. a derivation on the coefficient field)
    template <class Fn>
    MPoly map_coeffs(Fn f) const {
        MPoly r(nv_);
        r.t_.reserve(t_.size());
        for (const auto& [m, c] : t_) {
            C cc = f(c);
            if (!cc.is_zero()) r.t_.push_back({m, std::move(cc)});
        }
        return r;
    }

    // convert coefficients into another ring
    template <class C2, class Fn>
    MPoly<C2> lift(Fn f) const {
        MPoly<C2> r(nv_);
        std::vector<typename MPoly<C2>::Term> ts;
        ts.reserve(t_.size());
        for (const auto& [m, c] : t_) {
            C2 cc = f(c);
            if (!cc.is_zero()) ts.push_back({m, std::move(cc)});
        }
        r.set_terms(std::move(ts));
        return r;
    }

    // substitute values[i] for variable i, computing in ring T
    template <class T, class Fn>
    T eval(const std::vector<T>& values, Fn coeff_to_t) const {
        std::vector<std::vector<T>> pows(nv_);  // pows[i][k] = values[i]^{k+1}
        T acc = coeff_to_t(C::zero());
        bool any = false;
        for (const auto& [m, c] : t_) {
            T term = coeff_to_t(c);
            for (int i = 0; i < nv_; ++i) {
                int e = m.e[i];
                if (e == 0) continue;
                auto& p = pows[i];
                if (p.empty()) p.push_back(values[i]);
                while (static_cast<int>(p.size()) < e) p.push_back(p.back() * values[i]);
                term = term * p[e - 1];
            }
            acc = any ? acc + term : std::move(term);
            any = true;
        }
        return acc;
    }

    std::map<int, MPoly> homogeneous_components() const {
        std::map<int, MPoly> out;
        for (const auto& t : t_) {
            auto& p = out.try_emplace(t.first.total(nv_), MPoly(nv_)).first->second;
            p.t_.push_back(t);
        }
        return out;  // each component inherits sorted order
    }

    // componentwise minimum of exponent vectors (the monomial content)
    Mono content_mono() const {
        Mono m;
        if (t_.empty()) return m;
        for (int i = 0; i < nv_; ++i) m.e[i] = UINT16_MAX;
        for (const auto& [mm, c] : t_)
            for (int i = 0; i < nv_; ++i) m.e[i] = std::min(m.e[i], mm.e[i]);
        return m;
    }
    MPoly div_mono(const Mono& d) const {
        MPoly r = *this;
        for (auto& [m, c] : r.t_)
            for (int i = 0; i < nv_; ++i) {
                if (m.e[i] < d.e[i]) throw Error("monomial division not exact");
                m.e[i] = static_cast<uint16_t>(m.e[i] - d.e[i]);
            }
        return r;
    }

    friend bool operator==(const MPoly& a, const MPoly& b) {
        return a.nv_ == b.nv_ && a.t_ == b.t_;
    }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    std::string str(const std::vector<std::string>& names) const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : t_) {
            std::ostringstream cs;
            cs << c;
            std::string cv = cs.str();
            bool neg = !cv.empty() && cv[0] == '-';
            if (neg) cv = cv.substr(1);
            os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
            bool is_const_mono = m == Mono{};
            bool composite = cv.find_first_of("+- ") != std::string::npos;
            bool unit = (cv == "1");
            if (!unit || is_const_mono) os << (composite ? "(" + cv + ")" : cv);
            bool printed = !unit || is_const_mono;
            for (int i = 0; i < nv_; ++i) {
                if (m.e[i] == 0) continue;
                if (printed) os << "*";
                os << names[i];
                if (m.e[i] > 1) os << "^" << m.e[i];
                printed = true;
            }
            first = false;
        }
        return os.str();
    }

    // exact division (throws when not divisible); C must be a field
    friend MPoly exact_div(MPoly a, const MPoly& b) {
        a.check_same(b);
        if (b.is_zero()) throw DegenerateError("polynomial division by zero");
        MPoly q(a.nv_);
        const auto& [lb, cb] = b.leading();
        while (!a.is_zero()) {
            const auto& [la, ca] = a.leading();
            Mono m;
            for (int i = 0; i < a.nv_; ++i) {
                if (la.e[i] < lb.e[i]) throw Error("polynomial division not exact");
                m.e[i] = static_cast<uint16_t>(la.e[i] - lb.e[i]);
            }
            C c = ca * cb.inverse();
            MPoly t = MPoly::monomial(a.nv_, m, c);
            q += t;
            a -= t * b;
        }
        return q;
    }

    // internal: used by lift
    void set_terms(std::vector<Term> ts) {
        t_ = std::move(ts);
        sort_terms();
    }

  private:
    static void check_nv(int nv) {
        if (nv < 0 || nv > Mono::kMaxVars)
            throw ValidationError("unsupported variable count " + std::to_string(nv));
    }
    void check_same(const MPoly& o) const {
        if (nv_ != o.nv_) throw Error("mixing polynomials with different variable counts");
    }
    void sort_terms() {
        std::sort(t_.begin(), t_.end(), [this](const Term& a, const Term& b) {
            return mono_cmp(a.first, b.first, nv_) > 0;
        });
    }
    void drop_zeros() {
        t_.erase(std::remove_if(t_.begin(), t_.end(),
                                [](const Term& t) { return t.second.is_zero(); }),
                 t_.end());
    }
    static MPoly from_map(int nv, std::unordered_map<Mono, C, MonoHash> acc) {
        MPoly r(nv);
        r.t_.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (!c.is_zero()) r.t_.push_back({m, std::move(c)});
        r.sort_terms();
        return r;
    }

    int nv_;
    std::vector<Term> t_;
};

template <class C>
MPoly<C> one_like(const MPoly<C>& p) {
    return MPoly<C>::constant(p.nvars(), C::one());
}

// gradient as a vector of partials
template <class C>
std::vector<MPoly<C>> gradient(const MPoly<C>& p) {
    std::vector<MPoly<C>> g;
    g.reserve(p.nvars());
    for (int i = 0; i < p.nvars(); ++i) g.push_back(p.partial(i));
    return g;
}

}  // namespace schwarz
