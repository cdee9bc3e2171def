#include "schwarz/singular.hpp"

#include <algorithm>
#include <map>

namespace schwarz {

namespace {

using RF = RatFun<Rat>;
using P = UPoly<Rat>;

// coefficients as plain rational functions of z; analysis handles the
// unramified presentation only
std::vector<RF> plain_coeffs(const OdeResult& ode) {
    if (ode.r != 1)
        throw ScopeError("analysis supports equations presented in z (ramification reduced to 1)");
    std::vector<RF> c;
    for (const auto& k : ode.coeffs) c.push_back(k.fun());
    return c;
}

// all rational roots of p (with multiplicity collapsed), plus the content of
// what remains (monic, degree >= 1) for reporting
std::pair<std::vector<Rat>, std::vector<P>> rational_roots(P p) {
    std::vector<Rat> roots;
    std::vector<P> leftovers;
    if (p.degree() <= 0) return {roots, leftovers};
    // factor out powers of z
    int v = p.order();
    if (v > 0) {
        roots.push_back(Rat(0));
        p = P(std::vector<Rat>(p.coeffs().begin() + v, p.coeffs().end()));
    }
    // integerize: multiply by lcm of denominators
    mpz_class denlcm = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(denlcm.get_mpz_t(), denlcm.get_mpz_t(), c.den().get_mpz_t());
    std::vector<mpz_class> ic;
    for (const auto& c : p.coeffs()) ic.push_back(c.num() * (denlcm / c.den()));

    // candidates num/den with num | ic[0], den | ic.back()
    auto divisors = [](const mpz_class& n) {
        std::vector<mpz_class> d;
        mpz_class a = abs(n);
        for (mpz_class i = 1; i * i <= a; ++i) {
            if (a % i == 0) {
                d.push_back(i);
                d.push_back(a / i);
            }
            if (i > 100000) break;  // huge constant terms: give up on the tail
        }
        return d;
    };
    bool changed = true;
    while (p.degree() >= 1 && changed) {
        changed = false;
        ic.clear();
        denlcm = 1;
        for (const auto& c : p.coeffs())
            mpz_lcm(denlcm.get_mpz_t(), denlcm.get_mpz_t(), c.den().get_mpz_t());
        for (const auto& c : p.coeffs()) ic.push_back(c.num() * (denlcm / c.den()));
        for (const auto& pn : divisors(ic.front())) {
            for (const auto& pd : divisors(ic.back())) {
                for (int sign = 1; sign >= -1; sign -= 2) {
                    Rat cand(sign * pn, pd);
                    if (!p.eval(cand).is_zero()) continue;
                    // deflate all copies of this root
                    P lin({-cand, Rat(1)});
                    while (true) {
                        auto [q, r] = divmod(p, lin);
                        if (!r.is_zero()) break;
                        p = q;
                    }
                    if (std::find(roots.begin(), roots.end(), cand) == roots.end())
                        roots.push_back(cand);
                    changed = true;
                    if (p.degree() < 1) break;
                }
                if (p.degree() < 1) break;
            }
            if (p.degree() < 1) break;
        }
    }
    if (p.degree() >= 1) leftovers.push_back(p.monic());
    return {roots, leftovers};
}

// delta_z^k expressed in delta_t with z = 1/t: returns a[k][j] with
// delta_z^k = sum_j a[k][j](t) delta_t^j
std::vector<std::vector<RF>> inversion_table(int n) {
    std::vector<std::vector<RF>> a(n + 1);
    a[0] = {RF::one()};
    P t = P::x();
    for (int k = 0; k < n; ++k) {
        a[k + 1].assign(k + 2, RF());
        // delta_z = -t^2 delta_t applied to sum_j a_kj delta_t^j
        for (int j = 0; j <= k; ++j) {
            RF m2 = RF(P({Rat(0), Rat(0), Rat(-1)}));  // -t^2
            a[k + 1][j] += m2 * a[k][j].derivative();
            a[k + 1][j + 1] += m2 * a[k][j];
        }
    }
    return a;
}

// normalized coefficients of the equation rewritten in t = 1/z
std::vector<RF> coefficients_at_infinity(const std::vector<RF>& c, int n) {
    auto table = inversion_table(n);
    RF invt = RF(P::one(), P::x());  // 1/t
    std::vector<RF> subst(n + 1);
    for (int k = 0; k <= n; ++k) {
        RF ck = (k == n) ? RF::one() : c[k];
        subst[k] = ck.eval<RF>(invt, [](const Rat& q) { return RF(P(q)); });
    }
    std::vector<RF> b(n + 1);
    for (int j = 0; j <= n; ++j) {
        RF acc;
        for (int k = j; k <= n; ++k) {
            if (static_cast<int>(table[k].size()) <= j) continue;
            acc += subst[k] * table[k][j];
        }
        b[j] = acc;
    }
    std::vector<RF> out(n);
    for (int j = 0; j < n; ++j) out[j] = b[j] / b[n];
    return out;
}

bool analytic_at_zero(const RF& f) {
    if (f.is_zero()) return true;
    return f.num().order() >= f.den().order();
}

// gamma_k = lim_{t->0} t^{n-k} c_k(t); throws for an irregular point
Rat gamma_coefficient(const RF& ck, int n, int k) {
    if (ck.is_zero()) return Rat(0);
    int pole = ck.den().order() - ck.num().order();
    if (pole > n - k)
        throw ScopeError("irregular singular point: pole order of c_" + std::to_string(k) +
                         " exceeds " + std::to_string(n - k));
    if (pole < n - k) return Rat(0);
    return ck.num().coeff(ck.num().order()) / ck.den().coeff(ck.den().order());
}

std::vector<Rat> falling_factorial(int k) {  // e(e-1)...(e-k+1) as coefficients
    P r = P::one();
    for (int i = 0; i < k; ++i) r = r * P({Rat(-i), Rat(1)});
    return r.coeffs();
}

}  // namespace

std::vector<Rat> indicial_roots_at_zero(const std::vector<RF>& coeffs, int order) {
    const int n = order;
    P indicial;
    for (int k = 0; k <= n; ++k) {
        Rat g = (k == n) ? Rat(1) : gamma_coefficient(coeffs[k], n, k);
        if (g.is_zero()) continue;
        indicial = indicial + P(falling_factorial(k)).scaled(g);
    }
    if (indicial.degree() != n)
        throw ScopeError("indicial polynomial degenerates (not a regular singular point)");
    auto [roots, leftover] = rational_roots(indicial);
    // gather with multiplicity by deflation count
    std::vector<Rat> out;
    P p = indicial;
    for (const Rat& r : roots) {
        P lin({-r, Rat(1)});
        while (true) {
            auto [q, rem] = divmod(p, lin);
            if (!rem.is_zero()) break;
            p = q;
            out.push_back(r);
        }
    }
    if (static_cast<int>(out.size()) != n)
        throw ScopeError("non-rational exponents unsupported (indicial polynomial has " +
                         std::to_string(out.size()) + " rational roots out of " +
                         std::to_string(n) + ")");
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SingularPoint> singular_points(const OdeResult& ode) {
    std::vector<RF> c = plain_coeffs(ode);
    std::vector<SingularPoint> pts;
    std::vector<Rat> seen;
    std::vector<P> classes;
    for (const auto& f : c) {
        if (f.is_zero()) continue;
        auto [roots, leftovers] = rational_roots(f.den());
        for (const auto& r : roots)
            if (std::find(seen.begin(), seen.end(), r) == seen.end()) seen.push_back(r);
        for (auto& q : leftovers)
            if (std::find(classes.begin(), classes.end(), q) == classes.end())
                classes.push_back(q);
    }
    std::sort(seen.begin(), seen.end());
    for (const auto& r : seen) pts.push_back(SingularPoint::finite(r));
    for (auto& q : classes) pts.push_back(SingularPoint::factor_class(std::move(q)));

    const int n = ode.order;
    std::vector<RF> binf = coefficients_at_infinity(c, n);
    bool ordinary = true;
    for (const auto& f : binf) ordinary = ordinary && analytic_at_zero(f);
    if (!ordinary) pts.push_back(SingularPoint::infinity());
    return pts;
}

std::vector<Rat> indicial_exponents(const OdeResult& ode, const SingularPoint& p) {
    std::vector<RF> c = plain_coeffs(ode);
    const int n = ode.order;
    std::vector<RF> local(n);
    switch (p.kind) {
        case SingularPoint::Kind::Finite:
            for (int k = 0; k < n; ++k) {
                const RF& f = c[k];
                if (f.is_zero()) continue;
                local[k] = RF(f.num().shift(p.location), f.den().shift(p.location));
            }
            break;
        case SingularPoint::Kind::Infinity:
            local = coefficients_at_infinity(c, n);
            break;
        default:
            throw ScopeError("exponents at algebraic point classes are not supported");
    }
    return indicial_roots_at_zero(local, n);
}

ExponentData exponent_normal_form(std::vector<Rat> exponents) {
    if (exponents.empty()) throw ValidationError("no exponents given");
    std::sort(exponents.begin(), exponents.end());
    for (size_t i = 1; i < exponents.size(); ++i)
        if (exponents[i] == exponents[i - 1])
            throw ScopeError("repeated exponents: logarithmic case unsupported");
    ExponentData d;
    d.raw = exponents;
    d.e = exponents.front();
    if (exponents.size() == 1) return d;
    // least common denominator of the differences
    mpz_class lcd = 1;
    for (size_t i = 1; i < exponents.size(); ++i) {
        Rat diff = exponents[i] - d.e;
        mpz_lcm(lcd.get_mpz_t(), lcd.get_mpz_t(), diff.den().get_mpz_t());
    }
    d.r = static_cast<int>(lcd.get_si());
    std::vector<long> nums;
    for (size_t i = 1; i < exponents.size(); ++i) {
        Rat v = (exponents[i] - d.e) * Rat(mpz_class(lcd));
        nums.push_back(v.num().get_si());
    }
    d.nu = static_cast<int>(nums[0]);
    for (size_t i = 1; i < nums.size(); ++i)
        d.lambda.push_back(static_cast<int>(nums[i]) - d.nu);
    return d;
}

PointClassification classify_point(const ExponentData& d, int m, int order,
                                   bool want_plane_labels) {
    PointClassification c;
    c.apparent = (d.r == 1);
    bool all_one = (d.nu == 1);
    for (int l : d.lambda) all_one = all_one && (l == 1);
    c.smooth = all_one;
    if (want_plane_labels) {
        if (m != 1 || order != 3)
            throw ScopeError("cusp/flex labels require deg(quotient map) = 1 and order 3");
        int l1 = d.lambda.empty() ? 1 : d.lambda[0];
        if (d.nu >= 2)
            c.cusp = {d.nu, d.nu + l1};
        else if (l1 >= 2)
            c.flex = {1, 1 + l1};
    }
    return c;
}

std::string PointClassification::str() const {
    std::string s;
    auto add = [&](const std::string& t) {
        if (!s.empty()) s += ", ";
        s += t;
    };
    if (cusp) add("(" + std::to_string(cusp->first) + "," + std::to_string(cusp->second) + ")-cusp");
    if (flex) add("(" + std::to_string(flex->first) + "," + std::to_string(flex->second) + ")-flex");
    if (smooth) add("smooth");
    if (apparent) add("apparent singularity");
    if (s.empty()) s = "singular";
    return s;
}

Rat euler_characteristic(const std::vector<int>& r_values, long group_order,
                         EulerConvention conv) {
    Rat sum;
    for (int r : r_values) {
        if (r <= 0) throw ValidationError("nonpositive local index r_p");
        sum += Rat(1, r) - Rat(1);
    }
    Rat base = conv == EulerConvention::Validated ? sum + Rat(2) : sum - Rat(2);
    return Rat(group_order) * base;
}

Rat curve_degree(const Rat& exponent_sum, int m, const Rat& scale) {
    if (m == 0) throw ValidationError("quotient map degree m must be nonzero");
    return -(scale / Rat(m)) * exponent_sum;
}

CurveReport analyze_ode(const OdeResult& ode, int m, long group_order, long genus,
                        EulerConvention conv, DegreeScale scale, bool want_plane_labels) {
    CurveReport rep;
    rep.convention = conv;
    rep.scale = scale;
    rep.group_order = group_order;
    rep.genus = genus;
    rep.m = m;
    bool labels = want_plane_labels && ode.order == 3 && m == 1;
    std::vector<int> rs;
    for (auto& p : singular_points(ode)) {
        PointReport pr;
        pr.point = p;
        if (p.kind == SingularPoint::Kind::FactorClass) {
            pr.regular = false;
            rep.warnings.push_back("unresolved algebraic point class (" + p.str() +
                                   "): excluded from the geometric formulas");
            rep.points.push_back(std::move(pr));
            continue;
        }
        pr.exponents = indicial_exponents(ode, p);
        pr.normal = exponent_normal_form(pr.exponents);
        pr.cls = classify_point(pr.normal, m, ode.order, labels);
        rs.push_back(pr.normal.r);
        rep.exponent_sum += pr.normal.e;
        rep.points.push_back(std::move(pr));
    }
    rep.euler_characteristic = euler_characteristic(rs, group_order, conv);
    rep.euler_integral = rep.euler_characteristic.is_integer();
    if (!rep.euler_integral)
        rep.warnings.push_back("inconsistent singularity data: Euler characteristic " +
                               rep.euler_characteristic.str() + " is not an integer");
    if (genus >= 0) {
        Rat expected = Rat(2) - Rat(2 * genus);
        if (rep.euler_characteristic != expected)
            rep.warnings.push_back("Euler characteristic does not match 2 - 2g for g = " +
                                   std::to_string(genus));
    }
    Rat s = scale == DegreeScale::GroupOrder ? Rat(group_order) : Rat(genus);
    if (scale == DegreeScale::Genus && genus < 0)
        throw ValidationError("degree scale 'genus' requested but no genus supplied");
    rep.degree = curve_degree(rep.exponent_sum, m, s);

    // Fuchs relation: sum of all exponents over all regular singular points
    // equals (|S| - 2) n (n-1) / 2; a mismatch flags inconsistent analysis
    Rat total;
    long npts = 0;
    for (const auto& pr : rep.points) {
        if (pr.point.kind == SingularPoint::Kind::FactorClass) continue;
        for (const auto& e : pr.exponents) total += e;
        ++npts;
    }
    Rat fuchs = Rat(npts - 2) * Rat(static_cast<long>(ode.order) * (ode.order - 1), 2);
    if (total != fuchs)
        rep.warnings.push_back("Fuchs relation violated: exponent sum " + total.str() +
                               " differs from " + fuchs.str());
    return rep;
}

}  // namespace schwarz
