#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "schwarz/builder.hpp"

namespace schwarz {

// ---- singular points -------------------------------------------------------

// A point of the base projective line: a rational finite location, the point
// at infinity, or an unresolved class of conjugate algebraic points given by
// a (squarefree, non-linear) factor of a denominator.
struct SingularPoint {
    enum class Kind { Finite, Infinity, FactorClass };
    Kind kind = Kind::Finite;
    Rat location;            // for Finite
    UPoly<Rat> factor;       // for FactorClass

    static SingularPoint finite(Rat z0) {
        SingularPoint p;
        p.kind = Kind::Finite;
        p.location = std::move(z0);
        return p;
    }
    static SingularPoint infinity() {
        SingularPoint p;
        p.kind = Kind::Infinity;
        return p;
    }
    static SingularPoint factor_class(UPoly<Rat> f) {
        SingularPoint p;
        p.kind = Kind::FactorClass;
        p.factor = std::move(f);
        return p;
    }

    std::string str() const {
        switch (kind) {
            case Kind::Finite: return "z = " + location.str();
            case Kind::Infinity: return "z = infinity";
            default: return "roots of " + factor.str("z");
        }
    }
};

// ---- exponent data ---------------------------------------------------------

// Normal form of the characteristic exponents at a regular singular point:
// raw exponents { e, e + nu/r, e + (nu+lambda_1)/r, ... } with
// gcd(r, nu, lambda_1, ..., lambda_{n-2}) = 1.
struct ExponentData {
    Rat e;
    int r = 1;
    int nu = 1;
    std::vector<int> lambda;
    std::vector<Rat> raw;  // sorted ascending
};

ExponentData exponent_normal_form(std::vector<Rat> exponents);

// ---- classification --------------------------------------------------------

struct PointClassification {
    bool smooth = false;
    bool apparent = false;
    // plane-curve labels (only when order == 3 and m == 1):
    std::optional<std::pair<int, int>> cusp;  // (nu, nu + lambda_1)
    std::optional<std::pair<int, int>> flex;  // (1, 1 + lambda_1)

    std::string str() const;
};

// m = degree of the quotient map; labels demand m == 1 and n == 3.
PointClassification classify_point(const ExponentData& d, int m, int order,
                                   bool want_plane_labels);

// ---- per-equation analysis --------------------------------------------------

struct PointReport {
    SingularPoint point;
    bool regular = true;
    std::vector<Rat> exponents;  // ascending
    ExponentData normal;
    PointClassification cls;
};

enum class EulerConvention { Validated, Printed };
enum class DegreeScale { GroupOrder, Genus };

struct CurveReport {
    std::vector<PointReport> points;
    Rat euler_characteristic;
    bool euler_integral = true;
    EulerConvention convention = EulerConvention::Validated;
    Rat exponent_sum;      // sum over points of e_p
    Rat degree;            // -(scale/m) * sum e_p
    DegreeScale scale = DegreeScale::GroupOrder;
    long group_order = 0;
    long genus = -1;       // -1 when not supplied
    int m = 1;
    std::vector<std::string> warnings;
};

// pole locations of the coefficients plus the point at infinity if the
// transformed equation is singular there
std::vector<SingularPoint> singular_points(const OdeResult& ode);

// the n characteristic exponents at p (throws ScopeError for irregular
// points, non-rational exponents, or factor classes)
std::vector<Rat> indicial_exponents(const OdeResult& ode, const SingularPoint& p);

// chi = |G| (2 + sum_p (1/r_p - 1)) under the validated convention;
// the printed convention |G| (sum_p (1/r_p - 1) - 2) is kept available.
Rat euler_characteristic(const std::vector<int>& r_values, long group_order,
                         EulerConvention conv = EulerConvention::Validated);

// degree = -(scale / m) * sum_p e_p
Rat curve_degree(const Rat& exponent_sum, int m, const Rat& scale);

CurveReport analyze_ode(const OdeResult& ode, int m, long group_order, long genus,
                        EulerConvention conv = EulerConvention::Validated,
                        DegreeScale scale = DegreeScale::GroupOrder,
                        bool want_plane_labels = true);

// exponents of a transformed equation at t = 0 given the coefficients of the
// equation in the local parameter; exposed for the oracle tests
std::vector<Rat> indicial_roots_at_zero(const std::vector<RatFun<Rat>>& coeffs, int order);

}  // namespace schwarz
