#include "schwarz/render.hpp"

#include <sstream>

namespace schwarz {

namespace {

using nlohmann::json;

std::string dz_power(int k, const std::string& var) {
    if (k == 0) return "y";
    std::string d = "(d/d" + var + ")";
    if (k == 1) return d + " y";
    return d + "^" + std::to_string(k) + " y";
}

std::string latex_poly(const UPoly<Rat>& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        Rat c = p.coeff(i);
        if (c.is_zero()) continue;
        bool neg = c.sign() < 0;
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        Rat a = c.abs();
        bool unit = a.is_one() && i > 0;
        if (!unit) {
            if (a.is_integer()) os << a.num().get_str();
            else os << "\\tfrac{" << a.num().get_str() << "}{" << a.den().get_str() << "}";
        }
        if (i > 0) {
            os << var;
            if (i > 1) os << "^{" << i << "}";
        }
        first = false;
    }
    return os.str();
}

std::string latex_coeff(const Ram<Rat>& c, const std::string& var) {
    if (c.fun().den().is_one()) return latex_poly(c.fun().num(), var);
    return "\\frac{" + latex_poly(c.fun().num(), var) + "}{" + latex_poly(c.fun().den(), var) +
           "}";
}

json upoly_to_json(const UPoly<Rat>& p) {
    json terms = json::array();
    for (int i = p.degree(); i >= 0; --i) {
        const Rat c = p.coeff(i);
        if (c.is_zero()) continue;
        terms.push_back({{"c", c.str()}, {"e", i}});
    }
    return terms;
}

UPoly<Rat> upoly_from_json(const json& terms) {
    std::vector<Rat> coeffs;
    for (const auto& t : terms) {
        int e = t.at("e").get<int>();
        if (e >= static_cast<int>(coeffs.size())) coeffs.resize(e + 1, Rat());
        coeffs[e] = Rat::from_string(t.at("c").get<std::string>());
    }
    return UPoly<Rat>(std::move(coeffs));
}

std::string cplx_str(Cplx z) {
    std::ostringstream os;
    os << z.real();
    if (z.imag() != 0) os << (z.imag() > 0 ? "+" : "") << z.imag() << "i";
    return os.str();
}

}  // namespace

nlohmann::json ode_to_json(const OdeResult& ode) {
    json j;
    j["type"] = "ode";
    j["order"] = ode.order;
    j["ramification"] = ode.r;
    j["variable"] = ode.r == 1 ? "z" : "w";
    json cs = json::array();
    for (const auto& c : ode.coeffs)
        cs.push_back({{"num", upoly_to_json(c.fun().num())}, {"den", upoly_to_json(c.fun().den())}});
    j["coefficients"] = cs;  // index k holds c_k
    j["generator_degrees"] = ode.gen_degrees;
    json prim = json::array();
    for (int p : ode.primary) prim.push_back(p + 1);
    j["primary"] = prim;
    if (!ode.pullbacks.empty()) j["pullbacks"] = ode.pullbacks;
    return j;
}

OdeResult ode_from_json(const nlohmann::json& j) {
    if (j.value("type", "") != "ode") throw ParseError("JSON input is not an equation object");
    OdeResult ode;
    ode.order = j.at("order").get<int>();
    ode.r = j.value("ramification", 1);
    for (const auto& c : j.at("coefficients"))
        ode.coeffs.push_back(Ram<Rat>(
            ode.r, RatFun<Rat>(upoly_from_json(c.at("num")), upoly_from_json(c.at("den")))));
    if (static_cast<int>(ode.coeffs.size()) != ode.order)
        throw ParseError("coefficient count does not match the declared order");
    if (j.contains("generator_degrees"))
        ode.gen_degrees = j.at("generator_degrees").get<std::vector<int>>();
    if (j.contains("primary")) {
        for (int p : j.at("primary").get<std::vector<int>>()) ode.primary.push_back(p - 1);
    }
    if (j.contains("pullbacks"))
        ode.pullbacks = j.at("pullbacks").get<std::vector<std::string>>();
    return ode;
}

EquationRendering render_ode(const OdeResult& ode) {
    EquationRendering r;
    std::string var = ode.r == 1 ? "z" : "w";
    std::ostringstream text;
    if (ode.r != 1) text << "[z = " << var << "^" << ode.r << "]\n";
    text << "0 = " << dz_power(ode.order, var);
    for (int k = ode.order - 1; k >= 0; --k) {
        const auto& c = ode.coeffs[k];
        if (c.is_zero()) continue;
        text << "\n  + (" << c.str("z", "w") << ") * " << dz_power(k, var);
    }
    r.text = text.str();

    std::ostringstream lx;
    lx << "0 = \\left(\\frac{d}{d" << var << "}\\right)^{" << ode.order << "} y";
    for (int k = ode.order - 1; k >= 0; --k) {
        const auto& c = ode.coeffs[k];
        if (c.is_zero()) continue;
        lx << " + " << latex_coeff(c, var);
        if (k > 0) lx << "\\left(\\frac{d}{d" << var << "}\\right)";
        if (k > 1) lx << "^{" << k << "}";
        lx << (k > 0 ? " y" : " y");
    }
    r.latex = lx.str();
    r.json = ode_to_json(ode);
    return r;
}

EquationRendering render_ode(const OdeResultT<Ram<RatFun<Rat>>>& ode, const std::string& param,
                             int q, int sign) {
    EquationRendering r;
    std::string var = ode.r == 1 ? "z" : "w";
    std::string legend = "[s = (" + std::string(sign < 0 ? "-" : "") + param + ")^(1/" +
                         std::to_string(q) + ")]";
    std::ostringstream text;
    text << legend << "\n";
    if (ode.r != 1) text << "[z = " << var << "^" << ode.r << "]\n";
    text << "0 = " << dz_power(ode.order, var);
    for (int k = ode.order - 1; k >= 0; --k) {
        const auto& c = ode.coeffs[k];
        if (c.is_zero()) continue;
        text << "\n  + (" << c.str("z", "w") << ") * " << dz_power(k, var);
    }
    r.text = text.str();
    r.latex = "% parameterized equation; see the text form\n";

    json j;
    j["type"] = "ode";
    j["order"] = ode.order;
    j["ramification"] = ode.r;
    j["variable"] = var;
    j["parameter"] = {{"name", param}, {"root", q}, {"sign", sign}};
    json cs = json::array();
    for (const auto& c : ode.coeffs) cs.push_back(c.str("z", "w"));
    j["coefficients"] = cs;
    r.json = j;
    return r;
}

nlohmann::json report_to_json(const CurveReport& rep) {
    json j;
    j["type"] = "curve-report";
    json pts = json::array();
    for (const auto& p : rep.points) {
        json pj;
        pj["point"] = p.point.str();
        if (p.point.kind == SingularPoint::Kind::FactorClass) {
            pj["unresolved"] = true;
            pts.push_back(pj);
            continue;
        }
        json exps = json::array();
        for (const auto& e : p.exponents) exps.push_back(e.str());
        pj["exponents"] = exps;
        pj["e"] = p.normal.e.str();
        pj["r"] = p.normal.r;
        pj["nu"] = p.normal.nu;
        pj["lambda"] = p.normal.lambda;
        pj["classification"] = p.cls.str();
        pts.push_back(pj);
    }
    j["points"] = pts;
    j["euler_characteristic"] = rep.euler_characteristic.str();
    j["euler_convention"] =
        rep.convention == EulerConvention::Validated ? "validated" : "printed";
    j["exponent_sum"] = rep.exponent_sum.str();
    j["degree"] = rep.degree.str();
    j["degree_scale"] = rep.scale == DegreeScale::GroupOrder ? "group-order" : "genus";
    j["group_order"] = rep.group_order;
    j["m"] = rep.m;
    if (rep.genus >= 0) j["genus"] = rep.genus;
    j["warnings"] = rep.warnings;
    return j;
}

std::string report_to_text(const CurveReport& rep) {
    std::ostringstream os;
    os << "singular points and exponent data:\n";
    for (const auto& p : rep.points) {
        os << "  " << p.point.str();
        if (p.point.kind == SingularPoint::Kind::FactorClass) {
            os << "  [unresolved class]\n";
            continue;
        }
        os << "  exponents {";
        for (size_t i = 0; i < p.exponents.size(); ++i)
            os << (i ? ", " : "") << p.exponents[i].str();
        os << "}  e=" << p.normal.e.str() << " r=" << p.normal.r << " nu=" << p.normal.nu;
        if (!p.normal.lambda.empty()) {
            os << " lambda=(";
            for (size_t i = 0; i < p.normal.lambda.size(); ++i)
                os << (i ? "," : "") << p.normal.lambda[i];
            os << ")";
        }
        os << "  " << p.cls.str() << "\n";
    }
    os << "euler characteristic: " << rep.euler_characteristic.str() << "  ["
       << (rep.convention == EulerConvention::Validated ? "validated" : "printed")
       << " convention]\n";
    os << "sum of e_p: " << rep.exponent_sum.str() << "\n";
    os << "degree: " << rep.degree.str() << "  [scale "
       << (rep.scale == DegreeScale::GroupOrder ? "group-order" : "genus") << ", m = " << rep.m
       << "]\n";
    for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
    return os.str();
}

nlohmann::json verify_to_json(const VerifyReport& rep) {
    json j;
    j["type"] = "verify-report";
    j["base_point"] = cplx_str(rep.base_point);
    json path = json::array();
    for (const auto& z : rep.path) path.push_back(cplx_str(z));
    j["path"] = path;
    j["seed"] = rep.seed;
    j["tolerance"] = rep.tolerance;
    j["residual"] = rep.residual;
    j["per_pullback"] = rep.per_pullback;
    j["newton_residual"] = rep.newton_residual;
    j["jacobian_condition"] = rep.jacobian_condition;
    j["samples"] = rep.samples;
    j["passed"] = rep.passed;
    return j;
}

std::string verify_to_text(const VerifyReport& rep) {
    std::ostringstream os;
    os << "numeric verification along " << rep.path.size() - 1 << "-segment path from "
       << cplx_str(rep.base_point) << " (seed " << rep.seed << ")\n";
    os << "  newton residual:    " << rep.newton_residual << "\n";
    os << "  jacobian condition: " << rep.jacobian_condition << "\n";
    os << "  samples:            " << rep.samples << "\n";
    os << "  max residual:       " << rep.residual << "  (tolerance " << rep.tolerance << ")\n";
    os << "  per-pullback:      ";
    for (double d : rep.per_pullback) os << " " << d;
    os << "\n  " << (rep.passed ? "PASSED" : "FAILED") << "\n";
    return os.str();
}

}  // namespace schwarz
