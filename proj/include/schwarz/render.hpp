#pragma once

#include <string>

#include "json.hpp"
#include "schwarz/numeric.hpp"
#include "schwarz/singular.hpp"

namespace schwarz {

// Plain-text, LaTeX and JSON forms of a constructed equation.  The JSON form
// of an unparameterized equation is exact (string rationals, ordered term
// lists) and round-trips through ode_from_json.
struct EquationRendering {
    std::string text;
    std::string latex;
    nlohmann::json json;
};

EquationRendering render_ode(const OdeResult& ode);
EquationRendering render_ode(const OdeResultT<Ram<RatFun<Rat>>>& ode, const std::string& param,
                             int q, int sign);

nlohmann::json ode_to_json(const OdeResult& ode);
OdeResult ode_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const CurveReport& rep);
std::string report_to_text(const CurveReport& rep);

nlohmann::json verify_to_json(const VerifyReport& rep);
std::string verify_to_text(const VerifyReport& rep);

}  // namespace schwarz
