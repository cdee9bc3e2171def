#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schwarz/expr.hpp"
#include "schwarz/group.hpp"
#include "schwarz/invariant.hpp"
#include "schwarz/render.hpp"

namespace schwarz {

// Parsed problem file: a preset name or inline group/invariant data, pullback
// expressions, and the metadata feeding the geometric formulas.
struct ProblemSpec {
    std::string group;  // "klein168" or "inline"
    // inline data
    int dimension = 0;
    int zeta = 1;
    long order = 1;
    bool det_one = true;
    std::vector<std::pair<std::string, int>> generators;  // expr, file line
    std::vector<std::pair<std::string, int>> invariants;
    std::vector<int> degrees;
    std::vector<int> primary;  // 0-based
    std::vector<std::pair<std::string, int>> syzygies;
    // pullbacks by generator index (0-based), with file line
    std::vector<std::optional<std::pair<std::string, int>>> pullbacks;
    std::vector<std::string> params;
    int m = 1;
    long genus = -1;
    long order_override = 0;
};

ProblemSpec parse_problem(const std::string& text);
ProblemSpec parse_problem_file(const std::string& path);

// Resolved problem: concrete group and invariant basis.
struct Problem {
    GroupSpec group;
    InvariantBasis basis;
    ProblemSpec spec;
};

Problem resolve_problem(const ProblemSpec& spec);

struct ConstructResult {
    bool parameterized = false;
    OdeResult ode;                          // valid when !parameterized
    OdeResultT<Ram<RatFun<Rat>>> ode_param; // valid when parameterized
    ParamInfo param;
    EquationRendering rendering;
};

ConstructResult cmd_construct(const Problem& p, bool skip_validation = false);

CurveReport cmd_analyze(const OdeResult& ode, const Problem& p, int m, long group_order,
                        long genus, EulerConvention conv, DegreeScale scale, bool force_labels);

VerifyReport cmd_verify(const Problem& p, const OdeResult& ode, NumericConfig cfg,
                        int corrupt_index = -1, double corrupt_factor = 1.0);

std::string preset_text(const std::string& name);
nlohmann::json preset_json(const std::string& name);

}  // namespace schwarz
