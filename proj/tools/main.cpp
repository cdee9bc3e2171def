// Command-line driver: construct / analyze / verify / preset.
//
// Exit codes: 0 success, 2 parse or validation failure, 3 degenerate
// algebraic input, 4 analysis scope error, 5 verification failure.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "schwarz/numeric.hpp"
#include "schwarz/problem.hpp"

using namespace schwarz;

namespace {

void emit_json(const nlohmann::json& j, const std::string& path, bool& human_to_stderr) {
    if (path.empty()) return;
    if (path == "-") {
        std::cout << j.dump(2) << "\n";
        human_to_stderr = true;
        return;
    }
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot write JSON to '" + path + "'");
    f << j.dump(2) << "\n";
}

std::ostream& human(bool to_stderr) { return to_stderr ? std::cerr : std::cout; }

bool looks_like_json(const std::string& path) {
    std::ifstream f(path);
    char c;
    while (f.get(c)) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{';
    }
    return false;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"exact construction of linear ODEs whose Schwarz maps parametrize "
                 "group-invariant curves"};
    app.require_subcommand(1);

    std::string file, json_path;
    bool skip_validation = false;

    auto* construct = app.add_subcommand("construct", "construct the equation from a problem file");
    construct->add_option("file", file, "problem file")->required();
    construct->add_option("--json", json_path, "write the JSON form to this path ('-' = stdout)");
    construct->add_flag("--skip-validation", skip_validation, "waive the syzygy check on pullbacks");
    bool show_latex = false;
    construct->add_flag("--latex", show_latex, "also print the LaTeX form");

    auto* analyze = app.add_subcommand("analyze", "singularities and curve geometry");
    analyze->add_option("file", file, "problem file or equation JSON")->required();
    analyze->add_option("--json", json_path, "write the JSON report to this path ('-' = stdout)");
    int m_override = -1;
    long order_override = -1, genus_override = -2;
    std::string euler_conv = "validated", degree_scale = "group-order";
    bool cusp_flex = false;
    analyze->add_option("--m", m_override, "degree of the quotient map");
    analyze->add_option("--group-order", order_override, "|G| for the geometric formulas");
    analyze->add_option("--genus", genus_override, "genus of the curve (consistency checks)");
    analyze->add_option("--euler-convention", euler_conv, "validated | printed")
        ->check(CLI::IsMember({"validated", "printed"}));
    analyze->add_option("--degree-scale", degree_scale, "group-order | genus")
        ->check(CLI::IsMember({"group-order", "genus"}));
    analyze->add_flag("--cusp-flex", cusp_flex, "force cusp/flex labels (errors when out of scope)");

    auto* verify = app.add_subcommand("verify", "numeric end-to-end verification");
    verify->add_option("file", file, "problem file")->required();
    verify->add_option("--json", json_path, "write the JSON report to this path ('-' = stdout)");
    double tolerance = 1e-6;
    uint64_t seed = 0x5eed;
    verify->add_option("--tolerance", tolerance, "relative residual bound (default 1e-6)");
    verify->add_option("--seed", seed, "seed for the Newton multistart");
    verify->add_flag("--skip-validation", skip_validation, "waive the syzygy check on pullbacks");

    auto* preset = app.add_subcommand("preset", "show a shipped preset");
    std::string preset_name;
    preset->add_option("name", preset_name, "preset name (klein168)")->required();
    preset->add_option("--json", json_path, "write the JSON form to this path ('-' = stdout)");

    CLI11_PARSE(app, argc, argv);
    bool human_err = json_path == "-";

    if (construct->parsed()) {
        Problem p = resolve_problem(parse_problem_file(file));
        ConstructResult res = cmd_construct(p, skip_validation);
        emit_json(res.rendering.json, json_path, human_err);
        human(human_err) << res.rendering.text << "\n";
        if (show_latex) human(human_err) << "\n" << res.rendering.latex << "\n";
        return 0;
    }
    if (analyze->parsed()) {
        OdeResult ode;
        int m = 1;
        long gorder = 0, genus = -1;
        if (looks_like_json(file)) {
            std::ifstream f(file);
            nlohmann::json j;
            f >> j;
            ode = ode_from_json(j);
            gorder = 1;
        } else {
            Problem p = resolve_problem(parse_problem_file(file));
            ConstructResult res = cmd_construct(p, skip_validation);
            if (res.parameterized)
                throw ScopeError("analysis of parameterized equations is not supported");
            ode = res.ode;
            m = p.spec.m;
            gorder = p.group.order;
            genus = p.spec.genus;
        }
        if (m_override >= 0) m = m_override;
        if (order_override >= 0) gorder = order_override;
        if (genus_override >= -1) genus = genus_override;
        EulerConvention conv =
            euler_conv == "printed" ? EulerConvention::Printed : EulerConvention::Validated;
        DegreeScale scale =
            degree_scale == "genus" ? DegreeScale::Genus : DegreeScale::GroupOrder;
        CurveReport rep =
            analyze_ode(ode, m, gorder, genus, conv, scale,
                        cusp_flex || (ode.order == 3 && m == 1));
        if (cusp_flex && (ode.order != 3 || m != 1))
            throw ScopeError("cusp/flex labels require order 3 and m = 1");
        emit_json(report_to_json(rep), json_path, human_err);
        human(human_err) << report_to_text(rep);
        return 0;
    }
    if (verify->parsed()) {
        Problem p = resolve_problem(parse_problem_file(file));
        ConstructResult res = cmd_construct(p, skip_validation);
        if (res.parameterized)
            throw ScopeError("numeric verification does not support parameterized runs");
        NumericConfig cfg;
        cfg.tolerance = tolerance;
        cfg.seed = seed;
        VerifyReport rep = cmd_verify(p, res.ode, cfg);
        emit_json(verify_to_json(rep), json_path, human_err);
        human(human_err) << verify_to_text(rep);
        if (!rep.passed) throw VerifyError("residual exceeds the tolerance");
        return 0;
    }
    if (preset->parsed()) {
        emit_json(preset_json(preset_name), json_path, human_err);
        human(human_err) << preset_text(preset_name);
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const NotExpressibleError& e) {
        std::cerr << "algebraic error: " << e.what() << "\n";
        return 3;
    } catch (const DegenerateError& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return 3;
    } catch (const ScopeError& e) {
        std::cerr << "scope error: " << e.what() << "\n";
        return 4;
    } catch (const VerifyError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
