#include "schwarz/problem.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "schwarz/klein.hpp"
#include "schwarz/numeric.hpp"

namespace schwarz {

namespace {

struct KeyValue {
    std::string key, value;
    int line;
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<KeyValue> parse_key_values(const std::string& text) {
    std::vector<KeyValue> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        // strip comments outside quotes
        bool quoted = false;
        std::string body;
        for (char c : line) {
            if (c == '"') quoted = !quoted;
            if (c == '#' && !quoted) break;
            body += c;
        }
        body = trim(body);
        if (body.empty()) continue;
        size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value'", lineno, 1);
        std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key.empty()) throw ParseError("empty key", lineno, 1);
        out.push_back({key, value, lineno});
    }
    return out;
}

long to_long(const KeyValue& kv) {
    try {
        size_t pos = 0;
        long v = std::stol(kv.value, &pos);
        if (pos != kv.value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ParseError("value of '" + kv.key + "' must be an integer", kv.line, 1);
    }
}

std::vector<int> to_int_list(const KeyValue& kv) {
    std::vector<int> out;
    std::istringstream is(kv.value);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        try {
            out.push_back(std::stoi(tok));
        } catch (...) {
            throw ParseError("bad integer list entry '" + tok + "'", kv.line, 1);
        }
    }
    return out;
}

int indexed_key(const std::string& key, const std::string& prefix) {
    if (key.rfind(prefix, 0) != 0) return -1;
    try {
        return std::stoi(key.substr(prefix.size()));
    } catch (...) {
        return -1;
    }
}

template <class T>
void store_indexed(std::vector<T>& vec, int idx1, T value, const KeyValue& kv) {
    if (idx1 < 1 || idx1 > 64) throw ParseError("index out of range in '" + kv.key + "'", kv.line, 1);
    if (static_cast<int>(vec.size()) < idx1) vec.resize(idx1);
    vec[static_cast<size_t>(idx1) - 1] = std::move(value);
}

}  // namespace

ProblemSpec parse_problem(const std::string& text) {
    ProblemSpec spec;
    std::vector<std::optional<std::pair<std::string, int>>> pullbacks(64);
    std::vector<std::pair<int, std::pair<std::string, int>>> by_degree;  // fD keys
    int max_pullback = 0;

    for (const auto& kv : parse_key_values(text)) {
        if (kv.key == "group") {
            spec.group = kv.value;
        } else if (kv.key == "dimension") {
            spec.dimension = static_cast<int>(to_long(kv));
        } else if (kv.key == "zeta") {
            spec.zeta = static_cast<int>(to_long(kv));
        } else if (kv.key == "order") {
            spec.order = to_long(kv);
        } else if (kv.key == "group_order") {
            spec.order_override = to_long(kv);
        } else if (kv.key == "det_one") {
            spec.det_one = (kv.value == "true" || kv.value == "1");
        } else if (kv.key == "m") {
            spec.m = static_cast<int>(to_long(kv));
        } else if (kv.key == "genus") {
            spec.genus = to_long(kv);
        } else if (kv.key == "param") {
            spec.params.push_back(kv.value);
        } else if (kv.key == "primary") {
            for (int i : to_int_list(kv)) spec.primary.push_back(i - 1);
        } else if (int i = indexed_key(kv.key, "generator."); i > 0) {
            store_indexed(spec.generators, i, {kv.value, kv.line}, kv);
        } else if (int i2 = indexed_key(kv.key, "invariant."); i2 > 0) {
            store_indexed(spec.invariants, i2, {kv.value, kv.line}, kv);
        } else if (int i3 = indexed_key(kv.key, "degree."); i3 > 0) {
            std::vector<int> tmp;
            KeyValue copy = kv;
            store_indexed(spec.degrees, i3, static_cast<int>(to_long(copy)), kv);
        } else if (int i4 = indexed_key(kv.key, "syzygy."); i4 > 0) {
            store_indexed(spec.syzygies, i4, {kv.value, kv.line}, kv);
        } else if (int i5 = indexed_key(kv.key, "pullback."); i5 > 0) {
            if (i5 > 64) throw ParseError("pullback index out of range", kv.line, 1);
            pullbacks[i5 - 1] = {{kv.value, kv.line}};
            max_pullback = std::max(max_pullback, i5);
        } else if (kv.key.size() > 1 && kv.key[0] == 'f' &&
                   kv.key.find_first_not_of("0123456789", 1) == std::string::npos) {
            by_degree.push_back({std::stoi(kv.key.substr(1)), {kv.value, kv.line}});
        } else {
            throw ParseError("unknown key '" + kv.key + "'", kv.line, 1);
        }
    }
    if (spec.group.empty()) spec.group = spec.generators.empty() ? "klein168" : "inline";

    // resolve degree-named pullbacks (f4, f6, ...) against the generator list
    std::vector<int> degs = spec.degrees;
    if (spec.group == "klein168") degs = {4, 6, 14, 21};
    for (auto& [d, v] : by_degree) {
        int found = -1;
        for (size_t i = 0; i < degs.size(); ++i)
            if (degs[i] == d) {
                if (found >= 0)
                    throw ParseError("pullback key f" + std::to_string(d) +
                                         " is ambiguous (two generators of that degree)",
                                     v.second, 1);
                found = static_cast<int>(i);
            }
        if (found < 0)
            throw ParseError("no generator of degree " + std::to_string(d) + " for key f" +
                                 std::to_string(d),
                             v.second, 1);
        pullbacks[found] = {v};
        max_pullback = std::max(max_pullback, found + 1);
    }
    spec.pullbacks.assign(pullbacks.begin(), pullbacks.begin() + std::max(max_pullback, 0));
    return spec;
}

ProblemSpec parse_problem_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open problem file '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return parse_problem(os.str());
}

Problem resolve_problem(const ProblemSpec& spec) {
    if (spec.group == "klein168") {
        const auto& preset = klein_preset();
        Problem p{preset.group, preset.basis, spec};
        if (spec.order_override > 0) p.group.order = spec.order_override;
        return p;
    }
    if (spec.group != "inline")
        throw ValidationError("unknown preset '" + spec.group + "' (available: klein168)");

    if (spec.dimension < 1) throw ValidationError("inline group needs 'dimension'");
    std::vector<Mat<CycNum>> gens;
    for (const auto& [text, line] : spec.generators) {
        auto rows = parse_matrix(text, line);
        if (static_cast<int>(rows.size()) != spec.dimension)
            throw ValidationError("generator matrix must have " +
                                  std::to_string(spec.dimension) + " rows");
        Mat<CycNum> g(spec.dimension, spec.dimension);
        for (int i = 0; i < spec.dimension; ++i) {
            if (static_cast<int>(rows[i].size()) != spec.dimension)
                throw ValidationError("generator matrix row has the wrong length");
            for (int j = 0; j < spec.dimension; ++j)
                g(i, j) = eval_cyclotomic(*rows[i][j], spec.zeta);
        }
        gens.push_back(std::move(g));
    }
    GroupSpec group = GroupSpec::make(spec.dimension, std::move(gens), spec.order, spec.det_one);
    if (spec.order_override > 0) group.order = spec.order_override;

    std::vector<std::string> xvars;
    for (int i = 1; i <= spec.dimension; ++i) xvars.push_back("X" + std::to_string(i));
    std::vector<MPoly<Rat>> invs;
    for (const auto& [text, line] : spec.invariants)
        invs.push_back(eval_polynomial(*parse_expression(text, line), xvars));

    std::vector<std::string> phivars;
    for (size_t i = 1; i <= spec.invariants.size(); ++i)
        phivars.push_back("Phi" + std::to_string(i));
    std::vector<MPoly<Rat>> syz;
    for (const auto& [text, line] : spec.syzygies)
        syz.push_back(eval_polynomial(*parse_expression(text, line), phivars));

    InvariantBasis basis =
        InvariantBasis::make(spec.dimension, std::move(invs), spec.degrees, spec.primary,
                             std::move(syz));
    return Problem{std::move(group), std::move(basis), spec};
}

namespace {

template <class K, class EvalFn>
std::vector<std::optional<K>> parse_pullbacks(const Problem& p, EvalFn eval) {
    const int N = p.basis.ngens();
    if (static_cast<int>(p.spec.pullbacks.size()) > N)
        throw ValidationError("more pullbacks than generators");
    std::vector<std::optional<K>> out(N);
    for (int i = 0; i < static_cast<int>(p.spec.pullbacks.size()); ++i) {
        if (!p.spec.pullbacks[i]) continue;
        const auto& [text, line] = *p.spec.pullbacks[i];
        out[i] = eval(*parse_expression(text, line));
    }
    return out;
}

}  // namespace

ConstructResult cmd_construct(const Problem& p, bool skip_validation) {
    ConstructResult res;
    if (p.spec.params.size() > 1)
        throw ValidationError("at most one transcendental parameter is supported");
    if (p.spec.params.empty()) {
        auto given = parse_pullbacks<Ram<Rat>>(
            p, [](const Expr& e) { return eval_function(e); });
        res.ode = construct_ode<Ram<Rat>>(p.basis, p.group, given, skip_validation);
        for (const auto& pb : p.spec.pullbacks)
            res.ode.pullbacks.push_back(pb ? pb->first : "(derived)");
        res.rendering = render_ode(res.ode);
        return res;
    }
    res.parameterized = true;
    res.param.name = p.spec.params[0];
    // two passes: infer the parameter's ramification and sign across all
    // pullbacks, then evaluate with the shared convention
    std::vector<ExprPtr> parsed(p.spec.pullbacks.size());
    for (size_t i = 0; i < p.spec.pullbacks.size(); ++i) {
        if (!p.spec.pullbacks[i]) continue;
        const auto& [text, line] = *p.spec.pullbacks[i];
        parsed[i] = parse_expression(text, line);
        infer_param_ramification(*parsed[i], res.param);
    }
    using K2 = Ram<RatFun<Rat>>;
    std::vector<std::optional<K2>> given(p.basis.ngens());
    for (size_t i = 0; i < parsed.size(); ++i)
        if (parsed[i]) given[i] = eval_function_param(*parsed[i], res.param);
    res.ode_param = construct_ode<K2>(p.basis, p.group, given, skip_validation);
    for (const auto& pb : p.spec.pullbacks)
        res.ode_param.pullbacks.push_back(pb ? pb->first : "(derived)");
    res.rendering =
        render_ode(res.ode_param, res.param.name, res.param.q, res.param.sign);
    return res;
}

CurveReport cmd_analyze(const OdeResult& ode, const Problem& p, int m, long group_order,
                        long genus, EulerConvention conv, DegreeScale scale, bool force_labels) {
    bool labels = force_labels || (ode.order == 3 && m == 1);
    return analyze_ode(ode, m, group_order, genus, conv, scale, labels);
}

VerifyReport cmd_verify(const Problem& p, const OdeResult& ode, NumericConfig cfg,
                        int corrupt_index, double corrupt_factor) {
    if (!p.spec.params.empty())
        throw ScopeError("numeric verification does not support parameterized runs");
    auto given =
        parse_pullbacks<Ram<Rat>>(p, [](const Expr& e) { return eval_function(e); });
    auto ctx = setup_derivation(given);
    (void)ctx;
    auto pulls = resolve_pullbacks<Ram<Rat>>(p.basis, std::move(given));
    return verify_ode(p.basis, pulls, ode, cfg, corrupt_index, corrupt_factor);
}

std::string preset_text(const std::string& name) {
    if (name != "klein168")
        throw ValidationError("unknown preset '" + name + "' (available: klein168)");
    const auto& [group, basis] = klein_preset();
    std::ostringstream os;
    os << "preset klein168: Klein's simple group of order " << group.order << " in SL_3\n\n";
    os << "group generators over Q(zeta_7):\n";
    for (size_t g = 0; g < group.gens.size(); ++g) {
        os << "  g" << g + 1 << " =\n";
        for (int i = 0; i < 3; ++i) {
            os << "    [";
            for (int j = 0; j < 3; ++j)
                os << (j ? ", " : " ") << group.gens[g](i, j).str("zeta_7");
            os << " ]\n";
        }
    }
    os << "\ninvariant generators (degrees";
    for (int d : basis.degrees) os << " " << d;
    os << "), primary subset {1, 2, 3}:\n";
    std::vector<std::string> xv = {"X1", "X2", "X3"};
    for (int i = 0; i < basis.ngens(); ++i)
        os << "  F" << basis.degrees[i] << " = " << basis.gens[i].str(xv) << "\n";
    std::vector<std::string> pv = {"Phi4", "Phi6", "Phi14", "Phi21"};
    os << "\nsyzygy (" << basis.syzygies[0].nterms() << " terms):\n  T = "
       << basis.syzygies[0].str(pv) << "\n";
    return os.str();
}

nlohmann::json preset_json(const std::string& name) {
    if (name != "klein168")
        throw ValidationError("unknown preset '" + name + "' (available: klein168)");
    const auto& [group, basis] = klein_preset();
    nlohmann::json j;
    j["type"] = "preset";
    j["name"] = name;
    j["group_order"] = group.order;
    j["dimension"] = group.dim;
    j["det_one"] = group.det_one;
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : group.gens) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < group.dim; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int jj = 0; jj < group.dim; ++jj) row.push_back(g(i, jj).str("zeta_7"));
            rows.push_back(row);
        }
        gens.push_back(rows);
    }
    j["generators"] = gens;
    j["degrees"] = basis.degrees;
    nlohmann::json prim = nlohmann::json::array();
    for (int p : basis.primary) prim.push_back(p + 1);
    j["primary"] = prim;
    std::vector<std::string> xv = {"X1", "X2", "X3"};
    nlohmann::json invs = nlohmann::json::array();
    for (const auto& f : basis.gens) invs.push_back(f.str(xv));
    j["invariants"] = invs;
    std::vector<std::string> pv = {"Phi4", "Phi6", "Phi14", "Phi21"};
    j["syzygy"] = basis.syzygies[0].str(pv);
    j["syzygy_terms"] = basis.syzygies[0].nterms();
    return j;
}

}  // namespace schwarz
