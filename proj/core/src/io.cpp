#include "jacoframe/io.hpp"

#include "jacoframe/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace jacoframe {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& text, std::size_t line)
{
    double v = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (!text.empty() && *begin == '+')
        ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        throw InputError("points file line " + std::to_string(line) + ": cannot parse '" + text + "' as a number");
    return v;
}

double number_or_nan(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key) || j[key].is_null())
        return std::numeric_limits<double>::quiet_NaN();
    return j[key].get<double>();
}

template <typename T>
T required(const nlohmann::json& j, const char* key, const char* what)
{
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string(what) + " is missing field '" + key + "'");
    try {
        return j[key].get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string(what) + " field '" + key + "' has the wrong type: " + e.what());
    }
}

} // namespace

std::string format_csv_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ScatteredSet read_points_csv(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    std::string header;
    while (header.empty() && std::getline(in, line)) {
        ++line_no;
        header = trim(line);
    }
    if (header != "theta" && header != "x")
        throw InputError("points file line " + std::to_string(line_no) + ": expected header 'theta' or 'x', got '"
                         + header + "'");

    std::vector<double> values;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string cell = trim(line);
        if (cell.empty())
            continue;
        if (cell.find(',') != std::string::npos)
            throw InputError("points file line " + std::to_string(line_no) + ": expected one value per line");
        values.push_back(parse_number(cell, line_no));
    }
    return header == "theta" ? analyze_set(values) : analyze_x_values(values);
}

ScatteredSet read_points_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open points file '" + path + "'");
    return read_points_csv(in);
}

void write_points_csv(std::ostream& out, const ScatteredSet& set)
{
    out << "theta\n";
    for (double t : set.thetas)
        out << format_csv_number(t) << '\n';
}

nlohmann::json rule_to_json(const JacobiParams& params, const DiscreteMeasure& rule)
{
    nlohmann::json j;
    j["alpha"] = params.alpha();
    j["beta"] = params.beta();
    j["degree"] = rule.exactness_degree;
    j["nodes"] = rule.nodes;
    j["weights"] = rule.masses;
    if (rule.diagnostics) {
        const auto& d = *rule.diagnostics;
        j["diagnostics"] = {
            {"condition", d.condition},
            {"positive_count", d.positive_count},
            {"total_variation", d.total_variation},
            {"verify_error", d.verify_error},
            {"cg_residual", d.cg_residual},
            {"cg_iters", d.cg_iters},
            {"wall_time_seconds", d.wall_time_seconds},
        };
    }
    return j;
}

RuleFile rule_from_json(const nlohmann::json& j)
{
    RuleFile f{JacobiParams(required<double>(j, "alpha", "rule file"), required<double>(j, "beta", "rule file")), {}};
    f.rule.exactness_degree = required<int>(j, "degree", "rule file");
    f.rule.nodes = required<std::vector<double>>(j, "nodes", "rule file");
    f.rule.masses = required<std::vector<double>>(j, "weights", "rule file");
    f.rule.validate();
    if (j.contains("diagnostics") && j["diagnostics"].is_object()) {
        const auto& d = j["diagnostics"];
        MeasureDiagnostics diag;
        diag.condition = number_or_nan(d, "condition");
        diag.positive_count = d.value("positive_count", 0);
        diag.total_variation = number_or_nan(d, "total_variation");
        diag.verify_error = number_or_nan(d, "verify_error");
        diag.cg_residual = number_or_nan(d, "cg_residual");
        diag.cg_iters = d.value("cg_iters", 0);
        diag.wall_time_seconds = number_or_nan(d, "wall_time_seconds");
        f.rule.diagnostics = diag;
    }
    return f;
}

nlohmann::json coefficients_to_json(const FrameCoefficients& coeffs)
{
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& lvl : coeffs.levels)
        levels.push_back({{"n", lvl.level},
                          {"nodes", lvl.measure.nodes},
                          {"masses", lvl.measure.masses},
                          {"tau", lvl.coefficients}});
    return {{"alpha", coeffs.params.alpha()},
            {"beta", coeffs.params.beta()},
            {"S", coeffs.mask_order},
            {"N", coeffs.top_level()},
            {"lowpass0", coeffs.lowpass0},
            {"levels", std::move(levels)}};
}

FrameCoefficients coefficients_from_json(const nlohmann::json& j)
{
    FrameCoefficients c{JacobiParams(required<double>(j, "alpha", "coefficients file"),
                                     required<double>(j, "beta", "coefficients file")),
                        required<int>(j, "S", "coefficients file"),
                        required<double>(j, "lowpass0", "coefficients file"),
                        {}};
    const int top = required<int>(j, "N", "coefficients file");
    const auto levels = required<nlohmann::json>(j, "levels", "coefficients file");
    if (!levels.is_array() || static_cast<int>(levels.size()) != top + 1)
        throw InputError("coefficients file: expected " + std::to_string(top + 1) + " levels");
    for (const auto& l : levels) {
        FrameLevel lvl;
        lvl.level = required<int>(l, "n", "coefficients level");
        if (lvl.level < 0 || lvl.level > 30)
            throw InputError("coefficients level index out of range: " + std::to_string(lvl.level));
        lvl.lambda = std::ldexp(1.0, lvl.level);
        lvl.measure.nodes = required<std::vector<double>>(l, "nodes", "coefficients level");
        lvl.measure.masses = required<std::vector<double>>(l, "masses", "coefficients level");
        lvl.measure.exactness_degree = (2 << lvl.level) - 1;
        lvl.measure.validate();
        lvl.coefficients = required<std::vector<double>>(l, "tau", "coefficients level");
        if (lvl.coefficients.size() != lvl.measure.size())
            throw InputError("coefficients level " + std::to_string(lvl.level) + ": tau and nodes differ in length");
        c.levels.push_back(std::move(lvl));
    }
    return c;
}

FunctionInput function_input_from_json(const nlohmann::json& j)
{
    FunctionInput in;
    const auto kind = required<std::string>(j, "kind", "function input");
    if (kind == "fourier") {
        in.kind = FunctionInput::Kind::fourier;
        in.coeffs = required<std::vector<double>>(j, "coeffs", "function input");
    } else if (kind == "samples") {
        in.kind = FunctionInput::Kind::samples;
        in.builtin = required<std::string>(j, "builtin", "function input");
        builtin_function(in.builtin);
        in.oracle_degree = j.value("oracle_degree", 0);
        if (in.oracle_degree < 0)
            throw InputError("function input: oracle_degree must be nonnegative");
    } else {
        throw InputError("function input: unknown kind '" + kind + "' (expected fourier or samples)");
    }
    return in;
}

std::function<double(double)> builtin_function(const std::string& name)
{
    if (name == "abs_x")
        return [](double x) { return std::abs(x); };
    if (name == "step")
        return [](double x) { return x >= 0.0 ? 1.0 : 0.0; };
    if (name == "runge")
        return [](double x) { return 1.0 / (1.0 + 25.0 * x * x); };
    throw InputError("unknown builtin function '" + name + "' (expected abs_x, step or runge)");
}

std::vector<double> resolve_coefficients(const RecurrenceTable& table, const FunctionInput& input, int count)
{
    if (input.kind == FunctionInput::Kind::fourier) {
        std::vector<double> c(static_cast<std::size_t>(count), 0.0);
        std::copy_n(input.coeffs.begin(), std::min(input.coeffs.size(), c.size()), c.begin());
        return c;
    }
    return fourier_coeffs(table, builtin_function(input.builtin), count, input.oracle_degree);
}

nlohmann::json RunReport::to_json() const
{
    nlohmann::json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["metrics"] = nlohmann::json::object();
    for (const auto& [k, v] : metrics)
        j["metrics"][k] = v;
    j["wall_time_seconds"] = wall_time_seconds;
    if (seed)
        j["seed"] = *seed;
    return j;
}

nlohmann::json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << text;
}

std::string dump_canonical(const nlohmann::json& j)
{
    return j.dump(2) + "\n";
}

} // namespace jacoframe
