#ifndef JACOFRAME_IO_HPP
#define JACOFRAME_IO_HPP

#include "jacoframe/frame.hpp"
#include "jacoframe/jacobi.hpp"
#include "jacoframe/measure.hpp"
#include "jacoframe/point_set.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace jacoframe {

// Points file: CSV, one value per line after a `theta` or `x` header.

ScatteredSet read_points_csv(std::istream& in);
ScatteredSet read_points_file(const std::string& path);
void write_points_csv(std::ostream& out, const ScatteredSet& set);

/// %.17g, the fixed CSV float format.
std::string format_csv_number(double v);

// Rule file: {alpha, beta, degree, nodes, weights, diagnostics{...}}.

struct RuleFile {
    JacobiParams params;
    DiscreteMeasure rule;
};

nlohmann::json rule_to_json(const JacobiParams& params, const DiscreteMeasure& rule);
RuleFile rule_from_json(const nlohmann::json& j);

// Coefficients file: {alpha, beta, S, N, lowpass0, levels:[{n, nodes, masses, tau}]}.

nlohmann::json coefficients_to_json(const FrameCoefficients& coeffs);
FrameCoefficients coefficients_from_json(const nlohmann::json& j);

// Function input file: {kind: "fourier", coeffs: [...]} or
// {kind: "samples", builtin: "abs_x" | "step" | "runge", oracle_degree}.

struct FunctionInput {
    enum class Kind { fourier, samples } kind = Kind::fourier;
    std::vector<double> coeffs;
    std::string builtin;
    int oracle_degree = 0;   ///< Gauss nodes for the samples kind; 0 = 4 * count
};

FunctionInput function_input_from_json(const nlohmann::json& j);

/// abs_x = |x|, step = 1 for x >= 0 and 0 otherwise, runge = 1 / (1 + 25 x^2).
std::function<double(double)> builtin_function(const std::string& name);

/// First `count` orthonormal coefficients of the described function.
/// Fourier inputs are zero-padded or truncated to `count`.
std::vector<double> resolve_coefficients(const RecurrenceTable& table, const FunctionInput& input, int count);

/// Record of one CLI run. Metric names are part of the output schema.
struct RunReport {
    std::string command;
    nlohmann::json inputs = nlohmann::json::object();
    std::map<std::string, double> metrics;
    double wall_time_seconds = 0.0;
    std::optional<std::uint64_t> seed;

    nlohmann::json to_json() const;
};

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Canonical JSON text: sorted keys, shortest round-trip floats, 2-space indent.
std::string dump_canonical(const nlohmann::json& j);

} // namespace jacoframe

#endif // JACOFRAME_IO_HPP
