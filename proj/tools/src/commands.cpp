#include "jacoframe_cli/commands.hpp"
#include "jacoframe_cli/table1.hpp"

#include <jacoframe/errors.hpp>
#include <jacoframe/frame.hpp>
#include <jacoframe/io.hpp>
#include <jacoframe/kernel.hpp>
#include <jacoframe/mask.hpp>
#include <jacoframe/point_set.hpp>
#include <jacoframe/scattered_rule.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace jacoframe::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Globals {
    bool error_json = false;
    bool no_timing = false;
};

struct Params {
    double alpha = 0.0;
    double beta = 0.0;
};

void add_params(CLI::App* cmd, Params& p)
{
    cmd->add_option("--alpha", p.alpha, "Jacobi exponent at x = 1")->capture_default_str();
    cmd->add_option("--beta", p.beta, "Jacobi exponent at x = -1")->capture_default_str();
}

struct BuildOpts {
    Params params;
    std::string points;
    int degree = 0;
    double cg_tol = 1e-14;
    int max_iter = 0;
    std::string out;
};

struct VerifyOpts {
    std::string rule;
    int degree = -1;
    double tol = 1e-8;
};

struct PointsOpts {
    int count = 1024;
    std::uint64_t seed = 1;
    std::string out;
};

struct TableOpts {
    Params params;
    int trials = 30;
    std::uint64_t seed = 1;
    std::vector<int> degrees{256, 512, 768, 896, 1023};
    int points = 1024;
    double cg_tol = 1e-14;
    int max_iter = 0;
    std::string out;
};

struct FrameOpts {
    Params params;
    int levels = 8;
    int mask_order = 4;
    std::string input;
    std::string coeffs;
    std::string out;
    int random_degree = -1;
    std::uint64_t seed = 1;
    double center = 0.0;
    double radius = 0.1;
    std::string p = "inf";
    int first_level = 0;
};

struct KernelOpts {
    Params params;
    double lambda = 64.0;
    int mask_order = 4;
    int grid = 256;
    std::string mask = "lowpass";
    std::string out;
};

class Runner {
public:
    Runner(const Globals& g, std::ostream& out) : globals_(g), out_(out) {}

    int quad_build(const BuildOpts& o)
    {
        const ScatteredSet set = read_points_file(o.points);
        if (o.degree < 0)
            throw ParameterError("--degree must be nonnegative");
        const RecurrenceTable table = build_recurrence(JacobiParams(o.params.alpha, o.params.beta), o.degree);
        RuleResult r = build_rule(table, set, o.degree, RuleOptions{o.cg_tol, o.max_iter});
        auto& diag = *r.rule.diagnostics;
        if (globals_.no_timing)
            diag.wall_time_seconds = 0.0;
        if (!o.out.empty())
            write_text_file(o.out, dump_canonical(rule_to_json(table.params, r.rule)));

        RunReport report;
        report.command = "quad build";
        report.inputs = {{"alpha", o.params.alpha}, {"beta", o.params.beta}, {"points", o.points},
                         {"degree", o.degree}, {"cg_tol", o.cg_tol}, {"max_iter", o.max_iter},
                         {"out", o.out}};
        report.metrics = {{"cond", diag.condition},
                          {"pos", diag.positive_count},
                          {"total_variation", diag.total_variation},
                          {"error", diag.verify_error},
                          {"time", diag.wall_time_seconds},
                          {"cg_iters", diag.cg_iters},
                          {"cg_residual", diag.cg_residual},
                          {"point_count", static_cast<double>(set.size())},
                          {"mesh_norm", set.mesh_norm},
                          {"uniformity", set.uniformity}};
        report.wall_time_seconds = diag.wall_time_seconds;
        emit(report, r.warnings);
        return 0;
    }

    int quad_verify(const VerifyOpts& o)
    {
        const auto start = Clock::now();
        const RuleFile f = rule_from_json(read_json_file(o.rule));
        const int degree = o.degree >= 0 ? o.degree : f.rule.exactness_degree;
        const RecurrenceTable table = build_recurrence(f.params, std::max(degree, 1));
        const double error = verify_rule(table, f.rule, degree);

        RunReport report;
        report.command = "quad verify";
        report.inputs = {{"rule", o.rule}, {"degree", degree}, {"tol", o.tol}};
        int pos = 0;
        double tv = 0.0;
        for (double w : f.rule.masses) {
            pos += w > 0.0;
            tv += std::abs(w);
        }
        report.metrics = {{"error", error}, {"pos", pos}, {"total_variation", tv}};
        if (pos == static_cast<int>(f.rule.size()) && degree >= 2) {
            RuleFile bounded = f;
            bounded.rule.exactness_degree = degree;
            report.metrics["weight_bound_ok"] = weight_bound_check(table, bounded.rule) ? 1.0 : 0.0;
        }
        report.wall_time_seconds = timing(seconds_since(start));
        emit(report);
        if (!(error <= o.tol))
            throw NumericalError("rule fails verification at degree " + std::to_string(degree) + ": error "
                                 + format_csv_number(error) + " exceeds " + format_csv_number(o.tol));
        return 0;
    }

    int quad_random_points(const PointsOpts& o)
    {
        const auto start = Clock::now();
        const ScatteredSet set = random_points(o.count, o.seed);
        std::ostringstream csv;
        write_points_csv(csv, set);
        if (o.out.empty()) {
            out_ << csv.str();
            return 0;
        }
        write_text_file(o.out, csv.str());
        RunReport report;
        report.command = "quad random-points";
        report.inputs = {{"count", o.count}, {"out", o.out}};
        report.seed = o.seed;
        report.metrics = {{"mesh_norm", set.mesh_norm},
                          {"separation_radius", set.separation_radius},
                          {"uniformity", set.uniformity}};
        report.wall_time_seconds = timing(seconds_since(start));
        emit(report);
        return 0;
    }

    int quad_table1(const TableOpts& o)
    {
        const auto start = Clock::now();
        Table1Options t;
        t.alpha = o.params.alpha;
        t.beta = o.params.beta;
        t.points = o.points;
        t.trials = o.trials;
        t.seed = o.seed;
        t.degrees = o.degrees;
        t.rule = RuleOptions{o.cg_tol, o.max_iter};
        auto rows = run_table1(t);
        if (globals_.no_timing)
            for (auto& r : rows)
                r.time = 0.0;
        std::ostringstream csv;
        write_table1_csv(csv, rows);
        if (o.out.empty()) {
            out_ << csv.str();
            return 0;
        }
        write_text_file(o.out, csv.str());
        RunReport report;
        report.command = "quad table1";
        report.inputs = {{"alpha", o.params.alpha}, {"beta", o.params.beta}, {"trials", o.trials},
                         {"degrees", o.degrees}, {"points", o.points}, {"out", o.out}};
        report.seed = o.seed;
        int failures = 0;
        for (const auto& r : rows)
            failures += r.failures;
        report.metrics = {{"rows", static_cast<double>(rows.size())}, {"failures", failures}};
        report.wall_time_seconds = timing(seconds_since(start));
        emit(report);
        return 0;
    }

    int frame_analyze(const FrameOpts& o)
    {
        const auto start = Clock::now();
        const JacobiParams params(o.params.alpha, o.params.beta);
        const int size = dyadic_size(o.levels);
        const RecurrenceTable table = build_recurrence(params, size);
        const auto fhat = resolve_coefficients(table, load_input(o.input), size);
        const FrameCoefficients coeffs = analyze(table, make_lowpass(o.mask_order), o.levels, fhat);
        write_text_file(o.out, dump_canonical(coefficients_to_json(coeffs)));

        RunReport report;
        report.command = "frame analyze";
        report.inputs = frame_inputs(o);
        std::size_t count = 0;
        for (const auto& l : coeffs.levels)
            count += l.coefficients.size();
        report.metrics = {{"lowpass0", coeffs.lowpass0},
                          {"coefficient_count", static_cast<double>(count)},
                          {"parseval_gap", parseval_gap(coeffs, fhat).relative_gap}};
        report.wall_time_seconds = timing(seconds_since(start));
        emit(report);
        return 0;
    }

    int frame_synth(const FrameOpts& o)
    {
        const auto start = Clock::now();
        const FrameCoefficients coeffs = coefficients_from_json(read_json_file(o.coeffs));
        const int size = dyadic_size(coeffs.top_level());
        const RecurrenceTable table = build_recurrence(coeffs.params, size);
        const auto recon = synthesize(table, make_lowpass(coeffs.mask_order), coeffs);

        if (!o.out.empty())
            write_text_file(o.out, dump_canonical({{"alpha", coeffs.params.alpha()},
                                                   {"beta", coeffs.params.beta()},
                                                   {"S", coeffs.mask_order},
                                                   {"N", coeffs.top_level()},
                                                   {"coeffs", recon}}));
        RunReport report;
        report.command = "frame synth";
        report.inputs = {{"coeffs", o.coeffs}, {"input", o.input}, {"out", o.out}};
        report.metrics["coefficient_count"] = static_cast<double>(recon.size());
        if (!o.input.empty()) {
            const FunctionInput in = load_input(o.input);
            const int half = size / 2;
            bool band_limited = in.kind == FunctionInput::Kind::fourier;
            if (band_limited)
                for (std::size_t k = half + 1; k < in.coeffs.size(); ++k)
                    band_limited = band_limited && in.coeffs[k] == 0.0;
            report.metrics["band_limited"] = band_limited ? 1.0 : 0.0;
            if (band_limited) {
                const auto fhat = resolve_coefficients(table, in, size);
                double err = 0.0;
                for (int k = 0; k < size; ++k)
                    err = std::max(err, std::abs(recon[k] - fhat[k]));
                report.metrics["max_error"] = err;
            }
        }
        report.wall_time_seconds = timing(seconds_since(start));
        emit(report);
        return 0;
    }

    int frame_parseval(const FrameOpts& o)
    {
        const auto start = Clock::now();
        const JacobiParams params(o.params.alpha, o.params.beta);
        const int size = dyadic_size(o.levels);
        const RecurrenceTable table = build_recurrence(params, size);
        std::vector<double> fhat;
        RunReport report;
        if (o.random_degree >= 0) {
            if (o.random_degree >= size)
                throw ParameterError("--random-degree must be below 2^levels = " + std::to_string(size));
            fhat = standard_normals(static_cast<std::size_t>(o.random_degree) + 1, o.seed);
            fhat.resize(size, 0.0);
            report.seed = o.seed;
        } else if (!o.input.empty()) {
            fhat = resolve_coefficients(table, load_input(o.input), size);
        } else {
            throw InputError("frame parseval needs --input or --random-degree");
        }
        const FrameCoefficients coeffs = analyze(table, make_lowpass(o.mask_order), o.levels, fhat);
        const ParsevalReport p = parseval_gap(coeffs, fhat);
        report.command = "frame parseval";
        report.inputs = frame_inputs(o);
        report.inputs["random_degree"] = o.random_degree;
        report.metrics = {{"lhs", p.lhs}, {"rhs", p.rhs}, {"lowpass0", coeffs.lowpass0}, {"gap", p.relative_gap}};
        report.wall_time_seconds = timing(seconds_since(start));
        emit(report);
        return 0;
    }

    int frame_besov(const FrameOpts& o)
    {
        const auto start = Clock::now();
        const JacobiParams params(o.params.alpha, o.params.beta);
        const int size = dyadic_size(o.levels);
        const RecurrenceTable table = build_recurrence(params, size);
        const auto fhat = resolve_coefficients(table, load_input(o.input), size);
        const FrameCoefficients coeffs = analyze(table, make_lowpass(o.mask_order), o.levels, fhat);
        const double p = parse_p(o.p);
        const BesovEstimate est = besov_estimate(coeffs, Interval{o.center, o.radius}, p, o.first_level);

        RunReport report;
        report.command = "frame besov";
        report.inputs = frame_inputs(o);
        report.inputs["center"] = o.center;
        report.inputs["radius"] = o.radius;
        report.inputs["p"] = o.p;
        report.inputs["first_level"] = o.first_level;
        report.metrics = {{"gamma_hat", est.gamma_hat},
                          {"fit_quality", est.fit_quality},
                          {"sup_form", est.sup_form},
                          {"fitted_levels", static_cast<double>(est.fitted_levels.size())}};
        for (std::size_t n = 0; n < est.per_level_norms.size(); ++n) {
            char key[32];
            std::snprintf(key, sizeof key, "norm_%02zu", n);
            report.metrics[key] = est.per_level_norms[n];
        }
        report.wall_time_seconds = timing(seconds_since(start));
        emit(report);
        return 0;
    }

    int kernel_profile(const KernelOpts& o)
    {
        const JacobiParams params(o.params.alpha, o.params.beta);
        if (!params.localization_ok())
            throw UnsupportedParameterError("kernel profile needs min(alpha, beta) >= -1/2");
        if (!(o.lambda > 0.0) || !std::isfinite(o.lambda))
            throw ParameterError("--lambda must be positive");
        const MaskKind kind = parse_mask_kind(o.mask);
        const MultiplierMask mask = kind == MaskKind::indicator ? make_indicator()
                                    : kind == MaskKind::bandpass_g ? derive_bandpass(make_lowpass(o.mask_order))
                                                                   : make_lowpass(o.mask_order);
        const int degree = std::max(1, static_cast<int>(std::ceil(o.lambda)));
        const RecurrenceTable table = build_recurrence(params, degree);
        const auto grid = uniform_theta_grid(o.grid);
        const auto rows = localization_profile(table, mask, o.lambda, grid);

        std::ostringstream csv;
        csv << "delta_theta,sup_abs_phi,lambda,S,alpha,beta\n";
        for (const auto& r : rows)
            csv << format_csv_number(r.delta_theta) << ',' << format_csv_number(r.sup_abs_phi) << ','
                << format_csv_number(o.lambda) << ',' << o.mask_order << ',' << format_csv_number(o.params.alpha)
                << ',' << format_csv_number(o.params.beta) << '\n';
        if (o.out.empty())
            out_ << csv.str();
        else
            write_text_file(o.out, csv.str());
        return 0;
    }

private:
    double timing(double seconds) const { return globals_.no_timing ? 0.0 : seconds; }

    void emit(const RunReport& report, const std::vector<std::string>& warnings = {})
    {
        nlohmann::json j = report.to_json();
        if (!warnings.empty())
            j["warnings"] = warnings;
        out_ << dump_canonical(j);
    }

    static int dyadic_size(int levels)
    {
        if (levels < 0 || levels > 20)
            throw ParameterError("--levels must lie in [0, 20], got " + std::to_string(levels));
        return 1 << levels;
    }

    static FunctionInput load_input(const std::string& path)
    {
        if (path.empty())
            throw InputError("--input is required");
        return function_input_from_json(read_json_file(path));
    }

    static double parse_p(const std::string& text)
    {
        if (text == "inf" || text == "infinity")
            return std::numeric_limits<double>::infinity();
        try {
            std::size_t used = 0;
            const double p = std::stod(text, &used);
            if (used == text.size())
                return p;
        } catch (const std::exception&) {
        }
        throw ParameterError("--p must be a number >= 1 or 'inf', got '" + text + "'");
    }

    static nlohmann::json frame_inputs(const FrameOpts& o)
    {
        return {{"alpha", o.params.alpha}, {"beta", o.params.beta}, {"levels", o.levels},
                {"mask_order", o.mask_order}, {"input", o.input}, {"out", o.out}};
    }

    const Globals& globals_;
    std::ostream& out_;
};

int report_error(const Globals& g, std::ostream& out, std::ostream& err, const std::string& kind,
                 const std::string& message, int code, const std::vector<double>* history = nullptr)
{
    err << "error: " << message << '\n';
    if (g.error_json) {
        nlohmann::json j = {{"error", {{"class", code == 2 ? "input" : "numerical"},
                                       {"kind", kind},
                                       {"message", message},
                                       {"exit_code", code}}}};
        if (history)
            j["error"]["residual_history"] = *history;
        out << dump_canonical(j);
    }
    return code;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Globals g;
    BuildOpts build;
    VerifyOpts verify;
    PointsOpts points;
    TableOpts table;
    FrameOpts frame;
    KernelOpts kernel;

    CLI::App app{"Jacobi-weight quadrature, localized kernels and tight frame analysis", "jacoframe"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_flag("--error-json", g.error_json, "Print a JSON error object on failure");
    app.add_flag("--no-timing", g.no_timing, "Write 0 for wall-time fields");

    auto* quad = app.add_subcommand("quad", "Scattered-node quadrature")->require_subcommand(1);

    auto* q_build = quad->add_subcommand("build", "Build a quadrature rule on scattered nodes");
    add_params(q_build, build.params);
    q_build->add_option("--points", build.points, "Points CSV file")->required();
    q_build->add_option("--degree", build.degree, "Degree of exactness")->required();
    q_build->add_option("--cg-tol", build.cg_tol, "CG relative residual tolerance")->capture_default_str();
    q_build->add_option("--max-iter", build.max_iter, "CG iteration cap (0: 4(n+1))")->capture_default_str();
    q_build->add_option("--out", build.out, "Rule JSON output");

    auto* q_verify = quad->add_subcommand("verify", "Check the exactness of a rule file");
    q_verify->add_option("--rule", verify.rule, "Rule JSON file")->required();
    q_verify->add_option("--degree", verify.degree, "Degree to verify (default: the rule's)");
    q_verify->add_option("--tol", verify.tol, "Largest acceptable error")->capture_default_str();

    auto* q_points = quad->add_subcommand("random-points", "One random angle per interval of [0, pi]");
    q_points->add_option("--count", points.count, "Number of points")->capture_default_str();
    q_points->add_option("--seed", points.seed, "Random seed")->capture_default_str();
    q_points->add_option("--out", points.out, "CSV output (default: stdout)");

    auto* q_table = quad->add_subcommand("table1", "Averaged rule statistics over seeded trials");
    add_params(q_table, table.params);
    q_table->add_option("--trials", table.trials, "Number of trials")->capture_default_str();
    q_table->add_option("--seed", table.seed, "Seed of trial 0; trial t uses seed + t")->capture_default_str();
    q_table->add_option("--degrees", table.degrees, "Comma-separated degrees")->delimiter(',')->capture_default_str();
    q_table->add_option("--points", table.points, "Points per trial")->capture_default_str();
    q_table->add_option("--cg-tol", table.cg_tol, "CG relative residual tolerance")->capture_default_str();
    q_table->add_option("--max-iter", table.max_iter, "CG iteration cap (0: 4(n+1))")->capture_default_str();
    q_table->add_option("--out", table.out, "CSV output (default: stdout)");

    auto* fr = app.add_subcommand("frame", "Tight frame analysis")->require_subcommand(1);
    auto add_frame_common = [&](CLI::App* cmd) {
        add_params(cmd, frame.params);
        cmd->add_option("--levels", frame.levels, "Top level N")->capture_default_str();
        cmd->add_option("--mask-order", frame.mask_order, "Low-pass mask order S")->capture_default_str();
    };
    auto* f_analyze = fr->add_subcommand("analyze", "Frame coefficients of a function");
    add_frame_common(f_analyze);
    f_analyze->add_option("--input", frame.input, "Function input JSON")->required();
    f_analyze->add_option("--out", frame.out, "Coefficients JSON output")->required();

    auto* f_synth = fr->add_subcommand("synth", "Reconstruct orthonormal coefficients from frame coefficients");
    f_synth->add_option("--coeffs", frame.coeffs, "Coefficients JSON file")->required();
    f_synth->add_option("--input", frame.input, "Original function input, for the reconstruction error");
    f_synth->add_option("--out", frame.out, "Reconstruction JSON output");

    auto* f_parseval = fr->add_subcommand("parseval", "Parseval identity check");
    add_frame_common(f_parseval);
    f_parseval->add_option("--input", frame.input, "Function input JSON");
    f_parseval->add_option("--random-degree", frame.random_degree, "Random polynomial of this degree instead");
    f_parseval->add_option("--seed", frame.seed, "Seed for --random-degree")->capture_default_str();

    auto* f_besov = fr->add_subcommand("besov", "Local smoothness estimate from coefficient decay");
    add_frame_common(f_besov);
    f_besov->add_option("--input", frame.input, "Function input JSON")->required();
    f_besov->add_option("--center", frame.center, "Interval center")->capture_default_str();
    f_besov->add_option("--radius", frame.radius, "Interval radius")->capture_default_str();
    f_besov->add_option("--p", frame.p, "Norm exponent (number >= 1 or inf)")->capture_default_str();
    f_besov->add_option("--first-level", frame.first_level, "First level of the fit")->capture_default_str();

    auto* kern = app.add_subcommand("kernel", "Localized kernels")->require_subcommand(1);
    auto* k_profile = kern->add_subcommand("profile", "Off-diagonal decay profile of Phi_lambda");
    add_params(k_profile, kernel.params);
    k_profile->add_option("--lambda", kernel.lambda, "Kernel scale")->required();
    k_profile->add_option("--mask-order", kernel.mask_order, "Mask order S")->capture_default_str();
    k_profile->add_option("--grid", kernel.grid, "Number of theta intervals on [0, pi]")->capture_default_str();
    k_profile->add_option("--mask", kernel.mask, "lowpass, bandpass or indicator")->capture_default_str();
    k_profile->add_option("--out", kernel.out, "CSV output (default: stdout)");

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("jacoframe");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store)
        argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e, out, err);
        return report_error(g, out, err, "usage", e.what(), 2);
    }

    Runner runner(g, out);
    try {
        if (q_build->parsed())
            return runner.quad_build(build);
        if (q_verify->parsed())
            return runner.quad_verify(verify);
        if (q_points->parsed())
            return runner.quad_random_points(points);
        if (q_table->parsed())
            return runner.quad_table1(table);
        if (f_analyze->parsed())
            return runner.frame_analyze(frame);
        if (f_synth->parsed())
            return runner.frame_synth(frame);
        if (f_parseval->parsed())
            return runner.frame_parseval(frame);
        if (f_besov->parsed())
            return runner.frame_besov(frame);
        if (k_profile->parsed())
            return runner.kernel_profile(kernel);
        return report_error(g, out, err, "usage", "no command given", 2);
    } catch (const SolverError& e) {
        return report_error(g, out, err, e.kind(), e.what(), 1, &e.residual_history);
    } catch (const Error& e) {
        return report_error(g, out, err, e.kind(), e.what(), e.error_class() == ErrorClass::input ? 2 : 1);
    } catch (const nlohmann::json::exception& e) {
        return report_error(g, out, err, "input", e.what(), 2);
    } catch (const std::exception& e) {
        return report_error(g, out, err, "internal", e.what(), 1);
    }
}

} // namespace jacoframe::cli
