#include <jacoframe_cli/table1.hpp>

#include <jacoframe/frame.hpp>
#include <jacoframe/jacobi.hpp>
#include <jacoframe/kernel.hpp>
#include <jacoframe/mask.hpp>
#include <jacoframe/measure.hpp>
#include <jacoframe/point_set.hpp>
#include <jacoframe/scattered_rule.hpp>

#include "brute_quadrature.hpp"
#include "chebyshev_abs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace jacoframe;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

using Check = std::function<void(Outcome&)>;

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

void table1_and_weight_bound(Outcome& c1, Outcome& c8)
{
    const auto start = std::chrono::steady_clock::now();
    const RecurrenceTable legendre = build_recurrence(JacobiParams(0, 0), 1023);
    cli::Table1Options opts;
    opts.points = 1024;
    opts.trials = 30;
    opts.seed = 1;
    int worst_pos = 1024, bound_checked = 0, bound_failed = 0, max_iters = 0;
    double tv_lo = INFINITY, tv_hi = 0.0, err256 = 0.0, err512 = 0.0, err1023 = 0.0, tv1023 = 0.0;
    const auto observer = [&](const cli::TrialRecord& rec) {
        const std::string tag = "n=" + std::to_string(rec.degree) + " seed=" + std::to_string(rec.seed);
        if (!rec.result) {
            if (rec.degree == 256 || rec.degree == 512 || rec.degree == 1023)
                c1.require(false, tag + " build failed: " + rec.failure);
            return;
        }
        const auto& d = *rec.result->rule.diagnostics;
        if (rec.degree == 256) {
            worst_pos = std::min(worst_pos, d.positive_count);
            c1.require(d.positive_count == 1024, tag + " pos=" + std::to_string(d.positive_count));
            err256 = std::max(err256, d.verify_error);
            if (d.positive_count == static_cast<int>(rec.result->rule.size())) {
                ++bound_checked;
                if (!weight_bound_check(legendre, rec.result->rule, 128)) {
                    ++bound_failed;
                    c8.require(false, tag);
                }
            }
        }
        if (rec.degree == 256 || rec.degree == 512) {
            tv_lo = std::min(tv_lo, d.total_variation);
            tv_hi = std::max(tv_hi, d.total_variation);
            c1.require(d.total_variation >= 1.999 && d.total_variation <= 2.001, tag + " tv=" + fmt(d.total_variation));
            c1.require(d.verify_error <= 1e-10, tag + " error=" + fmt(d.verify_error));
        }
        if (rec.degree == 512)
            err512 = std::max(err512, d.verify_error);
        if (rec.degree == 1023) {
            err1023 = std::max(err1023, d.verify_error);
            tv1023 = std::max(tv1023, d.total_variation);
            max_iters = std::max(max_iters, d.cg_iters);
            c1.require(d.verify_error <= 1e-8, tag + " error=" + fmt(d.verify_error));
            c1.require(d.total_variation <= 4.0, tag + " tv=" + fmt(d.total_variation));
            c1.require(d.cg_iters <= 4096, tag + " cg_iters=" + std::to_string(d.cg_iters));
        }
    };
    const auto rows = cli::run_table1(opts, observer);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& r : rows)
        if (r.degree == 1023)
            c1.detail << " avg_tv1023=" << fmt(r.total_variation);
    c1.detail << " min_pos256=" << worst_pos << " tv256/512 in [" << fmt(tv_lo) << ", " << fmt(tv_hi)
              << "] max_err256=" << fmt(err256) << " max_err512=" << fmt(err512) << " max_err1023=" << fmt(err1023)
              << " max_tv1023=" << fmt(tv1023) << " max_cg_iters1023=" << max_iters << " runtime=" << fmt(seconds)
              << "s";
    c1.require(seconds <= 60.0, "runtime " + fmt(seconds) + "s");
    c8.require(bound_checked == 30, "only " + std::to_string(bound_checked) + " all-positive rules");
    c8.detail << " rules_checked=" << bound_checked << " violations=" << bound_failed;
}

void gauss_fixed_point(Outcome& c)
{
    double worst = 0.0;
    for (auto [a, b] : {std::pair{0.0, 0.0}, std::pair{-0.5, -0.5}, std::pair{1.0, 0.5}}) {
        const auto t = build_recurrence(JacobiParams(a, b), 256);
        for (int m : {8, 32, 128}) {
            const auto g = gauss_rule(t, m);
            const auto r = build_rule(t, analyze_x_values(g.nodes), m - 1);
            for (std::size_t i = 0; i < g.size(); ++i)
                worst = std::max(worst, std::abs(r.rule.masses[i] / g.masses[i] - 1.0));
        }
    }
    c.detail << " max_rel_dev=" << fmt(worst);
    c.require(worst <= 1e-10, "relative deviation " + fmt(worst));
}

void orthonormality_and_kernel(Outcome& c)
{
    const std::vector<double> grid{-0.5, 0.0, 0.5, 1.0, 2.3};
    double ortho = 0.0, repro = 0.0;
    for (double a : grid)
        for (double b : grid) {
            const auto t = build_recurrence(JacobiParams(a, b), 64);
            const auto q = oracle::graded_jacobi_rule(a, b);
            std::vector<std::vector<double>> vals(q.x.size());
            for (std::size_t i = 0; i < q.x.size(); ++i)
                vals[i] = eval_all(t, 51, q.x[i]);
            for (int j = 0; j <= 40; ++j)
                for (int k = j; k <= 40; ++k) {
                    double s = 0.0;
                    for (std::size_t i = 0; i < q.x.size(); ++i)
                        s += q.w[i] * vals[i][j] * vals[i][k];
                    ortho = std::max(ortho, std::abs(s - (j == k ? 1.0 : 0.0)));
                }
            for (int m : {5, 20, 50})
                for (int xi = 0; xi < 20; ++xi) {
                    const double x = std::cos((xi + 0.5) * pi / 20);
                    const auto px = eval_all(t, m, x);
                    double s = 0.0;
                    for (std::size_t i = 0; i < q.x.size(); ++i) {
                        double kxt = 0.0;
                        for (int k = 0; k < m; ++k)
                            kxt += px[k] * vals[i][k];
                        s += q.w[i] * kxt * kxt;
                    }
                    const double kxx = cd_kernel(t, m, x, x);
                    repro = std::max(repro, std::abs(s - kxx) / kxx);
                }
        }
    c.detail << " max_orthonormality_dev=" << fmt(ortho) << " max_reproducing_rel_dev=" << fmt(repro);
    c.require(ortho <= 1e-10, "orthonormality " + fmt(ortho));
    c.require(repro <= 1e-10, "reproducing kernel " + fmt(repro));
}

void round_trip_and_parseval(Outcome& c)
{
    const auto t = build_recurrence(JacobiParams(0, 0), 256);
    const auto h = make_lowpass(4);
    double worst = 0.0, gap = 0.0;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        auto p = standard_normals(129, 1000 + trial);
        p.resize(256, 0.0);
        const auto coeffs = analyze(t, h, 8, p);
        const auto back = synthesize(t, h, coeffs);
        for (int k = 0; k < 256; ++k)
            worst = std::max(worst, std::abs(back[k] - p[k]));
        gap = std::max(gap, parseval_gap(coeffs, p).relative_gap);
    }
    c.detail << " max_coeff_err=" << fmt(worst) << " max_parseval_gap=" << fmt(gap);
    c.require(worst <= 1e-10, "round trip " + fmt(worst));
    c.require(gap <= 1e-10, "parseval " + fmt(gap));
}

double level_norm(const FrameLevel& l)
{
    double s = 0.0;
    for (std::size_t i = 0; i < l.coefficients.size(); ++i)
        s += l.measure.masses[i] * l.coefficients[i] * l.coefficients[i];
    return std::sqrt(s);
}

void vanishing_and_bands(Outcome& c)
{
    const auto t = build_recurrence(JacobiParams(0, 0), 256);
    const auto h = make_lowpass(4);
    double worst = 0.0;
    for (int n = 4; n <= 8; ++n) {
        auto p = standard_normals(static_cast<std::size_t>(1 << (n - 2)) + 1, 70 + n);
        p.resize(256, 0.0);
        worst = std::max(worst, level_norm(analyze(t, h, 8, p).levels[n]));
    }
    int max_active = 0;
    for (int k = 0; k <= 64; ++k) {
        std::vector<double> e(128, 0.0);
        e[k] = 1.0;
        int active = 0;
        for (const auto& l : analyze(t, h, 7, e).levels)
            active += level_norm(l) > 1e-14;
        max_active = std::max(max_active, active);
    }
    c.detail << " max_low_degree_norm=" << fmt(worst) << " max_active_levels=" << max_active;
    c.require(worst < 1e-14, "vanishing " + fmt(worst));
    c.require(max_active <= 2, "bands " + std::to_string(max_active));
}

void kernel_localization(Outcome& c)
{
    const auto t = build_recurrence(JacobiParams(0, 0), 256);
    const auto h = make_lowpass(4);
    const auto grid = uniform_theta_grid(256);
    std::vector<double> tails;
    for (double lambda : {64.0, 128.0, 256.0})
        tails.push_back(tail_sup(localization_profile(t, h, lambda, grid), pi / 4));
    for (std::size_t i = 1; i < tails.size(); ++i) {
        const double drop = tails[i - 1] / tails[i];
        c.detail << " drop" << i << "=" << fmt(drop);
        c.require(drop >= std::pow(2.0, 1.5), "decay factor " + fmt(drop));
    }
    double ratio = 1.0;
    for (double x : {-1.0, -0.5, 0.0, 0.7, 1.0}) {
        double lo = INFINITY, hi = 0.0;
        for (double lambda : {64.0, 128.0, 256.0}) {
            const double v = row_l1(t, h, lambda, x);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        ratio = std::max(ratio, hi / lo);
    }
    c.detail << " row_l1_spread=" << fmt(ratio);
    c.require(ratio <= 3.0, "row_l1 spread " + fmt(ratio));
}

void singularity_detection(Outcome& c)
{
    const auto t = build_recurrence(JacobiParams(-0.5, -0.5), 512);
    const auto coeffs = analyze(t, make_lowpass(4), 9, oracle::abs_x_chebyshev_coeffs(512));
    const auto near = besov_estimate(coeffs, Interval{0.0, 0.1}, INFINITY, 4);
    const auto away = local_norms(coeffs, Interval{0.5, 0.1}, INFINITY);
    const double separation = near.per_level_norms[9] / away[9];

    const auto& top = coeffs.levels[9];
    std::size_t arg = 0;
    for (std::size_t i = 0; i < top.coefficients.size(); ++i)
        if (std::abs(top.coefficients[i]) > std::abs(top.coefficients[arg]))
            arg = i;
    std::vector<std::size_t> order(top.measure.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](auto i, auto j) { return std::abs(top.measure.nodes[i]) < std::abs(top.measure.nodes[j]); });
    const bool located = std::find(order.begin(), order.begin() + 3, arg) != order.begin() + 3;

    c.detail << " gamma_hat=" << fmt(near.gamma_hat) << " level9_near/away=" << fmt(separation)
             << " argmax_node=" << fmt(top.measure.nodes[arg]);
    c.require(near.gamma_hat >= 0.85 && near.gamma_hat <= 1.15, "gamma_hat " + fmt(near.gamma_hat));
    c.require(separation >= 100.0, "separation " + fmt(separation));
    c.require(located, "argmax not among the 3 nodes nearest 0");
}

} // namespace

int main()
{
    Outcome c[9];
    table1_and_weight_bound(c[1], c[8]);
    gauss_fixed_point(c[2]);
    orthonormality_and_kernel(c[3]);
    round_trip_and_parseval(c[4]);
    vanishing_and_bands(c[5]);
    kernel_localization(c[6]);
    singularity_detection(c[7]);

    const char* names[9] = {"",
                            "table1 statistics (1024 random points, 30 seeds)",
                            "Gauss fixed point",
                            "orthonormality and reproducing kernel",
                            "frame round trip and Parseval",
                            "vanishing and band structure",
                            "kernel localization",
                            "singularity detection for |x|",
                            "weight bound at degree 256"};
    int failures = 0;
    for (int i = 1; i <= 8; ++i) {
        std::printf("%s criterion %d: %s:%s\n", c[i].pass ? "PASS" : "FAIL", i, names[i], c[i].detail.str().c_str());
        failures += !c[i].pass;
    }
    return failures == 0 ? 0 : 1;
}
