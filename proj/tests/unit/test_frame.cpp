#include <jacoframe/errors.hpp>
#include <jacoframe/frame.hpp>
#include <jacoframe/mask.hpp>
#include <jacoframe/point_set.hpp>
#include <jacoframe/scattered_rule.hpp>

#include "chebyshev_abs.hpp"
#include "remez_abs.hpp"

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

using namespace jacoframe;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> random_poly(int degree, int size, std::uint64_t seed)
{
    auto c = standard_normals(static_cast<std::size_t>(degree) + 1, seed);
    c.resize(size, 0.0);
    return c;
}

std::vector<double> unit(int k, int size)
{
    std::vector<double> c(size, 0.0);
    c[k] = 1.0;
    return c;
}

double level_l2(const FrameLevel& l)
{
    double s = 0.0;
    for (std::size_t i = 0; i < l.coefficients.size(); ++i)
        s += l.measure.masses[i] * l.coefficients[i] * l.coefficients[i];
    return std::sqrt(s);
}

} // namespace

TEST(LevelMeasure, Examples)
{
    const auto t = build_recurrence(JacobiParams(0.4, -0.2), 64);
    const auto l0 = level_measure(t, 0);
    EXPECT_EQ(l0.size(), 1u);
    EXPECT_GE(l0.exactness_degree, 1);
    const auto l3 = level_measure(t, 3);
    EXPECT_EQ(l3.size(), 8u);
    EXPECT_LE(verify_rule(t, l3, 15), 1e-12);

    const auto c = build_recurrence(JacobiParams(-0.5, -0.5), 16);
    for (double m : level_measure(c, 3).masses)
        EXPECT_NEAR(m, pi / 8, 1e-14);
    EXPECT_THROW(level_measure(c, 5), CapacityError);
}

TEST(SigmaStar, Examples)
{
    const auto h = make_lowpass(3);
    const auto g = derive_bandpass(h);
    const auto p = random_poly(10, 32, 1);
    EXPECT_EQ(sigma_star(h, 20.0, p), p);

    for (int n = 4; n <= 8; ++n) {
        const int size = 1 << n;
        const auto q = random_poly(size / 4, size, n);
        for (double v : sigma_star(g, size, q))
            EXPECT_EQ(v, 0.0);
    }
    for (double v : sigma_star(h, 0.5, p))
        EXPECT_EQ(v, 0.0);
    EXPECT_THROW(sigma_star(h, 40.0, p), CapacityError);
}

TEST(SigmaDiscrete, ReproducesLowDegreePolynomials)
{
    const auto t = build_recurrence(JacobiParams(0.2, 0.9), 64);
    const auto h = make_lowpass(4);
    const double lambda = 32.0;
    // 24 Gauss nodes are exact on degree 47.
    const auto nu = gauss_rule(t, 24);
    const auto coeffs = random_poly(16, 17, 4);
    std::vector<double> f(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i)
        f[i] = eval_series(t, coeffs, nu.nodes[i]);
    const auto s = sigma_discrete(t, h, lambda, nu, f);
    ASSERT_EQ(s.size(), 32u);
    for (int k = 0; k < 32; ++k)
        EXPECT_NEAR(s[k], k <= 16 ? coeffs[k] : 0.0, 1e-12) << k;
}

TEST(SigmaDiscrete, ZeroAndMismatch)
{
    const auto t = build_recurrence(JacobiParams(0, 0), 32);
    const auto nu = gauss_rule(t, 10);
    for (double v : sigma_discrete(t, make_lowpass(2), 8.0, nu, std::vector<double>(10, 0.0)))
        EXPECT_EQ(v, 0.0);
    EXPECT_THROW(sigma_discrete(t, make_lowpass(2), 8.0, nu, std::vector<double>(9, 0.0)), InputError);
}

TEST(SigmaDiscrete, IndicatorIsLeastSquaresProjection)
{
    const auto t = build_recurrence(JacobiParams(-0.5, 0.5), 32);
    const int m = 12;
    const auto nu = gauss_rule(t, m);
    std::vector<double> f(nu.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = std::exp(nu.nodes[i]) * std::cos(4 * nu.nodes[i]);
    const auto s = sigma_discrete(t, make_indicator(), m, nu, f);

    Eigen::MatrixXd p(m, m);
    Eigen::VectorXd w(m), fv(m);
    for (int i = 0; i < m; ++i) {
        const auto row = eval_all(t, m, nu.nodes[i]);
        for (int k = 0; k < m; ++k)
            p(i, k) = row[k];
        w[i] = nu.masses[i];
        fv[i] = f[i];
    }
    const Eigen::MatrixXd normal = p.transpose() * w.asDiagonal() * p;
    const Eigen::VectorXd ls = normal.ldlt().solve(p.transpose() * w.asDiagonal() * fv);
    for (int k = 0; k < m; ++k)
        EXPECT_NEAR(s[k], ls[k], 1e-12);
}

TEST(Analyze, ConstantHasNoBandContent)
{
    const auto t = build_recurrence(JacobiParams(0, 0), 64);
    const auto c = analyze(t, make_lowpass(4), 6, unit(0, 64));
    EXPECT_EQ(c.lowpass0, 1.0);
    EXPECT_EQ(c.top_level(), 6);
    for (const auto& l : c.levels) {
        EXPECT_EQ(l.measure.size(), static_cast<std::size_t>(1) << l.level);
        EXPECT_GE(l.measure.exactness_degree, (2 << l.level) - 1);
        for (double v : l.coefficients)
            EXPECT_EQ(v, 0.0);
    }
}

TEST(Analyze, SingleBasisPolynomialTouchesAtMostTwoLevels)
{
    const auto t = build_recurrence(JacobiParams(0.5, 0.0), 128);
    for (int k = 1; k <= 64; ++k) {
        const auto c = analyze(t, make_lowpass(3), 7, unit(k, 128));
        int active = 0;
        for (const auto& l : c.levels)
            active += level_l2(l) > 1e-14;
        EXPECT_GE(active, 1) << k;
        EXPECT_LE(active, 2) << k;
    }
}

TEST(Analyze, PreconditionsAndCallerMeasures)
{
    const auto t = build_recurrence(JacobiParams(0, 0), 64);
    EXPECT_THROW(analyze(t, make_lowpass(4), 6, std::vector<double>(63, 0.0)), Error);
    const auto bad = build_recurrence(JacobiParams(-0.7, 0.0), 64);
    EXPECT_THROW(analyze(bad, make_lowpass(4), 4, std::vector<double>(64, 1.0)), UnsupportedParameterError);

    const auto fhat = random_poly(20, 32, 9);
    std::vector<DiscreteMeasure> dense;
    for (int n = 0; n <= 5; ++n)
        dense.push_back(gauss_rule(t, (1 << n) + 3));
    const auto c = analyze(t, make_lowpass(4), fhat, dense);
    const auto ref = analyze(t, make_lowpass(4), 5, fhat);
    for (int n = 0; n <= 5; ++n) {
        EXPECT_EQ(c.levels[n].measure.size(), dense[n].size());
        EXPECT_NEAR(level_l2(c.levels[n]), level_l2(ref.levels[n]), 1e-12);
    }
    std::vector<DiscreteMeasure> weak(dense);
    weak[3] = gauss_rule(t, 4);
    EXPECT_THROW(analyze(t, make_lowpass(4), fhat, weak), PreconditionError);
}

TEST(Synthesize, RoundTripOnBandLimitedInput)
{
    for (auto [a, b] : {std::pair{0.0, 0.0}, std::pair{-0.5, -0.5}, std::pair{1.0, 0.5}}) {
        const auto t = build_recurrence(JacobiParams(a, b), 256);
        const auto h = make_lowpass(4);
        for (int big_n = 1; big_n <= 8; ++big_n) {
            const int size = 1 << big_n;
            for (int trial = 0; trial < 3; ++trial) {
                const auto p = random_poly(size / 2, size, 100 * big_n + trial);
                const auto back = synthesize(t, h, analyze(t, h, big_n, p));
                ASSERT_EQ(back.size(), p.size());
                for (int k = 0; k < size; ++k)
                    EXPECT_NEAR(back[k], p[k], 1e-10);
            }
        }
    }
}

TEST(Synthesize, ZeroAndBoundaryDegree)
{
    const auto t = build_recurrence(JacobiParams(0, 0), 64);
    const auto h = make_lowpass(2);
    for (double v : synthesize(t, h, analyze(t, h, 5, std::vector<double>(32, 0.0))))
        EXPECT_EQ(v, 0.0);
    const auto back = synthesize(t, h, analyze(t, h, 6, unit(32, 64)));
    EXPECT_NEAR(back[32], 1.0, 1e-12);
}

TEST(Synthesize, AppliesLowpassToGeneralInput)
{
    const auto t = build_recurrence(JacobiParams(0, 0), 64);
    const auto h = make_lowpass(3);
    const auto f = random_poly(63, 64, 77);
    const auto back = synthesize(t, h, analyze(t, h, 6, f));
    for (int k = 0; k < 64; ++k)
        EXPECT_NEAR(back[k], h(k / 64.0) * f[k], 1e-11);
}

TEST(Synthesize, RejectsMissingLevels)
{
    const auto t = build_recurrence(JacobiParams(0, 0), 64);
    const auto h = make_lowpass(3);
    auto c = analyze(t, h, 5, random_poly(10, 32, 1));
    c.levels.erase(c.levels.begin() + 2);
    EXPECT_THROW(synthesize(t, h, c), Error);
}

TEST(Parseval, Examples)
{
    const auto t = build_recurrence(JacobiParams(0, 0), 256);
    const auto h = make_lowpass(4);
    const auto p1 = unit(1, 8);
    const auto r1 = parseval_gap(analyze(t, h, 3, p1), p1);
    EXPECT_NEAR(r1.lhs, 1.0, 1e-15);
    EXPECT_LE(r1.relative_gap, 1e-12);

    const std::vector<double> zero(16, 0.0);
    EXPECT_EQ(parseval_gap(analyze(t, h, 4, zero), zero).relative_gap, 0.0);

    for (int trial = 0; trial < 5; ++trial) {
        const auto p = random_poly(100, 256, 500 + trial);
        EXPECT_LE(parseval_gap(analyze(t, h, 8, p), p).relative_gap, 1e-10);
    }
}

TEST(Frame, VanishingOnLowDegrees)
{
    const auto t = build_recurrence(JacobiParams(0.5, 0.5), 256);
    const auto h = make_lowpass(4);
    const auto p = random_poly(4, 256, 3);
    const auto c = analyze(t, h, 8, p);
    for (int n = 4; n <= 8; ++n) {
        const auto q = random_poly(1 << (n - 2), 256, 40 + n);
        const auto cq = analyze(t, h, 8, q);
        for (double v : cq.levels[n].coefficients)
            EXPECT_LT(std::abs(v), 1e-14);
    }
    EXPECT_GT(level_l2(c.levels[2]), 0.0);
}

TEST(Frame, LevelNormControlledByTail)
{
    const auto t = build_recurrence(JacobiParams(0, 0), 128);
    const auto h = make_lowpass(4);
    std::vector<double> f(128);
    for (int k = 0; k < 128; ++k)
        f[k] = 1.0 / (1.0 + k);
    const auto c = analyze(t, h, 7, f);
    for (int n = 0; n <= 7; ++n) {
        double tail = 0.0;
        for (int k = 0; k < 128; ++k)
            if (k > (1 << n) / 4.0)
                tail += f[k] * f[k];
        EXPECT_LE(level_l2(c.levels[n]), std::sqrt(tail) * (1 + 1e-12));
    }
}

TEST(LocalNorms, Examples)
{
    const auto t = build_recurrence(JacobiParams(0, 0), 64);
    const auto h = make_lowpass(4);
    const auto f = random_poly(30, 64, 8);
    const auto c = analyze(t, h, 6, f);
    const auto whole = local_norms(c, Interval{0.0, 1.0}, 2.0);
    for (int n = 0; n <= 6; ++n)
        EXPECT_NEAR(whole[n], level_l2(c.levels[n]), 1e-14);

    // Level 0 has its single node at the centre of mass, away from [0.9, 0.95].
    const auto far = local_norms(c, Interval{0.925, 0.025}, 1.0);
    EXPECT_EQ(far[0], 0.0);

    EXPECT_THROW(local_norms(c, Interval{0.0, 0.0}, 2.0), ParameterError);
    EXPECT_THROW(local_norms(c, Interval{0.0, -1.0}, 2.0), ParameterError);
    EXPECT_THROW(local_norms(c, Interval{0.0, 0.5}, 0.5), ParameterError);
}

TEST(BesovFit, SyntheticRates)
{
    std::vector<double> a, b;
    for (int n = 0; n < 8; ++n) {
        a.push_back(std::ldexp(1.0, -n));
        b.push_back(std::pow(2.0, -2.5 * n));
    }
    const auto ea = besov_fit(a, INFINITY);
    EXPECT_NEAR(ea.gamma_hat, 1.0, 1e-12);
    EXPECT_NEAR(ea.fit_quality, 1.0, 1e-12);
    EXPECT_NEAR(ea.sup_form, 1.0, 1e-12);
    EXPECT_NEAR(besov_fit(b, INFINITY).gamma_hat, 2.5, 1e-12);
    EXPECT_EQ(besov_fit(a, 2.0, 5).fitted_levels, (std::vector<int>{5, 6, 7}));
    EXPECT_THROW(besov_fit(std::vector<double>{1.0, 0.5}, 2.0), InsufficientDataError);
    EXPECT_THROW(besov_fit(std::vector<double>{1.0, 0.0, 0.0, 0.5}, 2.0), InsufficientDataError);
}

TEST(Besov, AbsXSingularityDetected)
{
    const auto t = build_recurrence(JacobiParams(-0.5, -0.5), 512);
    const auto fhat = oracle::abs_x_chebyshev_coeffs(512);
    const auto c = analyze(t, make_lowpass(4), 9, fhat);

    const auto near = besov_estimate(c, Interval{0.0, 0.1}, INFINITY, 4);
    EXPECT_GE(near.gamma_hat, 0.85);
    EXPECT_LE(near.gamma_hat, 1.15);

    // The Remez oracle gives the best-approximation rate of |x|; the local
    // coefficient decay near 0 follows it.
    const double e1 = oracle::remez_abs_error(16), e2 = oracle::remez_abs_error(256);
    const double remez_rate = std::log2(e1 / e2) / 4.0;
    EXPECT_NEAR(remez_rate, 1.0, 0.05);
    EXPECT_NEAR(near.gamma_hat, remez_rate, 0.15);

    const auto away = local_norms(c, Interval{0.5, 0.1}, INFINITY);
    EXPECT_GE(near.per_level_norms[9] / away[9], 100.0);
    for (int n = 5; n <= 9; ++n)
        EXPECT_LT(away[n] / away[n - 1], near.per_level_norms[n] / near.per_level_norms[n - 1]);

    for (int n = 4; n <= 9; ++n) {
        const auto& l = c.levels[n];
        std::size_t arg = 0;
        for (std::size_t i = 0; i < l.coefficients.size(); ++i)
            if (std::abs(l.coefficients[i]) > std::abs(l.coefficients[arg]))
                arg = i;
        std::vector<std::size_t> order(l.measure.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto i, auto j) {
            return std::abs(l.measure.nodes[i]) < std::abs(l.measure.nodes[j]);
        });
        EXPECT_TRUE(arg == order[0] || arg == order[1] || arg == order[2]) << "level " << n;
    }
}
