#include "jacoframe/frame.hpp"

#include "jacoframe/errors.hpp"
#include "jacoframe/kernel.hpp"
#include "jacoframe/scattered_rule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jacoframe {

namespace {

void require_localization(const JacobiParams& params)
{
    if (!params.localization_ok())
        throw UnsupportedParameterError("frame analysis needs min(alpha, beta) >= -1/2 (got alpha="
                                        + std::to_string(params.alpha()) + ", beta="
                                        + std::to_string(params.beta()) + ")");
}

int dyadic(int level)
{
    if (level < 0 || level > 30)
        throw ParameterError("frame level out of range: " + std::to_string(level));
    return 1 << level;
}

} // namespace

DiscreteMeasure level_measure(const RecurrenceTable& table, int level)
{
    return gauss_rule(table, dyadic(level));
}

std::vector<double> sigma_star(const MultiplierMask& mask, double lambda, std::span<const double> fhat)
{
    const auto mult = mask_multipliers(mask, lambda);
    if (mult.empty())
        return std::vector<double>(fhat.size(), 0.0);
    if (fhat.size() < mult.size())
        throw CapacityError("sigma_star at lambda=" + std::to_string(lambda) + " needs "
                            + std::to_string(mult.size()) + " coefficients, got " + std::to_string(fhat.size()));
    std::vector<double> out(fhat.size(), 0.0);
    for (std::size_t k = 0; k < mult.size(); ++k)
        out[k] = mult[k] * fhat[k];
    return out;
}

std::vector<double> sigma_discrete(const RecurrenceTable& table, const MultiplierMask& mask, double lambda,
                                   const DiscreteMeasure& measure, std::span<const double> fvals)
{
    if (fvals.size() != measure.size() || measure.masses.size() != measure.nodes.size())
        throw InputError("sigma_discrete: " + std::to_string(fvals.size()) + " samples for "
                         + std::to_string(measure.size()) + " nodes");
    const auto mult = mask_multipliers(mask, lambda);
    if (mult.empty())
        return std::vector<double>(1, 0.0);
    const int terms = static_cast<int>(mult.size());
    const BasisMatrix basis = basis_matrix(table, measure.nodes, terms);
    Eigen::VectorXd weighted(static_cast<Eigen::Index>(fvals.size()));
    for (std::size_t i = 0; i < fvals.size(); ++i)
        weighted[static_cast<Eigen::Index>(i)] = measure.masses[i] * fvals[i];
    const Eigen::VectorXd moments = basis.transpose() * weighted;
    std::vector<double> out(terms);
    for (int k = 0; k < terms; ++k)
        out[k] = mult[k] * moments[k];
    return out;
}

FrameCoefficients analyze(const RecurrenceTable& table, const MultiplierMask& lowpass, std::span<const double> fhat,
                          std::span<const DiscreteMeasure> measures)
{
    require_localization(table.params);
    if (measures.empty())
        throw ParameterError("frame analysis needs at least one level");
    const int top = static_cast<int>(measures.size()) - 1;
    const auto top_size = static_cast<std::size_t>(dyadic(top));
    if (fhat.size() < top_size)
        throw CapacityError("analysis to level " + std::to_string(top) + " needs " + std::to_string(top_size)
                            + " Fourier coefficients, got " + std::to_string(fhat.size()));

    const MultiplierMask g = derive_bandpass(lowpass);
    FrameCoefficients out{table.params, lowpass.order(), fhat.empty() ? 0.0 : fhat[0], {}};
    out.levels.reserve(measures.size());
    for (int n = 0; n <= top; ++n) {
        const DiscreteMeasure& nu = measures[n];
        const int terms = dyadic(n);
        if (nu.exactness_degree < 2 * terms - 1)
            throw PreconditionError("level " + std::to_string(n) + " measure is exact to degree "
                                    + std::to_string(nu.exactness_degree) + ", needs "
                                    + std::to_string(2 * terms - 1));
        const auto tau = sigma_star(g, terms, fhat.first(terms));
        const BasisMatrix basis = basis_matrix(table, nu.nodes, terms);
        const Eigen::VectorXd values = basis * Eigen::Map<const Eigen::VectorXd>(tau.data(), terms);
        out.levels.push_back({n, static_cast<double>(terms), nu,
                              std::vector<double>(values.data(), values.data() + values.size())});
    }
    return out;
}

FrameCoefficients analyze(const RecurrenceTable& table, const MultiplierMask& lowpass, int top_level,
                          std::span<const double> fhat)
{
    require_localization(table.params);
    if (top_level < 0)
        throw ParameterError("top frame level must be nonnegative");
    std::vector<DiscreteMeasure> measures;
    measures.reserve(top_level + 1);
    for (int n = 0; n <= top_level; ++n)
        measures.push_back(level_measure(table, n));
    return analyze(table, lowpass, fhat, measures);
}

std::vector<double> synthesize(const RecurrenceTable& table, const MultiplierMask& lowpass,
                               const FrameCoefficients& coeffs)
{
    if (coeffs.levels.empty())
        throw InputError("synthesis needs at least level 0");
    for (std::size_t n = 0; n < coeffs.levels.size(); ++n)
        if (coeffs.levels[n].level != static_cast<int>(n))
            throw InputError("frame levels are not contiguous from 0: missing level " + std::to_string(n));

    const MultiplierMask g = derive_bandpass(lowpass);
    const int top = coeffs.top_level();
    std::vector<double> out(static_cast<std::size_t>(dyadic(top)), 0.0);
    out[0] = coeffs.lowpass0;
    for (const auto& lvl : coeffs.levels) {
        const auto& nu = lvl.measure;
        if (lvl.coefficients.size() != nu.size())
            throw InputError("level " + std::to_string(lvl.level) + " has " + std::to_string(lvl.coefficients.size())
                             + " coefficients for " + std::to_string(nu.size()) + " nodes");
        const auto mult = mask_multipliers(g, dyadic(lvl.level));
        const int terms = static_cast<int>(mult.size());
        const BasisMatrix basis = basis_matrix(table, nu.nodes, terms);
        Eigen::VectorXd weighted(static_cast<Eigen::Index>(nu.size()));
        for (std::size_t i = 0; i < nu.size(); ++i)
            weighted[static_cast<Eigen::Index>(i)] = nu.masses[i] * lvl.coefficients[i];
        const Eigen::VectorXd moments = basis.transpose() * weighted;
        for (int k = 0; k < terms; ++k)
            out[k] += mult[k] * moments[k];
    }
    return out;
}

ParsevalReport parseval_gap(const FrameCoefficients& coeffs, std::span<const double> fhat)
{
    ParsevalReport r{0.0, 0.0, 0.0};
    for (double c : fhat)
        r.lhs += c * c;
    for (const auto& lvl : coeffs.levels)
        for (std::size_t i = 0; i < lvl.coefficients.size(); ++i)
            r.rhs += lvl.measure.masses[i] * lvl.coefficients[i] * lvl.coefficients[i];
    if (r.lhs > 0.0)
        r.relative_gap = std::abs(r.lhs - r.rhs - coeffs.lowpass0 * coeffs.lowpass0) / r.lhs;
    return r;
}

std::vector<double> local_norms(const FrameCoefficients& coeffs, const Interval& interval, double p)
{
    if (!(interval.radius > 0.0))
        throw ParameterError("interval radius must be positive");
    if (!(p >= 1.0))
        throw ParameterError("norm index p must be >= 1");
    std::vector<double> norms;
    norms.reserve(coeffs.levels.size());
    for (const auto& lvl : coeffs.levels) {
        double acc = 0.0;
        for (std::size_t i = 0; i < lvl.coefficients.size(); ++i) {
            const double z = lvl.measure.nodes[i];
            if (z < interval.lo() || z > interval.hi())
                continue;
            const double v = std::abs(lvl.coefficients[i]);
            if (std::isinf(p))
                acc = std::max(acc, v);
            else
                acc += std::abs(lvl.measure.masses[i]) * std::pow(v, p);
        }
        norms.push_back(std::isinf(p) ? acc : std::pow(acc, 1.0 / p));
    }
    return norms;
}

BesovEstimate besov_fit(std::span<const double> norms, double p, int first_level)
{
    BesovEstimate est;
    est.p = p;
    est.per_level_norms.assign(norms.begin(), norms.end());
    std::vector<double> xs, ys;
    for (std::size_t n = static_cast<std::size_t>(std::max(first_level, 0)); n < norms.size(); ++n) {
        if (norms[n] > 1e-14) {
            est.fitted_levels.push_back(static_cast<int>(n));
            xs.push_back(static_cast<double>(n) * std::log(2.0));
            ys.push_back(std::log(norms[n]));
        }
    }
    if (xs.size() < 3)
        throw InsufficientDataError("Besov fit needs at least 3 levels with norms above 1e-14, found "
                                    + std::to_string(xs.size()));

    const double count = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    est.gamma_hat = -slope;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (my + slope * (xs[i] - mx));
        ss_res += e * e;
    }
    est.fit_quality = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    for (int n : est.fitted_levels)
        est.sup_form = std::max(est.sup_form, std::exp2(n * est.gamma_hat) * norms[n]);
    return est;
}

BesovEstimate besov_estimate(const FrameCoefficients& coeffs, const Interval& interval, double p, int first_level)
{
    BesovEstimate est = besov_fit(local_norms(coeffs, interval, p), p, first_level);
    est.interval = interval;
    return est;
}

} // namespace jacoframe
