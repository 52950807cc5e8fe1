#include "jacoframe/mask.hpp"

#include "jacoframe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace jacoframe {

std::string to_string(MaskKind kind)
{
    switch (kind) {
    case MaskKind::lowpass_h: return "lowpass";
    case MaskKind::bandpass_g: return "bandpass";
    case MaskKind::indicator: return "indicator";
    }
    return "unknown";
}

MaskKind parse_mask_kind(const std::string& name)
{
    if (name == "lowpass" || name == "h")
        return MaskKind::lowpass_h;
    if (name == "bandpass" || name == "g")
        return MaskKind::bandpass_g;
    if (name == "indicator")
        return MaskKind::indicator;
    throw ParameterError("unknown mask kind '" + name + "' (expected lowpass, bandpass or indicator)");
}

namespace {

constexpr int variation_samples = 10000;
constexpr double variation_span = 1.25;

double estimate_variation(const std::function<double(double)>& f, int order)
{
    const int derivative = std::max(order - 1, 0);
    const double step = variation_span / (variation_samples - 1);
    std::vector<double> v(variation_samples);
    for (int i = 0; i < variation_samples; ++i)
        v[i] = f(i * step);
    for (int d = 0; d < derivative; ++d) {
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            v[i] = (v[i + 1] - v[i]) / step;
        v.pop_back();
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        total += std::abs(v[i + 1] - v[i]);
    return total;
}

double binomial(int n, int k)
{
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// C(2S+1, j) for j = S+1 .. 2S+1.
std::vector<double> smoothstep_binomials(int order)
{
    std::vector<double> c;
    for (int j = order + 1; j <= 2 * order + 1; ++j)
        c.push_back(binomial(2 * order + 1, j));
    return c;
}

// Bernstein form: sum_{j>S} C(2S+1, j) s^j (1-s)^{2S+1-j}. Every term is
// nonnegative, so small values keep their relative accuracy.
double smoothstep_bernstein(const std::vector<double>& binomials, int order, double s)
{
    if (s <= 0.0)
        return 0.0;
    if (s >= 1.0)
        return 1.0;
    const int degree = 2 * order + 1;
    double total = 0.0;
    for (int j = order + 1; j <= degree; ++j)
        total += binomials[j - order - 1] * std::pow(s, j) * std::pow(1.0 - s, degree - j);
    return total;
}

} // namespace

double smoothstep(int order, double s)
{
    if (order < 0)
        throw ParameterError("smoothstep order must be nonnegative");
    return smoothstep_bernstein(smoothstep_binomials(order), order, s);
}

MultiplierMask::MultiplierMask(MaskKind kind, int order, std::function<double(double)> profile)
    : kind_(kind), order_(order), profile_(std::move(profile)),
      variation_(estimate_variation(profile_, order))
{
    if (order < 1)
        throw ParameterError("mask order must be at least 1");
}

MultiplierMask make_lowpass(int order)
{
    if (order < 1)
        throw ParameterError("lowpass mask order must be at least 1 (got " + std::to_string(order) + ")");
    auto binomials = smoothstep_binomials(order);
    return MultiplierMask(MaskKind::lowpass_h, order, [order, binomials = std::move(binomials)](double t) {
        if (t <= 0.5)
            return 1.0;
        if (t >= 1.0)
            return 0.0;
        return smoothstep_bernstein(binomials, order, 2.0 - 2.0 * t);
    });
}

MultiplierMask make_indicator()
{
    return MultiplierMask(MaskKind::indicator, 1, [](double t) { return (t >= 0.0 && t < 1.0) ? 1.0 : 0.0; });
}

MultiplierMask derive_bandpass(const MultiplierMask& h)
{
    if (h.kind() != MaskKind::lowpass_h)
        throw ParameterError("band-pass masks derive from a low-pass mask, got " + to_string(h.kind()));

    constexpr int samples = 4096;
    for (int i = 0; i <= samples; ++i) {
        const double t = 1.25 * i / samples;
        if (h(t) - h(2.0 * t) < -1e-14)
            throw NumericalError("mask is not nonincreasing: h(t) - h(2t) < 0 at t = " + std::to_string(t));
    }
    return MultiplierMask(MaskKind::bandpass_g, h.order(), [h](double t) {
        return std::sqrt(std::max(0.0, h(t) - h(2.0 * t)));
    });
}

} // namespace jacoframe
