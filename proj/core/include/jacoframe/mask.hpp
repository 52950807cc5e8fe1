#ifndef JACOFRAME_MASK_HPP
#define JACOFRAME_MASK_HPP

#include <functional>
#include <string>

namespace jacoframe {

enum class MaskKind { lowpass_h, bandpass_g, indicator };

std::string to_string(MaskKind kind);
/// Accepts "lowpass", "bandpass", "indicator". Throws ParameterError.
MaskKind parse_mask_kind(const std::string& name);

/// Multiplier profile on [0, inf), supported in [0, 1].
///
/// - lowpass_h: 1 on [0, 1/2], 0 on [1, inf), nonincreasing; on [1/2, 1] a
///   degree 2S+1 smoothstep with S vanishing derivatives at both ends.
/// - bandpass_g: sqrt(h(t) - h(2t)), supported in [1/4, 1].
/// - indicator: 1 on [0, 1), 0 beyond; turns Phi into the
///   Christoffel-Darboux kernel.
class MultiplierMask {
public:
    MultiplierMask(MaskKind kind, int order, std::function<double(double)> profile);

    double operator()(double t) const { return profile_(t); }

    MaskKind kind() const noexcept { return kind_; }
    int order() const noexcept { return order_; }

    /// Total variation of the (S-1)-th derivative, estimated from finite
    /// differences on 10^4 samples of [0, 1.25].
    double variation_estimate() const noexcept { return variation_; }

private:
    MaskKind kind_;
    int order_;
    std::function<double(double)> profile_;
    double variation_;
};

MultiplierMask make_lowpass(int order);
MultiplierMask make_indicator();

/// g = sqrt(h - h(2.)). Throws ParameterError unless h is lowpass, and
/// NumericalError when h(t) - h(2t) < -1e-14 at a sampled t.
MultiplierMask derive_bandpass(const MultiplierMask& h);

/// Value at s in [0,1] of the order-S smoothstep (0 at 0, 1 at 1).
double smoothstep(int order, double s);

} // namespace jacoframe

#endif // JACOFRAME_MASK_HPP
