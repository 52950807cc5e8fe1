#ifndef JACOFRAME_FRAME_HPP
#define JACOFRAME_FRAME_HPP

#include "jacoframe/jacobi.hpp"
#include "jacoframe/mask.hpp"
#include "jacoframe/measure.hpp"

#include <limits>
#include <span>
#include <vector>

namespace jacoframe {

/// One dyadic level of the tight frame: tau_n^* sampled on the support of a
/// quadrature measure exact on polynomials of degree 2^{n+1} - 1.
struct FrameLevel {
    int level = 0;
    double lambda = 1.0;              ///< 2^level
    DiscreteMeasure measure;
    std::vector<double> coefficients; ///< tau_n^*(z) for z in measure.nodes
};

struct FrameCoefficients {
    JacobiParams params;
    int mask_order = 0;
    /// f^(0): the constant component, which no band-pass level carries.
    double lowpass0 = 0.0;
    std::vector<FrameLevel> levels;   ///< levels 0 .. N

    int top_level() const noexcept { return static_cast<int>(levels.size()) - 1; }
};

struct Interval {
    double center;
    double radius;

    double lo() const noexcept { return center - radius; }
    double hi() const noexcept { return center + radius; }
};

struct ParsevalReport {
    double lhs;            ///< sum_k f^(k)^2
    double rhs;            ///< sum_n sum_z mass_z tau_n^*(z)^2
    double relative_gap;   ///< |lhs - rhs - lowpass0^2| / lhs, 0 when lhs = 0
};

struct BesovEstimate {
    Interval interval{0.0, 0.0};
    double p = std::numeric_limits<double>::infinity();
    std::vector<double> per_level_norms;
    std::vector<int> fitted_levels;
    double gamma_hat = 0.0;
    double fit_quality = 0.0;  ///< coefficient of determination of the log-linear fit
    double sup_form = 0.0;     ///< max over fitted levels of 2^{n gamma_hat} norm_n
};

/// 2^n-point Gauss rule; exact on polynomials of degree 2^{n+1} - 1.
DiscreteMeasure level_measure(const RecurrenceTable& table, int level);

/// Coefficients mask(k/lambda) fhat[k]; zero vector for lambda < 1.
/// Throws CapacityError when fhat has fewer than ceil(lambda) entries.
std::vector<double> sigma_star(const MultiplierMask& mask, double lambda, std::span<const double> fhat);

/// Orthonormal-basis coefficients (k < ceil(lambda)) of
/// sigma_lambda(nu; f) = sum_z w_z f(z) Phi_lambda(., z).
std::vector<double> sigma_discrete(const RecurrenceTable& table, const MultiplierMask& mask, double lambda,
                                   const DiscreteMeasure& measure, std::span<const double> fvals);

/// tau_n^* = sigma_star(g, 2^n, fhat) on levels 0..top_level, sampled at
/// level_measure(n). `lowpass` must be a low-pass mask; g is derived from
/// it. Requires fhat.size() >= 2^top_level and table.max_degree >= 2^top_level.
FrameCoefficients analyze(const RecurrenceTable& table, const MultiplierMask& lowpass, int top_level,
                          std::span<const double> fhat);

/// Same, with caller-supplied level measures; measures[n] must be exact on
/// degree 2^{n+1} - 1.
FrameCoefficients analyze(const RecurrenceTable& table, const MultiplierMask& lowpass,
                          std::span<const double> fhat, std::span<const DiscreteMeasure> measures);

/// Coefficients (k < 2^N) of lowpass0 p_0 + sum_n sum_z mass_z tau_n^*(z) Phi_{2^n}(g; ., z).
/// Equals h(k / 2^N) fhat[k], so inputs of degree <= 2^{N-1} are recovered.
std::vector<double> synthesize(const RecurrenceTable& table, const MultiplierMask& lowpass,
                               const FrameCoefficients& coeffs);

ParsevalReport parseval_gap(const FrameCoefficients& coeffs, std::span<const double> fhat);

/// Per level: (sum_{z in I} mass_z |tau_n^*(z)|^p)^{1/p}, or the max for
/// p = inf. Nodes on the boundary of the closed interval count as inside.
std::vector<double> local_norms(const FrameCoefficients& coeffs, const Interval& interval, double p);

/// Negative slope of the least-squares line through (n log 2, log norm_n)
/// over levels n >= first_level with norm_n > 1e-14. Throws
/// InsufficientDataError with fewer than three such levels.
BesovEstimate besov_fit(std::span<const double> norms, double p, int first_level = 0);

/// local_norms followed by besov_fit.
BesovEstimate besov_estimate(const FrameCoefficients& coeffs, const Interval& interval, double p,
                             int first_level = 0);

} // namespace jacoframe

#endif // JACOFRAME_FRAME_HPP
