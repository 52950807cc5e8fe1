#ifndef JACOFRAME_KERNEL_HPP
#define JACOFRAME_KERNEL_HPP

#include "jacoframe/jacobi.hpp"
#include "jacoframe/mask.hpp"

#include <span>
#include <vector>

namespace jacoframe {

/// mask(k / lambda) for k = 0 .. ceil(lambda) - 1; empty for lambda < 1.
/// Masks vanish on [1, inf), so these are all the nonzero multipliers.
std::vector<double> mask_multipliers(const MultiplierMask& mask, double lambda);

/// Phi_lambda(x,t) = sum_k mask(k/lambda) p_k(x) p_k(t), and 0 for lambda < 1.
double phi(const RecurrenceTable& table, const MultiplierMask& mask, double lambda, double x, double t);

/// Estimate of int |Phi_lambda(x,t)| dmu(t) from an `oracle_nodes`-point
/// Gauss rule (default 4 * ceil(lambda) + 64). The integrand is not a
/// polynomial, so the result is a quadrature estimate, not an exact value.
double row_l1(const RecurrenceTable& table, const MultiplierMask& mask, double lambda, double x,
              int oracle_nodes = 0);

struct LocalizationRow {
    double delta_theta;
    double sup_abs_phi;
};

/// For every distinct separation |theta_i - theta_j| of the grid (grouped
/// at tolerance 1e-12), the largest |Phi_lambda(cos theta_i, cos theta_j)|.
/// Rows are sorted by delta_theta. Throws UnsupportedParameterError when
/// min(alpha, beta) < -1/2.
std::vector<LocalizationRow> localization_profile(const RecurrenceTable& table, const MultiplierMask& mask,
                                                  double lambda, std::span<const double> theta_grid);

/// theta_i = i pi / intervals, i = 0 .. intervals.
std::vector<double> uniform_theta_grid(int intervals);

/// Smallest C with sup_abs_phi <= C lambda^{2q+2} min(1, (lambda dtheta)^{-(q+S+1/2)})
/// over all rows, q = max(alpha, beta).
double fit_decay_constant(std::span<const LocalizationRow> rows, double lambda, int order, double alpha,
                          double beta);

/// Largest sup_abs_phi among rows with delta_theta >= min_delta (minus 1e-12).
double tail_sup(std::span<const LocalizationRow> rows, double min_delta);

} // namespace jacoframe

#endif // JACOFRAME_KERNEL_HPP
