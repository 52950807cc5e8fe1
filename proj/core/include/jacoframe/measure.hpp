#ifndef JACOFRAME_MEASURE_HPP
#define JACOFRAME_MEASURE_HPP

#include "jacoframe/jacobi.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace jacoframe {

struct MeasureDiagnostics {
    double condition = 0.0;       ///< condition estimate of the Gram matrix
    int positive_count = 0;       ///< number of strictly positive masses
    double total_variation = 0.0; ///< sum |mass|
    double verify_error = 0.0;    ///< see verify_rule
    double cg_residual = 0.0;
    int cg_iters = 0;
    double wall_time_seconds = 0.0;
};

/// Finitely supported (possibly signed) measure on [-1,1] with a claimed
/// degree of exactness for the Jacobi measure it approximates.
struct DiscreteMeasure {
    std::vector<double> nodes;    ///< strictly increasing, in [-1,1]
    std::vector<double> masses;   ///< same length as nodes
    int exactness_degree = 0;
    std::optional<MeasureDiagnostics> diagnostics;

    std::size_t size() const noexcept { return nodes.size(); }

    /// sum_z mass_z f(z)
    double integrate(const std::function<double(double)>& f) const;

    /// Throws InputError when the node/mass invariants do not hold.
    void validate() const;
};

/// m-point Gauss-Jacobi rule: nodes are the zeros of p_m and each mass is
/// the Christoffel number lambda_m at its node. Exact on polynomials of
/// degree 2m-1. Requires table.max_degree >= m.
DiscreteMeasure gauss_rule(const RecurrenceTable& table, int m);

/// Fourier coefficients int f p_k dmu for k < count, approximated with the
/// `oracle_nodes`-point Gauss rule (default 4 * count). A larger recurrence
/// table is built internally when `table` cannot hold the oracle rule.
std::vector<double> fourier_coeffs(const RecurrenceTable& table,
                                   const std::function<double(double)>& f,
                                   int count, int oracle_nodes = 0);

} // namespace jacoframe

#endif // JACOFRAME_MEASURE_HPP
