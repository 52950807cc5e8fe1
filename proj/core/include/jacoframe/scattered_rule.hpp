#ifndef JACOFRAME_SCATTERED_RULE_HPP
#define JACOFRAME_SCATTERED_RULE_HPP

#include "jacoframe/gram.hpp"
#include "jacoframe/jacobi.hpp"
#include "jacoframe/measure.hpp"
#include "jacoframe/point_set.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace jacoframe {

struct RuleOptions {
    double cg_tolerance = 1e-14;
    int max_iter = 0;            ///< 0 selects 4 * (degree + 1)
};

struct RuleResult {
    DiscreteMeasure rule;        ///< nodes ascending in x, diagnostics filled
    GramSystem system;
    std::vector<std::string> warnings;
};

/// Quadrature weights on scattered nodes exact for polynomials of degree
/// `degree` against the Jacobi measure.
///
/// Each node z carries the auxiliary mass lambda_n(z) (Christoffel function
/// at the requested degree n). With G_jk = sum_z lambda_n(z) p_j(z) p_k(z),
/// j,k = 0..n, and G b = e_0 solved by preconditioned CG, the weights are
///
///   w_z = m0 lambda_n(z) sum_j b_j p_j(z).
///
/// Throws CapacityError when the table cannot evaluate p_n, and the CG
/// errors of conjugate_gradient.
RuleResult build_rule(const RecurrenceTable& table, const ScatteredSet& set, int degree,
                      const RuleOptions& options = {});

/// Spectral norm of I - A with A_kl = sum_z w_z p_k(z) p_l(z) for
/// k, l = 0 .. floor(degree / 2). Zero iff the rule integrates every
/// product p_k p_l of total degree <= degree exactly.
double verify_rule(const RecurrenceTable& table, const DiscreteMeasure& rule, int degree);

/// Min and max over `trials` random P in Pi_{floor(a m)} (standard normal
/// coefficients in the orthonormal basis) of
///
///   sum_z lambda_m(z) |P(z)| / int |P| dmu,
///
/// the denominator taken from a dense Gauss rule. Normals come from
/// Box-Muller on the same portable uniform stream as random_points.
std::pair<double, double> mz_ratio(const RecurrenceTable& table, const ScatteredSet& set, int m, double a,
                                   int trials, std::uint64_t seed);

/// True iff w_z <= lambda_n(z) (1 + 1e-8) at every node, with
/// n = christoffel_index, or floor(exactness_degree / 2) when it is 0.
/// Throws PreconditionError when some weight is not positive.
bool weight_bound_check(const RecurrenceTable& table, const DiscreteMeasure& rule, int christoffel_index = 0);

/// Basis values p_0 .. p_{cols-1} at each node (rows).
BasisMatrix basis_matrix(const RecurrenceTable& table, std::span<const double> nodes, int cols);

} // namespace jacoframe

#endif // JACOFRAME_SCATTERED_RULE_HPP
