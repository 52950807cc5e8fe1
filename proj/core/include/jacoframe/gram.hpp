#ifndef JACOFRAME_GRAM_HPP
#define JACOFRAME_GRAM_HPP

#include <Eigen/Core>

#include <span>
#include <vector>

namespace jacoframe {

/// Row-major table of basis values: row i holds p_0 .. p_{cols-1} at node i.
using BasisMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// sum_i weights[i] * v_i v_i^T over the first `size` columns of `basis`.
///
/// Node contributions are accumulated in fixed blocks of consecutive nodes;
/// block partial sums are combined with Kahan compensation in node order.
/// The result depends only on the inputs, not on the thread count.
Eigen::MatrixXd weighted_gram(const BasisMatrix& basis, std::span<const double> weights, Eigen::Index size);

struct CgOptions {
    double tolerance = 1e-14;  ///< on ||G b - e||_2 / ||e||_2
    int max_iter = 0;          ///< 0 selects 4 * (n + 1)
};

struct CgResult {
    Eigen::VectorXd solution;
    int iterations = 0;
    double residual = 0.0;     ///< relative, recursively updated
    std::vector<double> history;
};

/// Conjugate gradients with Jacobi (diagonal) preconditioning for
/// symmetric positive definite G. Throws RankDeficiencyError on
/// nonpositive curvature or a nonpositive diagonal, and SolverError (with
/// the residual history) when the tolerance is not met in max_iter steps.
CgResult conjugate_gradient(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& rhs, const CgOptions& options);

/// Ratio of the extreme eigenvalues of a symmetric matrix. Below 512 rows a
/// full eigenvalue decomposition is used; otherwise power iteration for the
/// largest and Cholesky-based inverse iteration for the smallest. Returns
/// +inf when the matrix is not positive definite.
double condition_estimate(const Eigen::MatrixXd& matrix);

/// Spectral norm of a symmetric matrix.
double symmetric_norm2(const Eigen::MatrixXd& matrix);

/// Gram system of the scattered quadrature construction.
struct GramSystem {
    int degree = 0;
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
    Eigen::VectorXd solution;
    double residual_norm = 0.0;   ///< ||G b - e||_2, recomputed after the solve
    double condition_estimate = 0.0;
    int iterations = 0;
    std::vector<double> residual_history;
};

} // namespace jacoframe

#endif // JACOFRAME_GRAM_HPP
