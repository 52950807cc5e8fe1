#include "jacoframe/gram.hpp"

#include "jacoframe/errors.hpp"
#include "jacoframe/parallel.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace jacoframe {

namespace {

constexpr Eigen::Index node_block = 64;
constexpr Eigen::Index column_panel = 128;

} // namespace

Eigen::MatrixXd weighted_gram(const BasisMatrix& basis, std::span<const double> weights, Eigen::Index size)
{
    const Eigen::Index nodes = basis.rows();
    if (static_cast<Eigen::Index>(weights.size()) != nodes)
        throw InputError("weighted_gram: " + std::to_string(weights.size()) + " weights for "
                         + std::to_string(nodes) + " nodes");
    if (size > basis.cols())
        throw CapacityError("weighted_gram: requested " + std::to_string(size) + " columns of "
                            + std::to_string(basis.cols()));

    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(size, size);
    if (size == 0)
        return gram;
    const Eigen::Map<const Eigen::VectorXd> w(weights.data(), nodes);
    const Eigen::Index panels = (size + column_panel - 1) / column_panel;

    parallel_for(static_cast<std::size_t>(panels), [&](std::size_t panel) {
        const Eigen::Index c0 = static_cast<Eigen::Index>(panel) * column_panel;
        const Eigen::Index pw = std::min(column_panel, size - c0);
        const Eigen::Index rows = size - c0;

        // Rows c0.. of columns c0..c0+pw, accumulated with compensation.
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(rows, pw);
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(rows, pw);
        Eigen::MatrixXd part(rows, pw);
        Eigen::MatrixXd scaled;
        for (Eigen::Index start = 0; start < nodes; start += node_block) {
            const Eigen::Index len = std::min(node_block, nodes - start);
            const auto vb = basis.block(start, c0, len, rows);
            scaled = w.segment(start, len).asDiagonal() * vb.leftCols(pw);
            part.noalias() = vb.transpose() * scaled;
            for (Eigen::Index j = 0; j < pw; ++j) {
                double* s = sum.col(j).data();
                double* c = comp.col(j).data();
                const double* p = part.col(j).data();
                for (Eigen::Index k = j; k < rows; ++k) {
                    const double y = p[k] - c[k];
                    const double t = s[k] + y;
                    c[k] = (t - s[k]) - y;
                    s[k] = t;
                }
            }
        }
        for (Eigen::Index j = 0; j < pw; ++j)
            for (Eigen::Index k = j; k < rows; ++k) {
                gram(c0 + k, c0 + j) = sum(k, j);
            }
    });
    gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();
    return gram;
}

CgResult conjugate_gradient(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& rhs, const CgOptions& options)
{
    const Eigen::Index n = matrix.rows();
    const int max_iter = options.max_iter > 0 ? options.max_iter : 4 * static_cast<int>(n);

    Eigen::VectorXd inv_diag(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = matrix(i, i);
        if (!(d > 0.0))
            throw RankDeficiencyError("Gram matrix has a nonpositive diagonal entry at index " + std::to_string(i)
                                      + "; lower the degree or add points");
        inv_diag[i] = 1.0 / d;
    }

    CgResult result;
    result.solution = Eigen::VectorXd::Zero(n);
    const double rhs_norm = rhs.norm();
    if (rhs_norm == 0.0)
        return result;

    Eigen::VectorXd r = rhs;
    Eigen::VectorXd z = inv_diag.cwiseProduct(r);
    Eigen::VectorXd p = z;
    Eigen::VectorXd q(n);
    double rz = r.dot(z);
    result.residual = 1.0;
    result.history.push_back(1.0);

    for (int it = 1; it <= max_iter; ++it) {
        q.noalias() = matrix * p;
        const double curvature = p.dot(q);
        if (!(curvature > 0.0))
            throw RankDeficiencyError("conjugate gradients met nonpositive curvature at iteration "
                                      + std::to_string(it)
                                      + "; the Gram matrix is not positive definite (lower the degree or add points)");
        const double step = rz / curvature;
        result.solution.noalias() += step * p;
        r.noalias() -= step * q;
        result.residual = r.norm() / rhs_norm;
        result.history.push_back(result.residual);
        result.iterations = it;
        if (result.residual <= options.tolerance)
            return result;
        z = inv_diag.cwiseProduct(r);
        const double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
    throw SolverError("conjugate gradients did not reach relative residual "
                          + std::to_string(options.tolerance) + " in " + std::to_string(max_iter)
                          + " iterations (last " + std::to_string(result.residual) + ")",
                      std::move(result.history));
}

double condition_estimate(const Eigen::MatrixXd& matrix)
{
    const Eigen::Index n = matrix.rows();
    if (n == 0)
        return 1.0;
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (n < 512) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(matrix, Eigen::EigenvaluesOnly);
        if (eig.info() != Eigen::Success)
            return inf;
        const double lo = eig.eigenvalues().minCoeff();
        const double hi = eig.eigenvalues().maxCoeff();
        return lo > 0.0 ? hi / lo : inf;
    }

    Eigen::LLT<Eigen::MatrixXd> chol(matrix);
    if (chol.info() != Eigen::Success)
        return inf;

    auto iterate = [&](auto&& apply) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i)
            v[i] = 1.0 + static_cast<double>(i % 7) / 7.0;
        v.normalize();
        double value = 0.0;
        for (int it = 0; it < 300; ++it) {
            Eigen::VectorXd next = apply(v);
            const double estimate = v.dot(next);
            const double norm = next.norm();
            if (norm == 0.0)
                return 0.0;
            v = next / norm;
            if (it > 0 && std::abs(estimate - value) <= 1e-10 * std::abs(estimate))
                return estimate;
            value = estimate;
        }
        return value;
    };
    const double hi = iterate([&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return matrix * v; });
    const double inv_lo = iterate([&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return chol.solve(v); });
    return inv_lo > 0.0 ? hi * inv_lo : inf;
}

double symmetric_norm2(const Eigen::MatrixXd& matrix)
{
    if (matrix.size() == 0)
        return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(matrix, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success)
        throw NumericalError("eigenvalue computation failed while measuring a matrix norm");
    return eig.eigenvalues().cwiseAbs().maxCoeff();
}

} // namespace jacoframe
