#include "jacoframe/measure.hpp"

#include "jacoframe/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace jacoframe {

double DiscreteMeasure::integrate(const std::function<double(double)>& f) const
{
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        sum += masses[i] * f(nodes[i]);
    return sum;
}

void DiscreteMeasure::validate() const
{
    if (nodes.size() != masses.size())
        throw InputError("measure has " + std::to_string(nodes.size()) + " nodes but "
                         + std::to_string(masses.size()) + " masses");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!(nodes[i] >= -1.0 && nodes[i] <= 1.0))
            throw InputError("measure node " + std::to_string(i) + " lies outside [-1,1]");
        if (i > 0 && !(nodes[i] > nodes[i - 1]))
            throw InputError("measure nodes are not strictly increasing at index " + std::to_string(i));
        if (!std::isfinite(masses[i]))
            throw InputError("measure mass " + std::to_string(i) + " is not finite");
    }
}

namespace {

// One Newton step on p_m at x; returns the correction.
double newton_correction(const RecurrenceTable& t, int m, double x)
{
    double p_prev = 0.0, p = 1.0 / t.b[0];
    double d_prev = 0.0, d = 0.0;
    for (int k = 0; k < m; ++k) {
        const double p_next = ((x - t.a[k]) * p - t.b[k] * p_prev) / t.b[k + 1];
        const double d_next = ((x - t.a[k]) * d + p - t.b[k] * d_prev) / t.b[k + 1];
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    return d != 0.0 ? p / d : 0.0;
}

} // namespace

DiscreteMeasure gauss_rule(const RecurrenceTable& table, int m)
{
    if (m < 1)
        throw ParameterError("Gauss rule needs at least one node");
    if (m > table.max_degree)
        throw CapacityError("Gauss rule with " + std::to_string(m) + " nodes needs a recurrence of degree "
                            + std::to_string(m) + ", table has " + std::to_string(table.max_degree));

    Eigen::VectorXd diag(m);
    Eigen::VectorXd sub(std::max(m - 1, 0));
    for (int k = 0; k < m; ++k)
        diag[k] = table.a[k];
    for (int k = 1; k < m; ++k)
        sub[k - 1] = table.b[k];

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("tridiagonal eigen-solve failed for the " + std::to_string(m)
                             + "-point Gauss rule (alpha=" + std::to_string(table.params.alpha())
                             + ", beta=" + std::to_string(table.params.beta()) + ")");

    DiscreteMeasure rule;
    rule.nodes.resize(m);
    rule.masses.resize(m);
    rule.exactness_degree = 2 * m - 1;
    for (int i = 0; i < m; ++i) {
        double x = solver.eigenvalues()[i];
        const double dx = newton_correction(table, m, x);
        if (std::abs(dx) < 1e-8)
            x -= dx;
        rule.nodes[i] = std::clamp(x, -1.0, 1.0);
    }
    std::sort(rule.nodes.begin(), rule.nodes.end());
    for (int i = 0; i < m; ++i)
        rule.masses[i] = christoffel(table, m, rule.nodes[i]);
    return rule;
}

std::vector<double> fourier_coeffs(const RecurrenceTable& table,
                                   const std::function<double(double)>& f,
                                   int count, int oracle_nodes)
{
    if (count < 0)
        throw ParameterError("coefficient count must be nonnegative");
    if (count > table.capacity())
        throw CapacityError("requested " + std::to_string(count)
                            + " Fourier coefficients, table capacity is " + std::to_string(table.capacity()));
    if (count == 0)
        return {};
    if (oracle_nodes <= 0)
        oracle_nodes = 4 * count;

    const RecurrenceTable big = table.max_degree >= oracle_nodes
                                    ? table
                                    : build_recurrence(table.params, oracle_nodes);
    const DiscreteMeasure rule = gauss_rule(big, oracle_nodes);

    std::vector<double> coeffs(count, 0.0);
    std::vector<double> p(count);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double wf = rule.masses[i] * f(rule.nodes[i]);
        if (wf == 0.0)
            continue;
        eval_all_into(table, rule.nodes[i], p);
        for (int k = 0; k < count; ++k)
            coeffs[k] += wf * p[k];
    }
    return coeffs;
}

} // namespace jacoframe
