#include "jacoframe/scattered_rule.hpp"

#include "jacoframe/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace jacoframe {

BasisMatrix basis_matrix(const RecurrenceTable& table, std::span<const double> nodes, int cols)
{
    if (cols > table.capacity())
        throw CapacityError("basis of " + std::to_string(cols) + " polynomials exceeds table capacity "
                            + std::to_string(table.capacity()));
    BasisMatrix v(static_cast<Eigen::Index>(nodes.size()), cols);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        eval_all_into(table, nodes[i], std::span<double>(v.row(static_cast<Eigen::Index>(i)).data(), cols));
    return v;
}

RuleResult build_rule(const RecurrenceTable& table, const ScatteredSet& set, int degree, const RuleOptions& options)
{
    if (degree < 1)
        throw ParameterError("quadrature degree must be at least 1");
    if (degree + 1 > table.capacity())
        throw CapacityError("degree " + std::to_string(degree) + " needs a recurrence table of capacity "
                            + std::to_string(degree + 1) + ", got " + std::to_string(table.capacity()));
    if (set.size() == 0)
        throw InputError("empty point set");

    RuleResult out;
    if (set.size() < static_cast<std::size_t>(degree) + 1)
        out.warnings.push_back("only " + std::to_string(set.size()) + " points for degree " + std::to_string(degree)
                               + "; the Gram matrix is singular unless there are at least degree + 1 points");

    const auto clock_start = std::chrono::steady_clock::now();

    std::vector<double> nodes(set.xs.rbegin(), set.xs.rend());
    const int cols = degree + 1;
    const BasisMatrix basis = basis_matrix(table, nodes, cols);
    const auto count = static_cast<Eigen::Index>(nodes.size());

    std::vector<double> christoffel_mass(nodes.size());
    for (Eigen::Index i = 0; i < count; ++i)
        christoffel_mass[i] = 1.0 / basis.row(i).head(degree).squaredNorm();

    GramSystem& sys = out.system;
    sys.degree = degree;
    sys.matrix = weighted_gram(basis, christoffel_mass, cols);
    sys.rhs = Eigen::VectorXd::Unit(cols, 0);

    CgOptions cg;
    cg.tolerance = options.cg_tolerance;
    cg.max_iter = options.max_iter > 0 ? options.max_iter : 4 * cols;
    CgResult solved = conjugate_gradient(sys.matrix, sys.rhs, cg);

    const Eigen::VectorXd combination = basis * solved.solution;
    DiscreteMeasure& rule = out.rule;
    rule.nodes = std::move(nodes);
    rule.masses.resize(rule.nodes.size());
    for (Eigen::Index i = 0; i < count; ++i)
        rule.masses[i] = table.m0 * christoffel_mass[i] * combination[i];
    rule.exactness_degree = degree;

    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();

    sys.solution = std::move(solved.solution);
    sys.iterations = solved.iterations;
    sys.residual_history = std::move(solved.history);
    sys.residual_norm = (sys.matrix * sys.solution - sys.rhs).norm();
    sys.condition_estimate = condition_estimate(sys.matrix);

    MeasureDiagnostics diag;
    diag.condition = sys.condition_estimate;
    diag.positive_count = static_cast<int>(std::count_if(rule.masses.begin(), rule.masses.end(),
                                                         [](double w) { return w > 0.0; }));
    for (double w : rule.masses)
        diag.total_variation += std::abs(w);
    diag.cg_residual = sys.residual_norm;
    diag.cg_iters = sys.iterations;
    diag.wall_time_seconds = elapsed;
    diag.verify_error = verify_rule(table, rule, degree);
    rule.diagnostics = diag;
    return out;
}

double verify_rule(const RecurrenceTable& table, const DiscreteMeasure& rule, int degree)
{
    if (degree < 0)
        throw ParameterError("verification degree must be nonnegative");
    if (rule.nodes.size() != rule.masses.size())
        throw InputError("rule has mismatched node and weight counts");
    const int cols = degree / 2 + 1;
    const BasisMatrix basis = basis_matrix(table, rule.nodes, cols);
    Eigen::MatrixXd deviation = weighted_gram(basis, rule.masses, cols);
    deviation = Eigen::MatrixXd::Identity(cols, cols) - deviation;
    return symmetric_norm2(deviation);
}

std::pair<double, double> mz_ratio(const RecurrenceTable& table, const ScatteredSet& set, int m, double a,
                                   int trials, std::uint64_t seed)
{
    const int poly_degree = static_cast<int>(std::floor(a * m));
    if (poly_degree < 1)
        throw ParameterError("mz_ratio needs floor(a m) >= 1");
    if (trials < 1)
        throw ParameterError("mz_ratio needs at least one trial");
    const int terms = poly_degree + 1;
    if (std::max(m, terms) > table.capacity())
        throw CapacityError("mz_ratio needs a table of capacity " + std::to_string(std::max(m, terms)));

    const int oracle_nodes = 4 * terms + 64;
    const RecurrenceTable big = table.max_degree >= oracle_nodes ? table : build_recurrence(table.params, oracle_nodes);
    const DiscreteMeasure oracle = gauss_rule(big, oracle_nodes);

    std::vector<double> nodes(set.xs.rbegin(), set.xs.rend());
    const int basis_cols = std::max(m, terms);
    const BasisMatrix on_set = basis_matrix(table, nodes, basis_cols);
    const BasisMatrix on_oracle = basis_matrix(table, oracle.nodes, terms);
    Eigen::VectorXd lam(on_set.rows());
    for (Eigen::Index i = 0; i < on_set.rows(); ++i)
        lam[i] = 1.0 / on_set.row(i).head(m).squaredNorm();
    const Eigen::Map<const Eigen::VectorXd> oracle_mass(oracle.masses.data(), oracle_nodes);

    const std::vector<double> normals = standard_normals(static_cast<std::size_t>(trials) * terms, seed);

    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Eigen::Map<const Eigen::VectorXd> coeffs(normals.data() + static_cast<std::size_t>(t) * terms, terms);
        const double discrete = lam.dot((on_set.leftCols(terms) * coeffs).cwiseAbs());
        const double continuous = oracle_mass.dot((on_oracle * coeffs).cwiseAbs());
        const double ratio = discrete / continuous;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    return {lo, hi};
}

bool weight_bound_check(const RecurrenceTable& table, const DiscreteMeasure& rule, int christoffel_index)
{
    for (std::size_t i = 0; i < rule.masses.size(); ++i)
        if (!(rule.masses[i] > 0.0))
            throw PreconditionError("weight bound applies to positive rules; weight " + std::to_string(i)
                                    + " is " + std::to_string(rule.masses[i]));
    const int n = christoffel_index > 0 ? christoffel_index : rule.exactness_degree / 2;
    if (n < 1)
        throw ParameterError("weight bound needs Christoffel index >= 1");
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        if (rule.masses[i] > christoffel(table, n, rule.nodes[i]) * (1.0 + 1e-8))
            return false;
    return true;
}

} // namespace jacoframe
