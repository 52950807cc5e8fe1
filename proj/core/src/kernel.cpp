#include "jacoframe/kernel.hpp"

#include "jacoframe/errors.hpp"
#include "jacoframe/measure.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace jacoframe {

std::vector<double> mask_multipliers(const MultiplierMask& mask, double lambda)
{
    if (!(lambda >= 1.0))
        return {};
    const int count = static_cast<int>(std::ceil(lambda));
    std::vector<double> m(count);
    for (int k = 0; k < count; ++k)
        m[k] = mask(k / lambda);
    return m;
}

namespace {

void require_capacity(const RecurrenceTable& table, std::size_t terms)
{
    if (terms > static_cast<std::size_t>(table.capacity()))
        throw CapacityError("kernel needs " + std::to_string(terms) + " polynomials, table capacity is "
                            + std::to_string(table.capacity()));
}

} // namespace

double phi(const RecurrenceTable& table, const MultiplierMask& mask, double lambda, double x, double t)
{
    const auto mult = mask_multipliers(mask, lambda);
    if (mult.empty())
        return 0.0;
    require_capacity(table, mult.size());
    std::vector<double> px(mult.size()), pt(mult.size());
    eval_all_into(table, x, px);
    eval_all_into(table, t, pt);
    double sum = 0.0;
    for (std::size_t k = 0; k < mult.size(); ++k)
        sum += mult[k] * (px[k] * pt[k]);
    return sum;
}

double row_l1(const RecurrenceTable& table, const MultiplierMask& mask, double lambda, double x, int oracle_nodes)
{
    const auto mult = mask_multipliers(mask, lambda);
    if (mult.empty())
        return 0.0;
    require_capacity(table, mult.size());
    const int terms = static_cast<int>(mult.size());
    if (oracle_nodes <= 0)
        oracle_nodes = 4 * terms + 64;

    const RecurrenceTable big = table.max_degree >= oracle_nodes
                                    ? table
                                    : build_recurrence(table.params, oracle_nodes);
    const DiscreteMeasure rule = gauss_rule(big, oracle_nodes);

    std::vector<double> weighted(terms);
    {
        std::vector<double> px(terms);
        eval_all_into(table, x, px);
        for (int k = 0; k < terms; ++k)
            weighted[k] = mult[k] * px[k];
    }
    std::vector<double> p(terms);
    double total = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        eval_all_into(table, rule.nodes[i], p);
        double v = 0.0;
        for (int k = 0; k < terms; ++k)
            v += weighted[k] * p[k];
        total += rule.masses[i] * std::abs(v);
    }
    return total;
}

std::vector<double> uniform_theta_grid(int intervals)
{
    if (intervals < 1)
        throw ParameterError("theta grid needs at least one interval");
    std::vector<double> grid(intervals + 1);
    for (int i = 0; i <= intervals; ++i)
        grid[i] = std::numbers::pi * i / intervals;
    return grid;
}

std::vector<LocalizationRow> localization_profile(const RecurrenceTable& table, const MultiplierMask& mask,
                                                  double lambda, std::span<const double> theta_grid)
{
    if (!table.params.localization_ok())
        throw UnsupportedParameterError("localization estimates need min(alpha, beta) >= -1/2");
    const auto n = static_cast<Eigen::Index>(theta_grid.size());
    if (n == 0)
        return {};

    const auto mult = mask_multipliers(mask, lambda);
    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, n);
    if (!mult.empty()) {
        require_capacity(table, mult.size());
        const auto terms = static_cast<Eigen::Index>(mult.size());
        Eigen::MatrixXd p(n, terms);
        std::vector<double> row(mult.size());
        for (Eigen::Index i = 0; i < n; ++i) {
            eval_all_into(table, std::cos(theta_grid[i]), row);
            for (Eigen::Index k = 0; k < terms; ++k)
                p(i, k) = row[k];
        }
        const Eigen::Map<const Eigen::VectorXd> m(mult.data(), terms);
        values = p * m.asDiagonal() * p.transpose();
    }

    struct Pair {
        double delta;
        double value;
    };
    std::vector<Pair> pairs;
    pairs.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j)
            pairs.push_back({std::abs(theta_grid[i] - theta_grid[j]), std::abs(values(i, j))});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& l, const Pair& r) { return l.delta < r.delta; });

    std::vector<LocalizationRow> rows;
    for (const auto& pr : pairs) {
        if (!rows.empty() && pr.delta - rows.back().delta_theta <= 1e-12)
            rows.back().sup_abs_phi = std::max(rows.back().sup_abs_phi, pr.value);
        else
            rows.push_back({pr.delta, pr.value});
    }
    return rows;
}

double fit_decay_constant(std::span<const LocalizationRow> rows, double lambda, int order, double alpha,
                          double beta)
{
    const double q = std::max(alpha, beta);
    const double scale = std::pow(lambda, 2.0 * q + 2.0);
    double c = 0.0;
    for (const auto& r : rows) {
        const double decay = std::min(1.0, std::pow(lambda * r.delta_theta, -(q + order + 0.5)));
        c = std::max(c, r.sup_abs_phi / (scale * decay));
    }
    return c;
}

double tail_sup(std::span<const LocalizationRow> rows, double min_delta)
{
    double s = 0.0;
    for (const auto& r : rows)
        if (r.delta_theta >= min_delta - 1e-12)
            s = std::max(s, r.sup_abs_phi);
    return s;
}

} // namespace jacoframe
