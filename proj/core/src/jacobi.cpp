#include "jacoframe/jacobi.hpp"

#include "jacoframe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jacoframe {

JacobiParams::JacobiParams(double alpha, double beta)
    : alpha_(alpha), beta_(beta), localization_ok_(std::min(alpha, beta) >= -0.5)
{
    if (!(alpha > -1.0) || !(beta > -1.0) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw ParameterError("Jacobi exponents must satisfy alpha > -1 and beta > -1 (got alpha="
                             + std::to_string(alpha) + ", beta=" + std::to_string(beta) + ")");
}

RecurrenceTable build_recurrence(const JacobiParams& params, int max_degree)
{
    if (max_degree < 0)
        throw ParameterError("recurrence degree must be nonnegative");

    const double al = params.alpha();
    const double be = params.beta();
    const double ab = al + be;

    // 2^{ab+1} B(al+1, be+1), exponentiated last.
    const double log_mass = (ab + 1.0) * std::log(2.0) + std::lgamma(al + 1.0)
                            + std::lgamma(be + 1.0) - std::lgamma(ab + 2.0);
    const double mass = std::exp(log_mass);

    RecurrenceTable t{params, max_degree, {}, {}, mass, std::sqrt(mass)};
    t.a.resize(max_degree + 1);
    t.b.resize(max_degree + 1);

    t.b[0] = t.m0;
    t.a[0] = (be - al) / (ab + 2.0);
    for (int k = 1; k <= max_degree; ++k) {
        const double kk = k;
        const double s = 2.0 * kk + ab;
        t.a[k] = (be * be - al * al) / (s * (s + 2.0));
        if (k == 1) {
            // The factor (1 + ab) cancels; this form stays finite at ab = -1.
            t.b[1] = std::sqrt(4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab)));
        } else {
            t.b[k] = std::sqrt(4.0 * kk * (kk + al) * (kk + be) * (kk + ab)
                               / (s * s * (s + 1.0) * (s - 1.0)));
        }
    }
    return t;
}

void eval_all_into(const RecurrenceTable& table, double x, std::span<double> out)
{
    const auto n = out.size();
    if (n > static_cast<std::size_t>(table.capacity()))
        throw CapacityError("requested " + std::to_string(n) + " polynomials but the table holds "
                            + std::to_string(table.capacity()));
    if (n == 0)
        return;
    const double* a = table.a.data();
    const double* b = table.b.data();
    double prev = 0.0;
    double cur = 1.0 / b[0];
    out[0] = cur;
    for (std::size_t k = 1; k < n; ++k) {
        const double next = ((x - a[k - 1]) * cur - b[k - 1] * prev) / b[k];
        prev = cur;
        cur = next;
        out[k] = cur;
    }
}

std::vector<double> eval_all(const RecurrenceTable& table, int n, double x)
{
    if (n < 0)
        throw ParameterError("polynomial count must be nonnegative");
    std::vector<double> out(static_cast<std::size_t>(n));
    eval_all_into(table, x, out);
    return out;
}

double eval_series(const RecurrenceTable& table, std::span<const double> coeffs, double x)
{
    if (coeffs.size() > static_cast<std::size_t>(table.capacity()))
        throw CapacityError("series of length " + std::to_string(coeffs.size())
                            + " exceeds table capacity " + std::to_string(table.capacity()));
    double sum = 0.0;
    double prev = 0.0;
    double cur = 1.0 / table.b[0];
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        sum += coeffs[k] * cur;
        if (k + 1 < coeffs.size()) {
            const double next = ((x - table.a[k]) * cur - table.b[k] * prev) / table.b[k + 1];
            prev = cur;
            cur = next;
        }
    }
    return sum;
}

double cd_kernel(const RecurrenceTable& table, int m, double x, double t)
{
    if (m < 1)
        throw DomainError("Christoffel-Darboux kernel requires m >= 1");
    if (m > table.capacity())
        throw CapacityError("kernel order " + std::to_string(m) + " exceeds table capacity "
                            + std::to_string(table.capacity()));
    double px_prev = 0.0, pt_prev = 0.0;
    double px = 1.0 / table.b[0], pt = px;
    double sum = px * pt;
    for (int k = 1; k < m; ++k) {
        const double nx = ((x - table.a[k - 1]) * px - table.b[k - 1] * px_prev) / table.b[k];
        const double nt = ((t - table.a[k - 1]) * pt - table.b[k - 1] * pt_prev) / table.b[k];
        px_prev = px;
        pt_prev = pt;
        px = nx;
        pt = nt;
        sum += px * pt;
    }
    return sum;
}

double christoffel(const RecurrenceTable& table, int m, double x)
{
    return 1.0 / cd_kernel(table, m, x, x);
}

double bar_weight(int m, double a, double b, double x)
{
    const double inv = 1.0 / m;
    return std::pow(std::sqrt(std::max(0.0, 1.0 - x)) + inv, 2.0 * a)
           * std::pow(std::sqrt(std::max(0.0, 1.0 + x)) + inv, 2.0 * b);
}

} // namespace jacoframe
