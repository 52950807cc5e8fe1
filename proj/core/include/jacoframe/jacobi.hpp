#ifndef JACOFRAME_JACOBI_HPP
#define JACOFRAME_JACOBI_HPP

#include <span>
#include <vector>

namespace jacoframe {

/// Exponents of the Jacobi weight (1-x)^alpha (1+x)^beta on (-1,1).
class JacobiParams {
public:
    /// Throws ParameterError unless alpha > -1 and beta > -1.
    JacobiParams(double alpha, double beta);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

    /// min(alpha, beta) >= -1/2, the range where the kernel localization
    /// estimates hold. Frame analysis refuses parameters outside it.
    bool localization_ok() const noexcept { return localization_ok_; }

    bool operator==(const JacobiParams&) const = default;

private:
    double alpha_;
    double beta_;
    bool localization_ok_;
};

/// Three-term recurrence for the orthonormal Jacobi polynomials,
///
///   x p_k(x) = b[k+1] p_{k+1}(x) + a[k] p_k(x) + b[k] p_{k-1}(x),
///
/// with p_{-1} = 0 and p_0 = 1 / b[0], where b[0] = sqrt(total_mass).
/// Holds p_0 .. p_{max_degree}.
struct RecurrenceTable {
    JacobiParams params;
    int max_degree;
    std::vector<double> a;   ///< size max_degree + 1
    std::vector<double> b;   ///< size max_degree + 1, all positive
    double total_mass;       ///< integral of the weight over [-1,1]
    double m0;               ///< sqrt(total_mass)

    /// Number of polynomials the table can evaluate (max_degree + 1).
    int capacity() const noexcept { return max_degree + 1; }
};

RecurrenceTable build_recurrence(const JacobiParams& params, int max_degree);

/// p_0(x) .. p_{n-1}(x). Throws CapacityError when n > table.capacity().
std::vector<double> eval_all(const RecurrenceTable& table, int n, double x);

/// Writes p_0(x) .. p_{out.size()-1}(x) into out without allocating.
void eval_all_into(const RecurrenceTable& table, double x, std::span<double> out);

/// sum_k coeffs[k] p_k(x).
double eval_series(const RecurrenceTable& table, std::span<const double> coeffs, double x);

/// Christoffel-Darboux kernel K_m(x,t) = sum_{k<m} p_k(x) p_k(t), m >= 1.
double cd_kernel(const RecurrenceTable& table, int m, double x, double t);

/// Christoffel function lambda_m(x) = 1 / K_m(x,x).
double christoffel(const RecurrenceTable& table, int m, double x);

/// (sqrt(1-x) + 1/m)^{2a} (sqrt(1+x) + 1/m)^{2b}; the Christoffel function
/// satisfies m lambda_m(x) ~ bar_weight(m, alpha+1/2, beta+1/2, x).
double bar_weight(int m, double a, double b, double x);

} // namespace jacoframe

#endif // JACOFRAME_JACOBI_HPP
