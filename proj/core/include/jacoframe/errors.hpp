#ifndef JACOFRAME_ERRORS_HPP
#define JACOFRAME_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace jacoframe {

/// Broad failure classes. The CLI maps `input` to exit code 2 and
/// `numerical` to exit code 1.
enum class ErrorClass { input, numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, std::string kind, const std::string& what)
        : std::runtime_error(what), class_(cls), kind_(std::move(kind)) {}

    ErrorClass error_class() const noexcept { return class_; }
    /// Short machine-readable tag, e.g. "capacity" or "solver".
    const std::string& kind() const noexcept { return kind_; }

private:
    ErrorClass class_;
    std::string kind_;
};

struct ParameterError : Error {
    explicit ParameterError(const std::string& what)
        : Error(ErrorClass::input, "parameter", what) {}
};

struct CapacityError : Error {
    explicit CapacityError(const std::string& what)
        : Error(ErrorClass::input, "capacity", what) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& what)
        : Error(ErrorClass::input, "domain", what) {}
};

struct InputError : Error {
    explicit InputError(const std::string& what)
        : Error(ErrorClass::input, "input", what) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what)
        : Error(ErrorClass::input, "precondition", what) {}
};

struct UnsupportedParameterError : Error {
    explicit UnsupportedParameterError(const std::string& what)
        : Error(ErrorClass::input, "unsupported_parameter", what) {}
};

struct InsufficientDataError : Error {
    explicit InsufficientDataError(const std::string& what)
        : Error(ErrorClass::numerical, "insufficient_data", what) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& what)
        : Error(ErrorClass::numerical, "numerical", what) {}
};

/// CG did not reach the requested tolerance.
struct SolverError : Error {
    SolverError(const std::string& what, std::vector<double> history)
        : Error(ErrorClass::numerical, "solver", what), residual_history(std::move(history)) {}

    std::vector<double> residual_history;
};

/// The Gram matrix is not numerically positive definite.
struct RankDeficiencyError : Error {
    explicit RankDeficiencyError(const std::string& what)
        : Error(ErrorClass::numerical, "rank_deficiency", what) {}
};

} // namespace jacoframe

#endif // JACOFRAME_ERRORS_HPP
