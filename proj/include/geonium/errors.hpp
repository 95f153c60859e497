#ifndef GEONIUM_ERRORS_HPP
#define GEONIUM_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace geonium {

// Invalid or inconsistent input parameters (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Any numerical failure: root finding, quadrature, truncation, singular
// systems (CLI exit code 3).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

class IntegrationError : public NumericError {
public:
    IntegrationError(const std::string& msg, std::complex<double> best)
        : NumericError(msg), best_estimate(best) {}
    std::complex<double> best_estimate;
};

class TruncationError : public NumericError {
public:
    explicit TruncationError(const std::string& msg) : NumericError(msg) {}
};

class SingularMatrixError : public NumericError {
public:
    SingularMatrixError(const std::string& msg, double pivot)
        : NumericError(msg), pivot_magnitude(pivot) {}
    double pivot_magnitude;
};

class SteadyStateError : public NumericError {
public:
    explicit SteadyStateError(const std::string& msg) : NumericError(msg) {}
};

class DegenerateOutcomeError : public NumericError {
public:
    explicit DegenerateOutcomeError(const std::string& msg) : NumericError(msg) {}
};

// Phase-space grid does not contain the state (boundary weight too large).
class GridDomainError : public NumericError {
public:
    explicit GridDomainError(const std::string& msg) : NumericError(msg) {}
};

// Drift matrix has an eigenvalue with non-negative real part (CLI exit 4
// unless --allow-unstable).
class StabilityError : public std::runtime_error {
public:
    explicit StabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace geonium

#endif
