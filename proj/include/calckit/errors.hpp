#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace calckit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input outside the domain of an operation (mismatched centers, |m| > l, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// Refinement or iteration budget exhausted. Carries the best value reached.
class ToleranceError : public Error {
public:
    ToleranceError(const std::string& what, std::complex<double> best, double err)
        : Error(what), best_estimate(best), error_estimate(err) {}
    std::complex<double> best_estimate;
    double error_estimate;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual,
                     std::vector<double> last = {})
        : Error(what), best_residual(residual), last_iterate(std::move(last)) {}
    double best_residual;
    std::vector<double> last_iterate;
};

// A numerical decision could not be made reliably (zero counts, order checks).
class InconclusiveError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace calckit
