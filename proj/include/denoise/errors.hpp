#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace denoise {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatch, bad index, parameters outside their domain.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A strategy outside the client's feasibility box [0, epsilon].
class InfeasibleStrategy : public Error {
public:
    using Error::Error;
};

/// Best-response iteration hit its sweep cap. Carries the last iterate.
class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, std::vector<double> last_profile)
        : Error(what), last_profile_(std::move(last_profile)) {}

    const std::vector<double>& last_profile() const noexcept { return last_profile_; }

private:
    std::vector<double> last_profile_;
};

/// Welfare ratio is undefined because welfare at equilibrium is not positive.
class RatioUndefined : public Error {
public:
    RatioUndefined(const std::string& what, double welfare_swm, double welfare_ne)
        : Error(what), welfare_swm_(welfare_swm), welfare_ne_(welfare_ne) {}

    double welfare_swm() const noexcept { return welfare_swm_; }
    double welfare_ne() const noexcept { return welfare_ne_; }

private:
    double welfare_swm_;
    double welfare_ne_;
};

/// Bad experiment configuration (schema violation, degenerate sampling distribution, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Enumeration budget exceeded in the brute-force oracle.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace denoise
