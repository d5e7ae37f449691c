#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace simap {

using Index = std::int64_t;

/// Invalid arguments or violated preconditions (CLI exit code 2).
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// File and format errors (CLI exit code 3).
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Numeric failures: non-convergence, PSD violations, indefinite factors
/// where a PSD path is required (CLI exit code 4). Carries the offending
/// minimum eigenvalue when one is known.
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string& what,
                          double lambda_min = std::numeric_limits<double>::quiet_NaN())
        : std::runtime_error(what), lambda_min_(lambda_min) {}

    double lambda_min() const { return lambda_min_; }

  private:
    double lambda_min_;
};

}  // namespace simap
