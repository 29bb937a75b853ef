#pragma once

#include <stdexcept>
#include <string>

namespace angint {

/// Argument outside the mathematical domain of a function (k >= 1 for K, x <= 0 for Gamma, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A truncated series did not meet its SeriesPolicy within max_terms.
class series_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Result exceeds the representable double range.
class saturation_error : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Request outside what an operation supports (dimension > 4, unknown id, ...).
class unsupported_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace angint
