#pragma once

#include <stdexcept>
#include <string>

namespace diskweyl {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept = 0;
};

/// A precondition on the arguments was violated (bad order, out-of-range
/// argument, cost guard, malformed configuration).
class invalid_input : public error {
 public:
  using error::error;
  const char* kind() const noexcept override { return "invalid_input"; }
};

/// A numerical procedure failed to reach its target accuracy: quadrature
/// node cap hit, root bracket lost, iteration budget exhausted.
class numerical_failure : public error {
 public:
  using error::error;
  const char* kind() const noexcept override { return "numerical_failure"; }
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw invalid_input(message);
}

}  // namespace detail
}  // namespace diskweyl
