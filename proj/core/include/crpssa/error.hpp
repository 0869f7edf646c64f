#pragma once

#include <stdexcept>
#include <string>

namespace crpssa {

// Bad arguments, malformed files, failed validation. The CLI maps these to
// exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine could not deliver its accuracy contract (quadrature
// did not converge, series budget exhausted, ...). Exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a density is evaluated at a point where it diverges.
class SingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

namespace detail {

[[noreturn]] void throw_input(const std::string& where, const std::string& what);
void require_finite(const char* where, double value);

}  // namespace detail

}  // namespace crpssa
