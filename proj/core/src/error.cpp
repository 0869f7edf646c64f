#include "crpssa/error.hpp"

#include <cmath>

namespace crpssa::detail {

void throw_input(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

void require_finite(const char* where, double value) {
  if (!std::isfinite(value)) {
    throw InputError(std::string(where) + ": non-finite argument");
  }
}

}  // namespace crpssa::detail
