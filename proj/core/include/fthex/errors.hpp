#pragma once

#include <stdexcept>
#include <string>

namespace fthex {

/// Malformed or unknown configuration (unknown keys, bad model ids, ...).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: ill-conditioned Gram matrix, integration blowup.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Infeasible or unsupported allocation request (rank loss, second failure).
struct AllocationError : std::runtime_error {
  explicit AllocationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fthex
