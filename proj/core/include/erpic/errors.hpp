#pragma once

#include <stdexcept>
#include <string>

namespace erpic {

/// Invalid or inconsistent configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Runtime numerical failure: non-finite values, envelope violations,
/// reference non-convergence (CLI exit code 3).
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace erpic
