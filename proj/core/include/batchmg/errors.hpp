#pragma once

#include <stdexcept>
#include <string>

namespace batchmg {

// Invalid user-facing input: malformed config, out-of-range index, bad dims.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A documented pre/postcondition between components was violated at runtime.
class ContractError : public std::runtime_error {
 public:
  explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: non-finite inputs, solver did not converge.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed collected data (e.g. negative visit counts).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace batchmg
