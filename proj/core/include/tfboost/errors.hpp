#pragma once

#include <stdexcept>
#include <string>

namespace tfboost {

// Error taxonomy used across the library. The CLI maps these onto exit
// codes: config/usage -> 1, data-shaped problems -> 2, numeric -> 3.

struct DimensionError : std::runtime_error {
  explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct ConstraintError : std::runtime_error {
  explicit ConstraintError(const std::string& what) : std::runtime_error(what) {}
};

struct RankError : std::runtime_error {
  explicit RankError(const std::string& what) : std::runtime_error(what) {}
};

struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tfboost
