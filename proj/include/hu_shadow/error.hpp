#pragma once

#include <stdexcept>
#include <string>

namespace hu_shadow {

/// Raised when a construction's preconditions do not hold for the data it
/// was given, e.g. stated rates that do not bound the map.
class HypothesisError : public std::runtime_error {
 public:
  explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by scenario loading for malformed or invalid configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hu_shadow
