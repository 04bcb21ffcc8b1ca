#pragma once

#include <stdexcept>
#include <string>

namespace thz {

// Bad user input: malformed files, inconsistent dimensions, invalid config.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Conditioning / convergence failures inside numerical routines.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Refraction argument left [-1,1]; the caller should treat the path as blocked.
class TotalReflectionError : public std::runtime_error {
 public:
  explicit TotalReflectionError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace thz
