#pragma once

#include <stdexcept>
#include <string>

namespace magt {

// Bad input documents, malformed configs, schema violations. CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally valid instance outside a solver's supported range
// (e.g. Nash enumeration on >2 players). Distinct from parse failures.
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace magt
