#pragma once

#include <stdexcept>
#include <string>

namespace subshift {

// Error kinds the CLI maps to distinct exit codes.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct NoGlobalPathError : std::runtime_error {
  explicit NoGlobalPathError(const std::string& what) : std::runtime_error(what) {}
};

struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an approximant seed or a generated dictionary fails its
// admissibility gate.
struct GateError : std::runtime_error {
  explicit GateError(const std::string& what) : std::runtime_error(what) {}
};

struct IterationCapError : NumericError {
  explicit IterationCapError(const std::string& what) : NumericError(what) {}
};

struct SearchExhaustedError : GateError {
  explicit SearchExhaustedError(const std::string& what) : GateError(what) {}
};

}  // namespace subshift
