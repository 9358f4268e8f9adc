#pragma once

#include <stdexcept>
#include <string>

namespace itkit {

/// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
  Domain,          // argument outside the mathematical domain (T <= 0, E <= 0, ...)
  Representation,  // field in the wrong (position/momentum) representation
  Aliasing,        // density reaches the grid boundary
  Coverage,        // grid too small for the requested object or query point
  Degenerate,      // zero norm, zero derivative, empty input
  Caustic,         // singular trajectory Jacobian
  Support,         // stationary point outside the sampled support
  Singularity,     // coincident points of a singular kernel
  Stability,       // time step too large for the split-operator scheme
  Shape,           // inconsistent dimensions
  Infeasible,      // no physical solution for the given observation
  Numerical,       // iteration failed to converge, self-check failed
  Fit,             // least-squares fit failed
  Config,          // malformed configuration
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw Error(kind, message);
}

}  // namespace itkit
