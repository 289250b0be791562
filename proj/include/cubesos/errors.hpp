#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubesos {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Raised when an exhaustive enumeration would exceed the configured cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two independent root computations disagreed.
struct RootMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularOperator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Kernel certificate unavailable at this order (LambdaTilde >= 1).
struct NoCertificate : std::runtime_error {
  NoCertificate(const std::string& msg, double lambda_tilde)
      : std::runtime_error(msg), lambda_tilde(lambda_tilde) {}
  double lambda_tilde;
};

struct CertificationFailed : std::runtime_error {
  CertificationFailed(const std::string& msg, std::uint64_t y, double w)
      : std::runtime_error(msg), y(y), weight(w) {}
  std::uint64_t y;
  double weight;
};

}  // namespace cubesos
