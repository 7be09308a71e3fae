#pragma once

#include <stdexcept>
#include <string>

namespace ptlab {

// Invalid argument to a numerical routine (outside its documented domain).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Eigensolver non-convergence, overflow and similar numerical failures.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ptlab
