#pragma once

#include <stdexcept>
#include <string>

namespace bfly {

// Input outside the mathematical domain of an operation (zero inverse, negative degree).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid field / parameter configuration (reducible modulus, even n for the tower, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition of an analysis or construction does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Report file could not be read or does not match the expected schema.
class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bfly
