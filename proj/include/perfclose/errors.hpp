#pragma once

#include <stdexcept>
#include <string>

namespace perfclose {

/// Operands built over different primes were combined.
class ModulusMismatch : public std::invalid_argument {
 public:
  explicit ModulusMismatch(const std::string& what) : std::invalid_argument(what) {}
};

class DivisionByZero : public std::domain_error {
 public:
  explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};

/// A root level (or an exponent it implies) went past the configured cap.
class LevelCapExceeded : public std::overflow_error {
 public:
  explicit LevelCapExceeded(const std::string& what) : std::overflow_error(what) {}
};

/// Precondition of an algebraic operation was violated.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace perfclose
