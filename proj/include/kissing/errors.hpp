#pragma once

#include <stdexcept>
#include <string>

namespace kissing {

// Value outside the mathematical domain of an operation (negative radicand,
// non-unit point, d < 3, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

class ParseError : public std::invalid_argument {
 public:
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

// Mixing exact and floating-point sphere points.
class ModeError : public std::logic_error {
 public:
  explicit ModeError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace kissing
