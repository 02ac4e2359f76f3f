#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace igusa {

/// Base of every error raised by the library. `kind()` is the stable tag used
/// in structured CLI error objects.
class Error : public std::runtime_error {
 public:
  Error(std::string_view kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  std::string_view kind() const noexcept { return kind_; }

 private:
  std::string_view kind_;
};

/// Operands built over different (q, cyclotomic level) pairs, or invalid
/// configuration values.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("config", what) {}
};

/// Evaluation outside the domain of a function (pole at t = 0, a0 = 0, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

/// A lattice sum or measure that does not converge.
class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& what) : Error("divergence", what) {}
};

/// Work would exceed a configured budget.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error("resource", what) {}
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error("precondition", what) {}
};

/// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse", what) {}
};

}  // namespace igusa
