#pragma once

#include <stdexcept>
#include <string>

namespace dipolebound {

enum class ErrorKind {
  Config,
  Domain,
  SingularOrder,
  Closure,
  NoSolution,
  Contract,
  Io,
};

/// Base of every exception thrown by the library. The C API maps `kind()`
/// onto its status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error(ErrorKind::Config, message) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message) : Error(ErrorKind::Domain, message) {}
};

/// A recurrence denominator vanished at a specific order.
class SingularOrderError : public Error {
 public:
  SingularOrderError(int order, const std::string& message)
      : Error(ErrorKind::SingularOrder, message), order_(order) {}

  int order() const noexcept { return order_; }

 private:
  int order_;
};

class ClosureError : public Error {
 public:
  explicit ClosureError(const std::string& message) : Error(ErrorKind::Closure, message) {}
};

class NoSolutionError : public Error {
 public:
  explicit NoSolutionError(const std::string& message) : Error(ErrorKind::NoSolution, message) {}
};

class ContractError : public Error {
 public:
  explicit ContractError(const std::string& message) : Error(ErrorKind::Contract, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error(ErrorKind::Io, message) {}
};

}  // namespace dipolebound
