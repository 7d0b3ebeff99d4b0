#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nilgal {

enum class ErrorKind {
  CapExceeded,
  DegreeMismatch,
  NotNormal,
  NotPrime,
  TrivialGroup,
  NotTransitive,
  NotNilpotent,
  InvalidChain,
  QuotientMismatch,
  NotAction,
  VerificationFailed,
  PropertyViolated,
  BudgetExceeded,
  InsufficientData,
  UnknownTheorem,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nilgal
