#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace homeo {

enum class ErrorKind {
  DomainError,
  DomainMismatch,
  DepthExceeded,
  InvariantViolation,
  NoOverlap,
  NotFragmentable,
  SupportTooLarge,
  BallsNotDisjoint,
  PreconditionViolated,
  ResolutionTooCoarse,
  NotAContraction,
  NotBasisContracting,
  CoresTooLarge,
  MalformedCertificate,
  ParseError,
  UsageError,
};

std::string_view to_string(ErrorKind kind);

// Every failure in the library surfaces as this exception; callers switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace homeo
