#include "homeo/error.hpp"

#include <string>

namespace homeo {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::NoOverlap: return "NoOverlap";
    case ErrorKind::NotFragmentable: return "NotFragmentable";
    case ErrorKind::SupportTooLarge: return "SupportTooLarge";
    case ErrorKind::BallsNotDisjoint: return "BallsNotDisjoint";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorKind::NotAContraction: return "NotAContraction";
    case ErrorKind::NotBasisContracting: return "NotBasisContracting";
    case ErrorKind::CoresTooLarge: return "CoresTooLarge";
    case ErrorKind::MalformedCertificate: return "MalformedCertificate";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace homeo
