#include "splice/errors.hpp"

namespace splice {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::SingularSpecialization: return "SingularSpecialization";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::CollisionError: return "CollisionError";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::UnknownComponent: return "UnknownComponent";
    case ErrorKind::ShadowedName: return "ShadowedName";
    case ErrorKind::InvalidLinkSpec: return "InvalidLinkSpec";
    case ErrorKind::DegenerateSplice: return "DegenerateSplice";
    case ErrorKind::MissingSublinkData: return "MissingSublinkData";
    case ErrorKind::TorresDegenerate: return "TorresDegenerate";
    case ErrorKind::NotPolynomial: return "NotPolynomial";
    case ErrorKind::NonCoprime: return "NonCoprime";
    case ErrorKind::VerificationFailure: return "VerificationFailure";
    case ErrorKind::InvalidComplex: return "InvalidComplex";
    case ErrorKind::DegenerateBasis: return "DegenerateBasis";
    case ErrorKind::InvalidWitness: return "InvalidWitness";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace splice
