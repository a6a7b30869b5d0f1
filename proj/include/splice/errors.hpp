#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace splice {

enum class ErrorKind {
  DivisionByZero,
  ZeroDenominator,
  SingularSpecialization,
  SyntaxError,
  CollisionError,
  UnknownName,
  UnknownComponent,
  ShadowedName,
  InvalidLinkSpec,
  DegenerateSplice,
  MissingSublinkData,
  TorresDegenerate,
  NotPolynomial,
  NonCoprime,
  VerificationFailure,
  InvalidComplex,
  DegenerateBasis,
  InvalidWitness,
  IoError,
};

std::string_view error_name(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind whose name is printed by
// the CLI verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

// Offsets are 0-based byte offsets into the parsed text. Line is 1-based and
// 0 when the input is not line-oriented.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& what, std::size_t line = 0)
      : Error(ErrorKind::SyntaxError, what), offset_(offset), line_(line) {}

  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t offset_;
  std::size_t line_;
};

}  // namespace splice
