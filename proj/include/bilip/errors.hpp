#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bilip {

enum class ErrorKind {
  SyntaxError,
  UnboundParameter,
  NonIntegerExponent,
  NotVanishingAtOrigin,
  NotMiniRegular,
  MultipleRoot,
  PrecisionExhausted,
  TruncationCapExceeded,
  AmbiguousZero,
  WindowTooSmall,
  IndistinguishableArcs,
  InfiniteGradientDegree,
  GridTooCoarse,
  ExplosionGuard,
  PreconditionNotMet,
  InvalidArgument,
  Internal,
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

/// Raised when the parser rejects its input. `position` is a 0-based byte offset.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorKind::SyntaxError, "at position " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnboundParameter: return "UnboundParameter";
    case ErrorKind::NonIntegerExponent: return "NonIntegerExponent";
    case ErrorKind::NotVanishingAtOrigin: return "NotVanishingAtOrigin";
    case ErrorKind::NotMiniRegular: return "NotMiniRegular";
    case ErrorKind::MultipleRoot: return "MultipleRoot";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::TruncationCapExceeded: return "TruncationCapExceeded";
    case ErrorKind::AmbiguousZero: return "AmbiguousZero";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::IndistinguishableArcs: return "IndistinguishableArcs";
    case ErrorKind::InfiniteGradientDegree: return "InfiniteGradientDegree";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::ExplosionGuard: return "ExplosionGuard";
    case ErrorKind::PreconditionNotMet: return "PreconditionNotMet";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace bilip
