#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pathform {

enum class Errc {
  NonProbability,
  AtomAtOrigin,
  DimensionMismatch,
  UnsupportedVariant,
  TimeOutOfRange,
  ZeroMark,
  ZeroShift,
  UnsortedTimes,
  HorizonMismatch,
  BoundViolation,
  NoSuchJump,
  UnsupportedMeasure,
  TruncationTooCoarse,
  InvalidArgument,
  ConfigError,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonProbability: return "NonProbability";
    case Errc::AtomAtOrigin: return "AtomAtOrigin";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::UnsupportedVariant: return "UnsupportedVariant";
    case Errc::TimeOutOfRange: return "TimeOutOfRange";
    case Errc::ZeroMark: return "ZeroMark";
    case Errc::ZeroShift: return "ZeroShift";
    case Errc::UnsortedTimes: return "UnsortedTimes";
    case Errc::HorizonMismatch: return "HorizonMismatch";
    case Errc::BoundViolation: return "BoundViolation";
    case Errc::NoSuchJump: return "NoSuchJump";
    case Errc::UnsupportedMeasure: return "UnsupportedMeasure";
    case Errc::TruncationTooCoarse: return "TruncationTooCoarse";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

// All library failures are reported through this exception; `code()` is the
// stable discriminator, `what()` carries the human-readable context.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace pathform
