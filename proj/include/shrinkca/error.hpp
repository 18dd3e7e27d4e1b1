#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shrinkca {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  ZeroSeed,
  NonPrimitiveModulus,
  SynthesisFailed,
  DegenerateCoset,
  ConflictingReconstruction,
  NonInvertible,
  Exhausted,
  Ambiguous,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::ZeroSeed: return "ZeroSeed";
    case ErrorCode::NonPrimitiveModulus: return "NonPrimitiveModulus";
    case ErrorCode::SynthesisFailed: return "SynthesisFailed";
    case ErrorCode::DegenerateCoset: return "DegenerateCoset";
    case ErrorCode::ConflictingReconstruction: return "ConflictingReconstruction";
    case ErrorCode::NonInvertible: return "NonInvertible";
    case ErrorCode::Exhausted: return "Exhausted";
    case ErrorCode::Ambiguous: return "Ambiguous";
  }
  return "Unknown";
}

/// Base exception for every library failure. The code is stable and is what
/// callers (and the CLI exit-code mapping) should branch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace shrinkca
