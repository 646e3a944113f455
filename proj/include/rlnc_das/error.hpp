#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rlnc_das {

enum class ErrorCode {
  NonPrimeModulus,
  DimensionMismatch,
  FieldMismatch,
  SingularMatrix,
  NonPowerOfTwoLength,
  MalformedProof,
  MalformedEncoding,
  InsufficientRank,
  InconsistentSamples,
  DomainError,
  ConfigError,
  IoError,
  MalformedFile,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NonPowerOfTwoLength: return "NonPowerOfTwoLength";
    case ErrorCode::MalformedProof: return "MalformedProof";
    case ErrorCode::MalformedEncoding: return "MalformedEncoding";
    case ErrorCode::InsufficientRank: return "InsufficientRank";
    case ErrorCode::InconsistentSamples: return "InconsistentSamples";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MalformedFile: return "MalformedFile";
  }
  return "Unknown";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace rlnc_das
