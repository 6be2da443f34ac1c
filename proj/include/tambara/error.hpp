#pragma once

#include <stdexcept>
#include <string>

namespace tambara {

enum class ErrorCode {
  InvalidInput,
  ZeroRing,
  NotIdempotent,
  GroupMismatch,
  NormFlagMismatch,
  SectionCapExceeded,
  UnsupportedGroup,
  Timeout,
  NoNorms,
  NotComplete,
  NotOrthogonal,
  NotFixed,
  VerificationFailed,
  ZeroFunctor,
  TargetNotClarified,
  FactorizationFailed,
  NotAutomorphism,
  CrossTermFound,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map them onto stable exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ZeroRing: return "ZeroRing";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::NormFlagMismatch: return "NormFlagMismatch";
    case ErrorCode::SectionCapExceeded: return "SectionCapExceeded";
    case ErrorCode::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::NoNorms: return "NoNorms";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::NotFixed: return "NotFixed";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::ZeroFunctor: return "ZeroFunctor";
    case ErrorCode::TargetNotClarified: return "TargetNotClarified";
    case ErrorCode::FactorizationFailed: return "FactorizationFailed";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::CrossTermFound: return "CrossTermFound";
  }
  return "Unknown";
}

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace tambara
