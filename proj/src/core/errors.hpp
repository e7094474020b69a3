#pragma once

#include <stdexcept>
#include <string>

namespace omt {

enum class ErrorCode {
  InvalidArgument,
  CriticalCoupling,
  UnknownPreset,
  GridTooCoarse,
  GridMismatch,
  NumericalBranch,
  UnstableStep,
  TooFewSegments,
  Io,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CriticalCoupling: return "CriticalCoupling";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NumericalBranch: return "NumericalBranch";
    case ErrorCode::UnstableStep: return "UnstableStep";
    case ErrorCode::TooFewSegments: return "TooFewSegments";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace omt
