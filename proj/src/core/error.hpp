#pragma once

#include <stdexcept>
#include <string>

namespace pbss {

enum class ErrorCode {
  kParse,
  kIllegalAction,
  kInfeasible,
  kOutOfRange,
  kNoLegalAction,
  kInvalidArgument,
  kReplayMismatch,
};

// Every failure raised by the core carries one of the codes above; the C
// layer maps them one-to-one onto pbss_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pbss
