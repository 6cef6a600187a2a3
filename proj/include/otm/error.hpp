#pragma once

#include <stdexcept>
#include <string>

namespace otm {

enum class ErrorCode {
  NotPsd,
  InvalidEffect,
  InvalidState,
  InvalidPovm,
  InfeasiblePovm,
  NoFeasiblePoint,
  OutputSpaceTooLarge,
  InvalidArgument,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

/// Library-level failure carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace otm
