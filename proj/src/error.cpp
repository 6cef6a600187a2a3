#include "otm/error.hpp"

namespace otm {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::InvalidEffect: return "InvalidEffect";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidPovm: return "InvalidPovm";
    case ErrorCode::InfeasiblePovm: return "InfeasiblePovm";
    case ErrorCode::NoFeasiblePoint: return "NoFeasiblePoint";
    case ErrorCode::OutputSpaceTooLarge: return "OutputSpaceTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace otm
