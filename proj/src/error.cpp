#include "psikit/error.hpp"

namespace psikit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::TiePolicy: return "TiePolicyError";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::DegenerateBaseline: return "DegenerateBaseline";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Alignment: return "AlignmentError";
    case ErrorCode::NegativeCount: return "NegativeCount";
  }
  return "Unknown";
}

}  // namespace psikit
