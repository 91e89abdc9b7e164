#include "heis/error.hpp"

namespace heis {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOverflow: return "overflow";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kPrecision: return "precision";
    case ErrorCode::kNonzeroMean: return "nonzero_mean";
    case ErrorCode::kResonance: return "resonance";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kDegenerateInput: return "degenerate_input";
  }
  return "unknown";
}

}  // namespace heis
