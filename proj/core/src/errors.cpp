#include "couplings/errors.hpp"

namespace couplings {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::NegativeMass: return "NegativeMass";
    case ErrorCode::UnbalancedTotals: return "UnbalancedTotals";
    case ErrorCode::DanglingRelationPair: return "DanglingRelationPair";
    case ErrorCode::SubsetCapExceeded: return "SubsetCapExceeded";
    case ErrorCode::UnequalSides: return "UnequalSides";
    case ErrorCode::UnsupportedEdge: return "UnsupportedEdge";
    case ErrorCode::NotAForest: return "NotAForest";
    case ErrorCode::ConditionViolated: return "ConditionViolated";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::BlowUpTooLarge: return "BlowUpTooLarge";
    case ErrorCode::EpsilonTooSmall: return "EpsilonTooSmall";
  }
  return "UnknownError";
}

}  // namespace couplings
