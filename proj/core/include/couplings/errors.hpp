#ifndef COUPLINGS_ERRORS_HPP
#define COUPLINGS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace couplings {

enum class ErrorCode {
  ParseError,
  DuplicateLabel,
  NegativeMass,
  UnbalancedTotals,
  DanglingRelationPair,
  SubsetCapExceeded,
  UnequalSides,
  UnsupportedEdge,
  NotAForest,
  ConditionViolated,
  SizeCapExceeded,
  BlowUpTooLarge,
  EpsilonTooSmall,
};

const char* error_code_name(ErrorCode code);

class ToolkitError : public std::runtime_error {
 public:
  ToolkitError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace couplings

#endif
