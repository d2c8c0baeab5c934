#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace olr {

enum class ErrorCode {
  kSelfLoop,
  kDuplicateEdge,
  kPendingEdgeExists,
  kNoPendingEdge,
  kPendingEdge,
  kColorOutOfRange,
  kVertexOutOfRange,
  kInvalidArgument,
  kParse,
  kDomainViolation,
  kOracleMissingValue,
  kParameterInfeasible,
  kPreconditionUnsatisfied,
  kNotFound,
  kEnvelopeExceeded,
  kCertificateInvalid,
  kWrongTurn,
  kIllegalMove,
  kSessionFinished,
  kUnknownSession,
  kBusy,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSelfLoop: return "self-loop";
    case ErrorCode::kDuplicateEdge: return "duplicate-edge";
    case ErrorCode::kPendingEdgeExists: return "pending-edge-exists";
    case ErrorCode::kNoPendingEdge: return "no-pending-edge";
    case ErrorCode::kPendingEdge: return "pending-edge";
    case ErrorCode::kColorOutOfRange: return "color-out-of-range";
    case ErrorCode::kVertexOutOfRange: return "vertex-out-of-range";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kParse: return "parse-error";
    case ErrorCode::kDomainViolation: return "domain-violation";
    case ErrorCode::kOracleMissingValue: return "oracle-missing-value";
    case ErrorCode::kParameterInfeasible: return "parameter-infeasible";
    case ErrorCode::kPreconditionUnsatisfied: return "precondition-unsatisfied";
    case ErrorCode::kNotFound: return "not-found";
    case ErrorCode::kEnvelopeExceeded: return "envelope-exceeded";
    case ErrorCode::kCertificateInvalid: return "certificate-invalid";
    case ErrorCode::kWrongTurn: return "wrong-turn";
    case ErrorCode::kIllegalMove: return "illegal-move";
    case ErrorCode::kSessionFinished: return "session-finished";
    case ErrorCode::kUnknownSession: return "unknown-session";
    case ErrorCode::kBusy: return "busy";
  }
  return "unknown";
}

/// Exception carrying a machine-readable code; what() holds the human detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace olr
