#pragma once

#include <stdexcept>
#include <string>

namespace lim {

enum class ErrorCode {
  Schema,         // malformed document / wrong shape
  Number,         // bad numeric literal, negative probability, row sum != 1
  UnknownAgent,
  UnknownGroup,
  Dimension,      // operation requires a specific alternative count
  Capacity,       // instance exceeds a configured enumeration/size limit
  Size,           // unstarred axiom check on mixed group sizes
  SingularSpec,   // equilibrium solve with a zero self-weight
  MissingProfile, // prediction requested for an agent without a profile
  InconsistentData,
  Usage,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Schema: return "schema";
    case ErrorCode::Number: return "number";
    case ErrorCode::UnknownAgent: return "unknown-agent";
    case ErrorCode::UnknownGroup: return "unknown-group";
    case ErrorCode::Dimension: return "dimension";
    case ErrorCode::Capacity: return "capacity";
    case ErrorCode::Size: return "size";
    case ErrorCode::SingularSpec: return "singular-spec";
    case ErrorCode::MissingProfile: return "missing-profile";
    case ErrorCode::InconsistentData: return "inconsistent-data";
    case ErrorCode::Usage: return "usage";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace lim
