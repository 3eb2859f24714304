#pragma once

#include <stdexcept>
#include <string>

namespace bmc {

enum class ErrorCode {
  invalid_parameter,
  invalid_structure,
  guard_exceeded,
  invalid_certificate,
  infeasible,
  parse_error,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::invalid_structure: return "invalid-structure";
    case ErrorCode::guard_exceeded: return "guard-exceeded";
    case ErrorCode::invalid_certificate: return "invalid-certificate";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::parse_error: return "parse-error";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace bmc
