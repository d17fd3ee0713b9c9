#pragma once

#include <stdexcept>
#include <string>

namespace frobmodel {

enum class ErrorCode {
  config,       // bad or unsupported configuration
  domain,       // argument outside the operation's domain
  unsupported,  // operation outside the encoded fragment
  resource,     // enumeration budget exceeded
  precondition, // a mathematical precondition fails
  internal      // consistency check failed
};

inline const char* code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::config: return "config_error";
    case ErrorCode::domain: return "domain_error";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::resource: return "budget_exhausted";
    case ErrorCode::precondition: return "precondition_failed";
    case ErrorCode::internal: return "internal_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool ok, ErrorCode c, const std::string& msg) {
  if (!ok) fail(c, msg);
}

}  // namespace frobmodel
