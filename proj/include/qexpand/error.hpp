/**
 * Error type shared by every module.
 *
 * Every failure carries a short machine-readable code (e.g. "NotHermitian",
 * "CertificateViolated") plus a human-readable message.  The CLI maps codes to
 * exit statuses: CertificateViolated -> 1 (a checked inequality failed), any
 * other code -> 2 (bad or inconsistent input).
 */
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qexpand {

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  /// Stable machine-readable failure code.
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Throw an Error with the given code and message.
[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
  throw Error(code, message);
}

/// Throw unless `cond` holds.
inline void require(bool cond, const std::string& code, const std::string& message) {
  if (!cond) fail(code, message);
}

}  // namespace qexpand
