#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace skewring {

// All deliberate failures carry a short stable code ("parse", "bind", "config",
// "domain", "mismatch", "internal") so the CLI can map them to exit codes and
// machine-readable error objects without string-matching messages.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const char* code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace skewring
