#pragma once

#include <stdexcept>
#include <string>

namespace vqt {

enum class ErrorKind {
  invalid_argument,  // precondition / invariant violation
  io,                // unreadable file, bad path
  parse,             // malformed config or CSV
  diverged,          // non-finite loss or gradient during training
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

[[noreturn]] inline void fail(const std::string& what) {
  throw Error(ErrorKind::invalid_argument, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(what);
}

}  // namespace vqt
