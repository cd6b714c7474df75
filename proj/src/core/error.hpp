#pragma once

#include <stdexcept>
#include <string>

namespace kt {

enum class ErrorKind {
  InvalidArgument,  // malformed handle/argument use
  Parse,            // unreadable input (rationals, problem files)
  Precondition,     // operation contract violated (dimension mismatch, non-big input, ...)
  Consistency,      // a checked mathematical identity failed; treated as a bug sentinel
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace kt
