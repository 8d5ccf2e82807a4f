#pragma once

#include <stdexcept>
#include <string>

namespace phasecoh {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  UnknownLabel,
  Solver,
  Verification,
};

/// Library-wide exception. The C API maps `kind` to an error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }
[[noreturn]] inline void fail(const std::string& what, ErrorKind kind = ErrorKind::InvalidArgument) { fail(kind, what); }

inline void require(bool cond, const std::string& what, ErrorKind kind = ErrorKind::InvalidArgument) {
  if (!cond) fail(kind, what);
}

}  // namespace phasecoh
