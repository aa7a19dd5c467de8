#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace satcts {

// Coarse failure categories; the CLI maps them to exit codes.
enum class ErrorKind {
  kInvalidArgument,  // precondition violated by a caller
  kInfeasible,       // B*K < M, empty schedule, ...
  kConfig,           // scenario file content
  kParse,            // malformed channel dump or config syntax
  kDimensionMismatch,
  kNonFinite,
  kIo,
  kExactOnly,        // gap enumeration requested beyond the guard
  kState,            // select/observe called out of order
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace satcts
