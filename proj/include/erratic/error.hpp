#pragma once

#include <stdexcept>
#include <string>

namespace erratic {

/// Error categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
  domain = 1,      // parameter outside the mathematical domain (e.g. epsilon >= 1/2)
  validation = 2,  // malformed input (unsorted positions, bad config)
  degenerate = 3,  // input is valid but the requested quantity is undefined
  overflow = 4,    // exact result not representable
  io = 5,
  invariant = 6,   // a model invariant was violated during simulation
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorCode::domain, what) {}
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error(ErrorCode::validation, what) {}
};

struct DegenerateError : Error {
  explicit DegenerateError(const std::string& what) : Error(ErrorCode::degenerate, what) {}
};

struct OverflowError : Error {
  explicit OverflowError(const std::string& what) : Error(ErrorCode::overflow, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

struct InvariantError : Error {
  explicit InvariantError(const std::string& what) : Error(ErrorCode::invariant, what) {}
};

}  // namespace erratic
