#pragma once

#include <stdexcept>
#include <string>

namespace fraclap {

/// Base of every error raised by the library. Carries the name of the
/// module whose contract was violated so front ends can report it.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& message);

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

/// An argument violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace fraclap
