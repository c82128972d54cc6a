#pragma once

#include <stdexcept>
#include <string>

namespace socnc {

// Base class for all library errors. `code()` is stable and used by the CLI
// to map errors onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct NotInOmegaError : Error {
  explicit NotInOmegaError(const std::string& what)
      : Error("NotInOmega", what) {}
};

struct AmbiguousCaseError : Error {
  explicit AmbiguousCaseError(const std::string& what)
      : Error("AmbiguousCase", what) {}
};

struct DimensionMismatchError : Error {
  explicit DimensionMismatchError(const std::string& what)
      : Error("DimensionMismatch", what) {}
};

struct NotDifferentiableError : Error {
  explicit NotDifferentiableError(const std::string& what)
      : Error("NotDifferentiable", what) {}
};

struct WrongCaseError : Error {
  explicit WrongCaseError(const std::string& what)
      : Error("WrongCase", what) {}
};

struct InvalidGridError : Error {
  explicit InvalidGridError(const std::string& what)
      : Error("InvalidGrid", what) {}
};

struct UnsupportedRegionError : Error {
  explicit UnsupportedRegionError(const std::string& what)
      : Error("UnsupportedRegion", what) {}
};

struct InvalidArgumentError : Error {
  explicit InvalidArgumentError(const std::string& what)
      : Error("InvalidArgument", what) {}
};

}  // namespace socnc
