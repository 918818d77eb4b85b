#pragma once

#include <stdexcept>
#include <string>

namespace rmsalign {

// Base for every error the library reports; `code()` is the CLI exit code.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
  virtual int code() const { return 4; }
};

struct EmptyIntersection : Error {
  using Error::Error;
};
struct OutOfRange : Error {
  using Error::Error;
};
struct OnBoundary : Error {
  using Error::Error;
};
struct ListExhausted : Error {
  using Error::Error;
};
struct SeparationViolated : Error {
  using Error::Error;
  int code() const override { return 2; }
};
struct BudgetExceeded : Error {
  using Error::Error;
  int code() const override { return 3; }
};
struct ParseError : Error {
  using Error::Error;
  int code() const override { return 2; }
};
struct ValidationError : Error {
  using Error::Error;
  int code() const override { return 2; }
};
// An internal invariant failed; always a bug.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace rmsalign
