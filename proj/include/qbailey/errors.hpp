#pragma once

#include <stdexcept>
#include <string>

namespace qb {

// Base of every error the engine raises.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Caller combined incompatible values (e.g. series with different truncations).
class UsageError : public Error {
public:
  using Error::Error;
};

// Series whose constant term vanishes (or whose degree-zero part is not a
// bare constant) was passed to invert().
class NonInvertibleError : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

// A monomial substitution would need coefficients beyond the source caps.
class TruncationOverflowError : public Error {
public:
  using Error::Error;
};

// A denominator factor evaluated to zero at a rational point.
class PoleError : public Error {
public:
  explicit PoleError(const std::string& factor)
      : Error("pole at denominator factor " + factor), factor_(factor) {}
  const std::string& factor() const { return factor_; }

private:
  std::string factor_;
};

// Raised when an internal invariant breaks (e.g. a non-integral exponent).
class InternalConsistencyError : public Error {
public:
  using Error::Error;
};

} // namespace qb
