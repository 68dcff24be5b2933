#pragma once

#include <gmpxx.h>

#include "qbailey/errors.hpp"

#include <string>

namespace qb {

// Exact rational coefficient. mpq_class keeps values canonical after each
// arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational pow(const Rational& base, long exponent) {
  if (exponent < 0 && sgn(base) == 0) throw DomainError("zero raised to a negative power");
  Rational result = 1;
  Rational b = exponent >= 0 ? base : Rational(1) / base;
  unsigned long e = exponent >= 0 ? static_cast<unsigned long>(exponent)
                                  : static_cast<unsigned long>(-exponent);
  while (e != 0) {
    if (e & 1UL) result *= b;
    e >>= 1;
    if (e != 0) b *= b;
  }
  return result;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

} // namespace qb
