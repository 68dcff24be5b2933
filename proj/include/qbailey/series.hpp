#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbailey/errors.hpp"
#include "qbailey/rational.hpp"

namespace qb {

enum class Var { q, t, s, z };

std::string to_string(Var v);

// Per-variable degree caps. A series lives in the quotient of
// Q[q,t,s][z,1/z] by the ideal (q^{max_q+1}, t^{max_t+1}, s^{max_s+1});
// z is never truncated.
struct Truncation {
  int max_q = 0;
  int max_t = 0;
  std::optional<int> max_s;

  Truncation() = default;
  Truncation(int q_cap, int t_cap, std::optional<int> s_cap = std::nullopt);

  bool has_s() const { return max_s.has_value(); }
  int s_cap() const { return max_s.value_or(0); }
  int cap(Var v) const;
  // Largest total (q,t,s)-degree a monomial can carry.
  int total_degree() const { return max_q + max_t + s_cap(); }

  friend bool operator==(const Truncation&, const Truncation&) = default;
};

std::string to_string(const Truncation& trunc);

// Exponent vector. The defaulted comparison is the canonical order:
// lexicographic on (q, t, s, z).
struct Monomial {
  int q = 0;
  int t = 0;
  int s = 0;
  int z = 0;

  auto operator<=>(const Monomial&) const = default;

  Monomial operator+(const Monomial& o) const { return {q + o.q, t + o.t, s + o.s, z + o.z}; }
  int degree() const { return q + t + s; }
  int exponent(Var v) const;
};

std::string to_string(const Monomial& m, bool with_s);

class Series {
public:
  using Term = std::pair<Monomial, Rational>;

  explicit Series(const Truncation& trunc) : trunc_(trunc) {}

  static Series constant(const Truncation& trunc, const Rational& c);
  static Series monomial(const Truncation& trunc, const Monomial& m, const Rational& c = 1);
  // Builds a series from arbitrary terms: out-of-cap terms are discarded,
  // duplicates combined and zeros dropped.
  static Series from_terms(const Truncation& trunc, std::vector<Term> terms);

  const Truncation& truncation() const { return trunc_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool fits(const Monomial& m) const;

  Rational constant_term() const;
  int min_z() const;
  int max_z() const;

  Series& operator+=(const Series& g);
  Series& operator-=(const Series& g);
  Series& operator*=(const Series& g);
  Series& operator*=(const Rational& c);

  // Multiplication by c * x^m, dropping products that leave the caps.
  Series shifted(const Monomial& m, const Rational& c = 1) const;
  // f * (1 - c x^m).
  Series mul_one_minus(const Rational& c, const Monomial& m) const;
  // f / (1 - c x^m); m must have positive (q,t,s)-degree.
  Series div_one_minus(const Rational& c, const Monomial& m) const;
  // Reinterprets the series under smaller caps. Dropping s keeps only the
  // s-free terms, i.e. sets s = 0.
  Series retruncated(const Truncation& smaller) const;

  friend bool operator==(const Series& a, const Series& b) {
    return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
  }

private:
  friend Series add(const Series& f, const Series& g);
  friend Series mul(const Series& f, const Series& g);

  Truncation trunc_;
  std::vector<Term> terms_; // canonical order, no zeros
};

Series add(const Series& f, const Series& g);
Series mul(const Series& f, const Series& g);
Series invert(const Series& f);
Rational coefficient(const Series& f, const Monomial& m);
Series flip_z(const Series& f);
// Substitutes a rational value for a variable. z must not be set to 0.
Series specialize(const Series& f, Var var, const Rational& value);
// Substitutes a monomial for a variable, e.g. t -> q (Schur) or z -> z^2.
Series specialize(const Series& f, Var var, const Monomial& value);

inline Series operator+(Series f, const Series& g) { return f += g; }
inline Series operator-(Series f, const Series& g) { return f -= g; }
inline Series operator*(const Series& f, const Series& g) { return mul(f, g); }
inline Series operator*(Series f, const Rational& c) { return f *= c; }
inline Series operator*(const Rational& c, Series f) { return f *= c; }
inline Series operator-(Series f) { return f *= Rational(-1); }

// Canonical rendering: terms in canonical order as `num/den * q^a t^b s^c z^e`,
// joined by " + "; the zero series renders as "0".
std::string render(const Series& f);

// Canonically smallest monomial on which f and g differ.
std::optional<Monomial> first_difference(const Series& f, const Series& g);

} // namespace qb
