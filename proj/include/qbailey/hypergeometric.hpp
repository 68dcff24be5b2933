#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qbailey/rational.hpp"
#include "qbailey/report.hpp"
#include "qbailey/series.hpp"

namespace qb {

// Exact assignment of rational values to q, t, s and auxiliary parameters.
// Every denominator factor met during evaluation is checked and logged.
class RationalPoint {
public:
  RationalPoint() = default;
  RationalPoint(std::initializer_list<std::pair<const std::string, Rational>> values);

  RationalPoint& set(const std::string& name, const Rational& value);
  const Rational& operator[](const std::string& name) const;
  bool has(const std::string& name) const { return values_.count(name) != 0; }

  // Returns value after checking it is nonzero; throws PoleError naming label.
  const Rational& denominator(const Rational& value, const std::string& label);
  // Throws DomainError if q^j = 1 for some 1 <= j <= bound.
  void require_q_generic(int bound) const;

  const std::vector<std::string>& pole_log() const { return log_; }
  std::string describe() const;

private:
  std::map<std::string, Rational> values_;
  std::vector<std::string> log_;
};

// (a;q)_n at q = point["q"]; negative n via (a;q)_{-m} = 1/(a q^{-m};q)_m.
Rational qpoch(const Rational& a, int n, RationalPoint& point, const std::string& label);
// 1/(a;q)_n. For n < 0 this is the finite product (a q^{-m};q)_m and never poles.
Rational qpoch_recip(const Rational& a, int n, RationalPoint& point, const std::string& label);
Rational qbinomial_at(int M, int N, RationalPoint& point);

// Terminating basic hypergeometric series r phi s with one q^{-n} upper parameter.
struct PhiSpec {
  std::vector<Rational> upper;
  std::vector<Rational> lower;
  Rational argument;
  int termination = 0;
};

Rational phi_terminating(const PhiSpec& spec, RationalPoint& point);

enum class ClassicalIdentity { pfaff_saalschutz, chu_vandermonde_2, qbinomial_theorem, sixphi5, heine_1 };

std::string to_string(ClassicalIdentity id);
ClassicalIdentity classical_identity_from_string(const std::string& name);
// Names of the variables a random point must supply for the identity.
std::vector<std::string> classical_variables(ClassicalIdentity id);

// Compares the summation side against its product formula. heine_1 is
// nonterminating: it is checked in the series ring with q formal and the
// argument carried by t (a = alpha, b = beta q, c = gamma q), both capped at 8.
IdentityReport classical_check(ClassicalIdentity id, RationalPoint& point, int n);

// S_{d,n} as a sum and in closed form.
Rational s_sum(int d, int n, RationalPoint& point);
Rational s_closed(int d, int n, RationalPoint& point);
// Both sides of sum_j [2l,j]_q S_{j-l-n,n} = -sum_j [2l,j]_q S_{j-l-n+1,n}.
std::pair<Rational, Rational> s_symmetry_sides(int l, int n, RationalPoint& point);

// sum_{j=0}^{2l} (q^{j-l-n};q)_{2n} (1/t;q)_{j-l-n} t^j / ((q;q)_j (q;q)_{2l-j} (t;q)_{j-l+n})
//   = t^{2l} / ((q;q)_{l-n} (tq;q)_{l+n}).
std::pair<Rational, Rational> binomial_sum_sides(int l, int n, RationalPoint& point);
IdentityReport binomial_sum_check(int l, int n, RationalPoint& point);
// The s-deformation with (s;q)_j (s;q)_{2l-j} weights; s = 0 recovers binomial_sum_check.
std::pair<Rational, Rational> s_binomial_sum_sides(int l, int n, RationalPoint& point);
IdentityReport s_binomial_sum_check(int l, int n, RationalPoint& point);

// Random rational points: numerator and denominator uniform on [2, 97].
class PointSampler {
public:
  explicit PointSampler(std::uint64_t seed) : seed_(seed), rng_(seed) {}
  RationalPoint draw(const std::vector<std::string>& names);
  std::uint64_t seed() const { return seed_; }
  int rejections() const { return rejections_; }
  void note_rejection() { ++rejections_; }

private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  int rejections_ = 0;
};

// Runs check on `count` random points drawn from `sampler`. A point that hits
// a pole is discarded and redrawn; the report records the seed.
IdentityReport run_on_random_points(IdentityReport report, PointSampler& sampler, int count,
                                    const std::vector<std::string>& names,
                                    const std::function<void(RationalPoint&, IdentityReport&, const std::string&)>& check);

struct BPhiEvaluation {
  Series b_sum;
  Series b_closed;
  Series phi_sum;
  Series phi_closed;
};

// B_n and Phi_{n,n'} from their defining sums and their closed forms
//   B_n = H_{2n}(z;q)/(q;q)_n^2,  Phi_{n,n'} = q^{n^2} (q;q)_{n'} / (q;q)_n [n',n]_q.
BPhiEvaluation b_phi_closed(int n, int n_prime, const Truncation& trunc);

} // namespace qb
