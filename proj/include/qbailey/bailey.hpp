#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qbailey/report.hpp"
#include "qbailey/series.hpp"

namespace qb {

enum class FamilyKind { alpha, beta, gamma, delta };

std::string to_string(FamilyKind kind);

// A lazily generated, memoized sequence n -> series. Entries factor as
// t^{t_step * n} * reduced(n); families without such a prefactor use
// t_step = 0. support_bound, when present, is the largest n whose entry can
// be nonzero mod truncation.
class PairFamily {
public:
  using Generator = std::function<Series(int)>;

  PairFamily(FamilyKind kind, const Truncation& trunc, Generator reduced, std::optional<int> support_bound,
             int t_step = 0);

  const Series& at(int n) const;
  const Series& reduced(int n) const;

  FamilyKind kind() const { return kind_; }
  const Truncation& truncation() const { return trunc_; }
  std::optional<int> support_bound() const { return bound_; }
  int t_step() const { return t_step_; }

private:
  struct Memo;

  FamilyKind kind_;
  Truncation trunc_;
  std::optional<int> bound_;
  int t_step_;
  std::shared_ptr<Memo> memo_;
};

struct BaileyPair {
  PairFamily alpha;
  PairFamily beta;
};

struct ConjugatePair {
  PairFamily gamma;
  PairFamily delta;
};

struct ChainParams {
  int k = 1;
  std::vector<Rational> b;
  std::vector<Rational> c;

  // All-zero parameters of depth k.
  static ChainParams zeros(int k);
  void validate() const;
};

// alpha_n = (-1)^n q^{C(n,2)} (1 - t q^{2n}) (tq;q)_{n-1} / (q;q)_n, beta_n = [n = 0].
BaileyPair seed_pair(const Truncation& trunc);

// beta_n = sum_{l<=n} alpha_l / ((q;q)_{n-l} (tq;q)_{n+l}) for n <= n_max.
IdentityReport verify_bailey_pair(const BaileyPair& pair, int n_max);

// k applications of Bailey's lemma with parameters (b_i, c_i); the factors
// (1/b;q)_n b^n are taken in their polynomial form so b = 0 is allowed.
BaileyPair chain_lift(const BaileyPair& pair, const ChainParams& params);

// The conjugate pair
//   gamma_n = t^n (q;q)_{2n} (t^2 q^{2n};q)_inf / (t,tq,tz,t/z;q)_inf * sum_j C-coeff(j,2n) z^{j-n},
//   delta_n = t^n sum_j [2n,j]_q z^{j-n}.
ConjugatePair hermite_conjugate_pair(const Truncation& trunc);

// gamma_n = sum_{l>=n} delta_l / ((q;q)_{l-n} (tq;q)_{l+n}) for n <= n_max.
IdentityReport verify_conjugate_pair(const ConjugatePair& pair, int n_max);

// sum_n alpha_n gamma_n = sum_n beta_n delta_n. Every product needs a
// support bound from at least one factor.
IdentityReport bailey_transform_check(const BaileyPair& pair, const ConjugatePair& conj);

// The well-poised lift: gamma'_n = gamma_n (sz, s/z;q)_inf and
//   delta'_n = t^n (1 - s q^{2n}) (q;q)_{2n} (s^2 q^{2n};q)_inf / ((1-s)(s,sq;q)_inf)
//              * sum_j C-coeff_s(j,2n) z^{j-n}.
ConjugatePair wp_conjugate_pair(const Truncation& trunc);

// gamma'_n = sum_{l>=n} (s/t;q)_{l-n} (s;q)_{l+n} / ((q;q)_{l-n} (tq;q)_{l+n}) delta'_l.
// (s/t;q)_{l-n} t^{l-n} = prod_{i<l-n} (t - s q^i) is absorbed into delta'_l's
// t^l, so the sum is read off delta's reduced entries and stops once
// l - n exceeds max_t + max_s.
IdentityReport verify_wp_conjugate(const ConjugatePair& pair, int n_max);

// Setting s = 0 in the well-poised families reproduces the ordinary ones.
IdentityReport wp_specialization_check(const Truncation& trunc, int n_max);

} // namespace qb
