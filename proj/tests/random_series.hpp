#pragma once

#include <random>

#include "qbailey/series.hpp"

namespace testing_support {

// Small random series with rational coefficients, optionally with a unit constant term.
inline qb::Series random_series(std::mt19937_64& rng, const qb::Truncation& tr, bool unit_constant = false,
                                int z_span = 2) {
  std::uniform_int_distribution<int> qd(0, tr.max_q), td(0, tr.max_t), zd(-z_span, z_span), num(-5, 5), den(1, 4);
  std::uniform_int_distribution<int> sd(0, tr.s_cap());
  std::vector<qb::Series::Term> terms;
  for (int i = 0; i < 6; ++i) {
    qb::Rational c(num(rng), den(rng));
    c.canonicalize();
    terms.push_back({qb::Monomial{qd(rng), td(rng), tr.has_s() ? sd(rng) : 0, zd(rng)}, c});
  }
  qb::Series f = qb::Series::from_terms(tr, std::move(terms));
  if (unit_constant) {
    f -= qb::Series::constant(tr, f.constant_term());
    qb::Rational c(num(rng) == 0 ? 1 : 3, den(rng));
    c.canonicalize();
    f += qb::Series::constant(tr, c);
  }
  return f;
}

} // namespace testing_support
