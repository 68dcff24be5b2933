#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qbailey/report.hpp"
#include "qbailey/series.hpp"

namespace qb {

// Parameters shared by every `verify` identity; unused ones are ignored.
struct VerifyOptions {
  int k = 1;
  int nq = 8;
  int nt = 6;
  int ns = 4;
  int lmax = 6;
  int nmax = -1; // per-identity default when negative
  int points = 10;
  std::optional<std::uint64_t> seed;
  std::vector<Rational> b; // empty means all zero
  std::vector<Rational> c;
};

const std::vector<std::string>& verify_ids();

// Runs one identity and returns its reports (most identities produce one).
// Throws UsageError for an unknown id or bad parameters.
std::vector<IdentityReport> run_verify(const std::string& id, const VerifyOptions& options);

// Rational-point suites: every (l, n) with l <= lmax, n <= nmax at the fixed
// point (q, t, s) = (2/3, 3/5, 5/7), then at `points` random points.
IdentityReport binomial_sum_suite(int lmax, int nmax, int points, std::uint64_t seed);
IdentityReport s_binomial_sum_suite(int lmax, int nmax, int points, std::uint64_t seed);

// The classical layer at fixed seeds.
std::vector<IdentityReport> run_selftest();

} // namespace qb
