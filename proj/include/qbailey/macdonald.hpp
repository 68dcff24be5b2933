#pragma once

#include <string>
#include <vector>

#include "qbailey/bailey.hpp"
#include "qbailey/report.hpp"
#include "qbailey/series.hpp"

namespace qb {

// A = 2I - Cartan(D_{2k+1}), indexed from 0 here (node i is row i-1).
struct DynkinData {
  int k = 1;
  std::vector<std::vector<int>> adjacency;

  static DynkinData d_odd(int k);
  int rank() const { return 2 * k + 1; }
  int at(int i, int j) const { return adjacency[i - 1][j - 1]; } // 1-based
};

enum class Representation { bosonic, fermionic, fermionic2, original };

std::string to_string(Representation rep);
Representation representation_from_string(const std::string& name);

// Single alternating sum with the 1/(t, tz^2, t/z^2;q)_inf prefactor.
Series bosonic_index(int k, const Truncation& trunc);
// Multisum over n_k >= ... >= n_1 >= 0 with sum_j [2n_k, j]_q z^{2j - 2n_k}.
Series fermionic_index(int k, const Truncation& trunc);
// (t,q;q)_inf^k times the (r, s, u_1, u_2) multisum, s_0 = 0.
Series fermionic2_index(int k, const Truncation& trunc);
// The (l, m) multisum with the two Kronecker deltas and the Dynkin quadratic form.
Series original_index(int k, const Truncation& trunc);
Series macdonald_index(int k, Representation rep, const Truncation& trunc);

// The z = 1 multisum, summed directly with [2n_k, j]_q collapsed to sum_j.
Series unrefined_fermionic_direct(int k, const Truncation& trunc);

struct GeneralizedSides {
  Series lhs;
  Series rhs;
};

// Both sides of the (b, c)-deformed duality; at b = c = 0 they are the
// fermionic and bosonic indices.
GeneralizedSides generalized_sides(const ChainParams& params, const Truncation& trunc);
IdentityReport generalized_identity(const ChainParams& params, const Truncation& trunc);

// sum q^{n_1^2+...+n_k^2}/((q;q)_{n_k-n_{k-1}}...(q;q)_{n_1})
//   = 1/(q;q)_inf sum_{n in Z} (-1)^n q^{(k+1)n^2 + C(n,2)}.
IdentityReport multi_rogers_ramanujan(int k, int max_q);

enum class Specialization { schur, hall_littlewood, unrefined };

std::string to_string(Specialization mode);
// schur: t -> q (needs max_t >= max_q); hall-littlewood: q = 0; unrefined: z = 1.
Series specialize_index(const Series& f, Specialization mode);

// Coefficient table rows (e_q, e_t, e_z, numerator, denominator) in canonical order.
std::string table_csv(const Series& f);
std::string table_json(const Series& f);

} // namespace qb
