#pragma once

#include "qbailey/series.hpp"

namespace qb {

// Convenience: c * q^a t^b s^c z^e as a series.
Series mono(const Truncation& trunc, int q, int t = 0, int s = 0, int z = 0, const Rational& c = 1);

// (a;q)_n. Negative n uses (a;q)_{-m} = 1/(a q^{-m};q)_m, which is only
// available when every shifted factor stays inside the ring and is a unit.
Series poch(const Series& base, int n);
// 1/(a;q)_n, the reciprocal computed factor by factor.
Series poch_inv(const Series& base, int n);
// (a;q)_infinity; stops once a factor is 1 mod truncation.
Series poch_infinite(const Series& base);
Series poch_infinite_inv(const Series& base);

// (1/b;q)_n b^n = prod_{i<n} (b - q^i), valid at b = 0.
Series combined_poch(const Rational& b, int n, const Truncation& trunc);

// Gaussian binomial [M choose N]_q; zero outside 0 <= N <= M.
Series qbinomial(int M, int N, const Truncation& trunc);

// H_n(z;q) = sum_j [n choose j]_q z^{n-2j}.
Series hermite(int n, const Truncation& trunc);

// (p;q)_j (p;q)_{n-j} / ((q;q)_j (q;q)_{n-j}), the ultraspherical coefficient.
Series ultraspherical_coeff(int j, int n, const Series& param);
// C_n(z,p;q) = sum_j ultraspherical_coeff(j, n, p) z^{n-2j}. The usual
// parameter is the ring variable t; the well-poised weights use s.
Series ultraspherical(int n, const Series& param);
Series ultraspherical(int n, const Truncation& trunc, Var param = Var::t);

// z-constant term of a z <-> 1/z symmetric series. This is the
// (1/pi) int_0^pi d theta functional on symmetric Laurent series.
Series ct_z(const Series& f);

// (z^2, z^-2; q)_infinity.
Series hermite_weight(const Truncation& trunc);
// (z^2, z^-2; q)_inf / (p z^2, p z^-2; q)_inf.
Series ultraspherical_weight(const Truncation& trunc, Var param);

Series hermite_inner(int m, int n, const Truncation& trunc);
// Inner product of C_m(z,s;q) and C_n(z,s;q); needs an s-cap.
Series ultraspherical_inner(int m, int n, const Truncation& trunc);
// Closed forms of the two orthogonality relations.
Series hermite_norm(int n, const Truncation& trunc);
Series ultraspherical_norm(int n, const Truncation& trunc);

// sum_l (q;q)_m (q;q)_n / ((q;q)_l (q;q)_{m-l} (q;q)_{n-l}) H_{m+n-2l}.
Series hermite_linearize(int m, int n, const Truncation& trunc);

// Coefficient c_{n,l} of H_{2l} in C_{2n}(z,t;q)/(t z^2, t z^-2; q)_inf,
// extracted by orthogonality.
Series hermite_expansion_coeff(int n, int l, const Truncation& trunc);
// The same coefficient from its product formula.
Series hermite_expansion_coeff_closed(int n, int l, const Truncation& trunc);

// Both sides of the bilateral expansion
//   (z^2,z^-2;q)_inf/(tz^2,tz^-2;q)_inf
//     = (t,tq;q)_inf (1 - z^-2)/(q,t^2;q)_inf * sum_k term_k z^{2k}.
Series weight_ratio(const Truncation& trunc);
Series weight_ratio_bilateral(const Truncation& trunc);
// term_k of the bilateral sum in its polynomial form (no negative powers).
Series bilateral_term(int k, const Truncation& trunc);

namespace fault {
// Perturbs qbinomial results; used to check that the self test notices.
void set_qbinomial_perturbation(bool enabled);
bool qbinomial_perturbation();
} // namespace fault

} // namespace qb
