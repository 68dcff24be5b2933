#include "qbailey/qfunctions.hpp"

#include <atomic>
#include <map>
#include <mutex>

namespace qb {

namespace {

const Monomial kQ{1, 0, 0, 0};

Monomial q_power(int k) { return Monomial{k, 0, 0, 0}; }

// Shifts every term of a by q^shift; throws if a q-exponent would go negative.
Series shift_q(const Series& a, int shift, const char* op) {
  std::vector<Series::Term> terms;
  for (const auto& [m, c] : a.terms()) {
    Monomial moved = m;
    moved.q += shift;
    if (moved.q < 0) {
      throw DomainError(std::string(op) + ": base " + render(a) + " times q^" + std::to_string(shift) +
                        " leaves the series ring; use the rational-point backend");
    }
    terms.emplace_back(moved, c);
  }
  return Series::from_terms(a.truncation(), std::move(terms));
}

bool single_term(const Series& a) { return a.size() == 1; }

// f * (1 - x) for a general series x.
Series times_one_minus(const Series& f, const Series& x) {
  if (single_term(x)) return f.mul_one_minus(x.terms()[0].second, x.terms()[0].first);
  return f - f * x;
}

// f / (1 - x); 1 - x must be a unit.
Series divided_by_one_minus(const Series& f, const Series& x, const char* op) {
  if (x.is_zero()) return f;
  if (single_term(x)) {
    const auto& [m, c] = x.terms()[0];
    if (m.degree() > 0) return f.div_one_minus(c, m);
    if (m.z != 0 || c == 1) {
      throw DomainError(std::string(op) + ": factor 1 - (" + render(x) + ") is not invertible");
    }
    return f * (Rational(1) / (Rational(1) - c));
  }
  Series one = Series::constant(f.truncation(), 1);
  try {
    return f * invert(one - x);
  } catch (const NonInvertibleError& e) {
    throw DomainError(std::string(op) + ": " + e.what());
  }
}

// Walks the factors (1 - a q^k), k = 0, 1, ..., calling visit on each
// nonzero a q^k; an infinite product stops at the first vanishing shift.
template <typename Visit>
void for_each_factor(const Series& base, int count, bool infinite, Visit&& visit) {
  const Truncation& tr = base.truncation();
  const int guard = tr.total_degree() + 2;
  Series shifted = base;
  for (int k = 0; infinite || k < count; ++k) {
    if (shifted.is_zero()) return;
    if (infinite && k > guard) {
      throw DomainError("poch_infinite: product over " + render(base) + " does not terminate");
    }
    visit(shifted);
    shifted = shifted.shifted(kQ);
  }
}

std::atomic<bool> g_perturb_qbinomial{false};

using Poly = std::vector<Integer>;

const Poly& qbinomial_poly(int M, int N) {
  static std::recursive_mutex mutex;
  static std::map<std::pair<int, int>, Poly> memo;
  static const Poly kEmpty;
  static const Poly kOne{Integer(1)};
  if (N < 0 || N > M) return kEmpty;
  if (N == 0 || N == M) return kOne;
  std::lock_guard lock(mutex);
  if (auto it = memo.find({M, N}); it != memo.end()) return it->second;
  // q-Pascal: [M,N] = [M-1,N-1] + q^N [M-1,N].
  const Poly& left = qbinomial_poly(M - 1, N - 1);
  const Poly& right = qbinomial_poly(M - 1, N);
  Poly out(static_cast<std::size_t>(N) * (M - N) + 1);
  for (std::size_t i = 0; i < left.size(); ++i) out[i] += left[i];
  for (std::size_t i = 0; i < right.size(); ++i) out[i + N] += right[i];
  return memo.emplace(std::pair{M, N}, std::move(out)).first->second;
}

} // namespace

namespace fault {
void set_qbinomial_perturbation(bool enabled) { g_perturb_qbinomial = enabled; }
bool qbinomial_perturbation() { return g_perturb_qbinomial; }
} // namespace fault

Series mono(const Truncation& trunc, int q, int t, int s, int z, const Rational& c) {
  return Series::monomial(trunc, Monomial{q, t, s, z}, c);
}

Series poch(const Series& base, int n) {
  const Truncation& tr = base.truncation();
  Series out = Series::constant(tr, 1);
  if (n >= 0) {
    for_each_factor(base, n, false, [&](const Series& x) { out = times_one_minus(out, x); });
    return out;
  }
  for (int j = 1; j <= -n; ++j) {
    out = divided_by_one_minus(out, shift_q(base, -j, "poch"), "poch");
  }
  return out;
}

Series poch_inv(const Series& base, int n) {
  const Truncation& tr = base.truncation();
  Series out = Series::constant(tr, 1);
  if (n >= 0) {
    for_each_factor(base, n, false, [&](const Series& x) { out = divided_by_one_minus(out, x, "poch_inv"); });
    return out;
  }
  for (int j = 1; j <= -n; ++j) out = times_one_minus(out, shift_q(base, -j, "poch_inv"));
  return out;
}

Series poch_infinite(const Series& base) {
  Series out = Series::constant(base.truncation(), 1);
  for_each_factor(base, 0, true, [&](const Series& x) { out = times_one_minus(out, x); });
  return out;
}

Series poch_infinite_inv(const Series& base) {
  Series out = Series::constant(base.truncation(), 1);
  for_each_factor(base, 0, true,
                  [&](const Series& x) { out = divided_by_one_minus(out, x, "poch_infinite_inv"); });
  return out;
}

Series combined_poch(const Rational& b, int n, const Truncation& trunc) {
  Series out = Series::constant(trunc, 1);
  for (int i = 0; i < n && !out.is_zero(); ++i) {
    out = out * b + out.shifted(q_power(i), -1);
  }
  return out;
}

Series qbinomial(int M, int N, const Truncation& trunc) {
  const Poly& poly = qbinomial_poly(M, N);
  std::vector<Series::Term> terms;
  for (std::size_t i = 0; i < poly.size() && static_cast<int>(i) <= trunc.max_q; ++i) {
    if (poly[i] != 0) terms.emplace_back(q_power(static_cast<int>(i)), Rational(poly[i]));
  }
  if (g_perturb_qbinomial && N > 0 && N < M) terms.emplace_back(q_power(1), Rational(1));
  return Series::from_terms(trunc, std::move(terms));
}

Series hermite(int n, const Truncation& trunc) {
  Series out(trunc);
  for (int j = 0; j <= n; ++j) out += qbinomial(n, j, trunc).shifted(Monomial{0, 0, 0, n - 2 * j});
  return out;
}

Series ultraspherical_coeff(int j, int n, const Series& param) {
  const Series q = mono(param.truncation(), 1);
  return poch(param, j) * poch(param, n - j) * poch_inv(q, j) * poch_inv(q, n - j);
}

Series ultraspherical(int n, const Series& param) {
  Series out(param.truncation());
  for (int j = 0; j <= n; ++j) {
    out += ultraspherical_coeff(j, n, param).shifted(Monomial{0, 0, 0, n - 2 * j});
  }
  return out;
}

Series ultraspherical(int n, const Truncation& trunc, Var param) {
  Monomial m;
  switch (param) {
  case Var::q: m.q = 1; break;
  case Var::t: m.t = 1; break;
  case Var::s: m.s = 1; break;
  case Var::z: throw UsageError("ultraspherical: the parameter must be q, t or s");
  }
  return ultraspherical(n, Series::monomial(trunc, m));
}

Series ct_z(const Series& f) {
  if (!(flip_z(f) == f)) {
    throw DomainError("ct_z: integrand is not symmetric under z -> 1/z: " + render(f));
  }
  std::vector<Series::Term> terms;
  for (const auto& term : f.terms()) {
    if (term.first.z == 0) terms.push_back(term);
  }
  return Series::from_terms(f.truncation(), std::move(terms));
}

Series hermite_weight(const Truncation& trunc) {
  return poch_infinite(mono(trunc, 0, 0, 0, 2)) * poch_infinite(mono(trunc, 0, 0, 0, -2));
}

Series ultraspherical_weight(const Truncation& trunc, Var param) {
  Monomial p;
  switch (param) {
  case Var::t: p.t = 1; break;
  case Var::s: p.s = 1; break;
  default: throw UsageError("ultraspherical_weight: parameter must be t or s");
  }
  const Series up = Series::monomial(trunc, p + Monomial{0, 0, 0, 2});
  const Series down = Series::monomial(trunc, p + Monomial{0, 0, 0, -2});
  return hermite_weight(trunc) * poch_infinite_inv(up) * poch_infinite_inv(down);
}

Series hermite_inner(int m, int n, const Truncation& trunc) {
  return ct_z(hermite(m, trunc) * hermite(n, trunc) * hermite_weight(trunc));
}

Series ultraspherical_inner(int m, int n, const Truncation& trunc) {
  if (!trunc.has_s()) throw UsageError("ultraspherical_inner: truncation needs an s-cap");
  return ct_z(ultraspherical(m, trunc, Var::s) * ultraspherical(n, trunc, Var::s) *
              ultraspherical_weight(trunc, Var::s));
}

Series hermite_norm(int n, const Truncation& trunc) {
  const Series q = mono(trunc, 1);
  return Rational(2) * poch(q, n) * poch_infinite_inv(q);
}

Series ultraspherical_norm(int n, const Truncation& trunc) {
  if (!trunc.has_s()) throw UsageError("ultraspherical_norm: truncation needs an s-cap");
  const Series q = mono(trunc, 1);
  const Series s = mono(trunc, 0, 0, 1);
  Series out = Series::constant(trunc, 2).mul_one_minus(1, Monomial{0, 0, 1, 0});
  out = out * poch(mono(trunc, 0, 0, 2), n) * poch_infinite(s) * poch_infinite(mono(trunc, 1, 0, 1));
  out = out.div_one_minus(1, Monomial{n, 0, 1, 0});
  return out * poch_inv(q, n) * poch_infinite_inv(q) * poch_infinite_inv(mono(trunc, 0, 0, 2));
}

Series hermite_linearize(int m, int n, const Truncation& trunc) {
  const Series q = mono(trunc, 1);
  Series out(trunc);
  const Series scale = poch(q, m) * poch(q, n);
  for (int l = 0; l <= std::min(m, n); ++l) {
    out += scale * poch_inv(q, l) * poch_inv(q, m - l) * poch_inv(q, n - l) * hermite(m + n - 2 * l, trunc);
  }
  return out;
}

Series hermite_expansion_coeff(int n, int l, const Truncation& trunc) {
  const Series q = mono(trunc, 1);
  const Series integrand = ultraspherical(2 * n, trunc, Var::t) * hermite(2 * l, trunc) * weight_ratio(trunc);
  return ct_z(integrand) * poch_infinite(q) * poch_inv(q, 2 * l) * Rational(1, 2);
}

Series hermite_expansion_coeff_closed(int n, int l, const Truncation& trunc) {
  if (l < n) return Series(trunc);
  const Series q = mono(trunc, 1);
  Series out = poch_infinite(mono(trunc, 0, 1)) * poch_infinite(mono(trunc, 1, 1));
  out = out * poch_infinite_inv(mono(trunc, 2 * n, 2));
  out = out * poch_inv(q, 2 * n) * poch_inv(q, l - n) * poch_inv(mono(trunc, 1, 1), l + n);
  return out.shifted(Monomial{0, l - n, 0, 0});
}

Series weight_ratio(const Truncation& trunc) { return ultraspherical_weight(trunc, Var::t); }

Series bilateral_term(int k, const Truncation& trunc) {
  Series out = Series::constant(trunc, 1);
  if (k >= 0) {
    // (t^{-1};q)_k t^k = prod_{i<k} (t - q^i)
    for (int i = 0; i < k && !out.is_zero(); ++i) {
      out = out.shifted(Monomial{0, 1, 0, 0}) + out.shifted(q_power(i), -1);
    }
    return out * poch_inv(mono(trunc, 0, 1), k);
  }
  // k = -m: (-1)^m prod_{j=1}^m (q^j - t)/(1 - t q^j)
  const int m = -k;
  for (int j = 1; j <= m && !out.is_zero(); ++j) {
    out = out.shifted(q_power(j)) + out.shifted(Monomial{0, 1, 0, 0}, -1);
  }
  if (m % 2 == 1) out *= Rational(-1);
  return out * poch_inv(mono(trunc, 1, 1), m);
}

Series weight_ratio_bilateral(const Truncation& trunc) {
  // term_k vanishes once the cheapest product monomial (at most max_t
  // factors contribute t, the rest the smallest available q-powers) leaves the q-cap.
  int a = 1;
  while (a * (a + 1) / 2 <= trunc.max_q) ++a;
  const int k_hi = a + trunc.max_t;     // term_k = 0 for k >= k_hi + 1
  const int m_hi = a + trunc.max_t - 1; // term_{-m} = 0 for m >= m_hi + 1

  Series sum(trunc);
  for (int k = -m_hi; k <= k_hi; ++k) sum += bilateral_term(k, trunc).shifted(Monomial{0, 0, 0, 2 * k});

  Series pre = poch_infinite(mono(trunc, 0, 1)) * poch_infinite(mono(trunc, 1, 1));
  pre = pre * poch_infinite_inv(mono(trunc, 1)) * poch_infinite_inv(mono(trunc, 0, 2));
  pre = pre.mul_one_minus(1, Monomial{0, 0, 0, -2});
  return pre * sum;
}

} // namespace qb
