#include "qbailey/macdonald.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <sstream>

#include "qbailey/parallel.hpp"
#include "qbailey/qfunctions.hpp"

namespace qb {

DynkinData DynkinData::d_odd(int k) {
  if (k < 1) throw UsageError("D_{2k+1} needs k >= 1");
  DynkinData d;
  d.k = k;
  const int r = 2 * k + 1;
  d.adjacency.assign(r, std::vector<int>(r, 0));
  auto link = [&](int i, int j) {
    d.adjacency[i - 1][j - 1] = 1;
    d.adjacency[j - 1][i - 1] = 1;
  };
  for (int i = 1; i <= 2 * k - 2; ++i) link(i, i + 1);
  link(2 * k - 1, 2 * k);
  link(2 * k - 1, 2 * k + 1);
  return d;
}

std::string to_string(Representation rep) {
  switch (rep) {
  case Representation::bosonic: return "bosonic";
  case Representation::fermionic: return "fermionic";
  case Representation::fermionic2: return "fermionic2";
  case Representation::original: return "original";
  }
  return "?";
}

Representation representation_from_string(const std::string& name) {
  for (auto rep : {Representation::bosonic, Representation::fermionic, Representation::fermionic2,
                   Representation::original}) {
    if (to_string(rep) == name) return rep;
  }
  throw UsageError("unknown representation '" + name + "'");
}

namespace {

void require_k(int k) {
  if (k < 1) throw UsageError("k must be at least 1");
}

// 1/(x;q)_d for d = 0..count-1.
std::vector<Series> inverse_table(const Series& x, int count) {
  std::vector<Series> out;
  out.reserve(count);
  for (int d = 0; d < count; ++d) out.push_back(poch_inv(x, d));
  return out;
}

// sum_j [2n, j]_q z^{2j - 2n}
Series hermite_even(int n, const Truncation& tr) {
  Series sum(tr);
  for (int j = 0; j <= 2 * n; ++j) sum += qbinomial(2 * n, j, tr).shifted(Monomial{0, 0, 0, 2 * j - 2 * n});
  return sum;
}

// sum_{u1,u2} [s, u1]_q [s, u2]_q z^{2u1 - 2u2}
Series hermite_pair(int s, const Truncation& tr) {
  Series row(tr);
  Series col(tr);
  for (int u = 0; u <= s; ++u) {
    row += qbinomial(s, u, tr).shifted(Monomial{0, 0, 0, 2 * u});
    col += qbinomial(s, u, tr).shifted(Monomial{0, 0, 0, -2 * u});
  }
  return row * col;
}

// Visits every n_1 <= ... <= n_k with n_1 + ... + n_k <= max_sum.
void for_each_chain(int k, int max_sum, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> n(k, 0);
  std::function<void(int, int, int)> rec = [&](int i, int lo, int used) {
    if (i == k) {
      visit(n);
      return;
    }
    for (int v = lo; used + v * (k - i) <= max_sum; ++v) {
      n[i] = v;
      rec(i + 1, v, used + v);
    }
  };
  rec(0, 0, 0);
}

// Visits every (s_1, ..., s_k) >= 0 with s_1 + ... + s_k <= max_sum.
void for_each_composition(int k, int max_sum, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> s(k, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == k) {
      visit(s);
      return;
    }
    for (int v = 0; used + v <= max_sum; ++v) {
      s[i] = v;
      rec(i + 1, used + v);
    }
  };
  rec(0, 0);
}

// Sums groups[key] * z_part(key) over the keys, in key order.
Series combine_groups(const Truncation& tr, const std::map<int, Series>& groups,
                      const std::function<Series(int)>& z_part) {
  std::vector<std::pair<int, const Series*>> items;
  for (const auto& [key, w] : groups) items.emplace_back(key, &w);
  return parallel_sum(tr, items.size(), [&](std::size_t i) {
    const auto& [key, w] = items[i];
    if (w->is_zero()) return Series(tr);
    return *w * z_part(key);
  });
}

// (q^{n+1};q)_n (t^2 q^{2n};q)_inf / ((t q^n;q)_n (t q^{2n+1};q)_inf) * sum_j C-coeff(j,2n) z^{2j-2n}
Series bosonic_body(int n, const Truncation& tr) {
  const Series t = mono(tr, 0, 1);
  Series inner(tr);
  for (int j = 0; j <= 2 * n; ++j) inner += ultraspherical_coeff(j, 2 * n, t).shifted(Monomial{0, 0, 0, 2 * j - 2 * n});
  return poch(mono(tr, n + 1), n) * poch_infinite(mono(tr, 2 * n, 2)) * poch_inv(mono(tr, n, 1), n) *
         poch_infinite_inv(mono(tr, 2 * n + 1, 1)) * inner;
}

Series bosonic_prefactor(const Truncation& tr) {
  return poch_infinite_inv(mono(tr, 0, 1)) * poch_infinite_inv(mono(tr, 0, 1, 0, 2)) *
         poch_infinite_inv(mono(tr, 0, 1, 0, -2));
}

// Sum over n of sign * q^{qexp(n)} t^{(k+1)n} * bosonic_body(n) * extra(n), times the prefactor.
Series bosonic_like(int k, const Truncation& tr, const std::function<int(int)>& q_exponent,
                    const std::function<Series(int)>& extra) {
  int top = 0;
  while ((k + 1) * (top + 1) <= tr.max_t) ++top;
  const Series sum = parallel_sum(tr, static_cast<std::size_t>(top + 1), [&](std::size_t idx) {
    const int n = static_cast<int>(idx);
    const int qe = q_exponent(n);
    if (qe > tr.max_q) return Series(tr);
    Series term = bosonic_body(n, tr);
    if (extra) term *= extra(n);
    return term.shifted(Monomial{qe, (k + 1) * n, 0, 0}, n % 2 == 0 ? 1 : -1);
  });
  return bosonic_prefactor(tr) * sum;
}

Series pow_series(const Series& f, int e) {
  Series out = Series::constant(f.truncation(), 1);
  for (int i = 0; i < e; ++i) out *= f;
  return out;
}

Series tq_infinite_power(int k, const Truncation& tr) {
  return pow_series(poch_infinite(mono(tr, 0, 1)) * poch_infinite(mono(tr, 1)), k);
}

} // namespace

Series bosonic_index(int k, const Truncation& trunc) {
  require_k(k);
  return bosonic_like(
      k, trunc, [k](int n) { return k * n * n + n * (n - 1) / 2; }, nullptr);
}

Series fermionic_index(int k, const Truncation& trunc) {
  require_k(k);
  const Truncation& tr = trunc;
  const auto qinv = inverse_table(mono(tr, 1), tr.max_t + 1);
  std::map<int, Series> groups;
  for_each_chain(k, tr.max_t, [&](const std::vector<int>& n) {
    int qe = 0;
    int te = 0;
    for (int i = 0; i < k; ++i) {
      te += n[i];
      if (i + 1 < k) qe += n[i] * n[i];
    }
    if (qe > tr.max_q) return;
    Series w = qinv[n[0]];
    for (int i = 1; i < k; ++i) w *= qinv[n[i] - n[i - 1]];
    auto [it, fresh] = groups.try_emplace(n[k - 1], tr);
    it->second += w.shifted(Monomial{qe, te, 0, 0});
  });
  return combine_groups(tr, groups, [&](int top) { return hermite_even(top, tr); });
}

Series fermionic2_index(int k, const Truncation& trunc) {
  require_k(k);
  const Truncation& tr = trunc;
  const auto qinv = inverse_table(mono(tr, 1), std::max(tr.max_q, tr.max_t) + 1);
  const auto tinv = inverse_table(mono(tr, 0, 1), tr.max_q + 1);
  // R(c) = sum_r q^{rc} / ((t;q)_r (q;q)_r), c >= 1.
  std::vector<Series> r_sum;
  for (int c = 0; c <= 2 * tr.max_t + 1; ++c) {
    Series acc(tr);
    if (c > 0) {
      for (int r = 0; r * c <= tr.max_q; ++r) acc += (tinv[r] * qinv[r]).shifted(Monomial{r * c, 0, 0, 0});
    }
    r_sum.push_back(std::move(acc));
  }
  std::map<int, Series> groups;
  for_each_composition(k, tr.max_t, [&](const std::vector<int>& s) {
    Series w = Series::constant(tr, 1);
    int te = 0;
    for (int i = 0; i < k; ++i) {
      const int prev = i == 0 ? 0 : s[i - 1];
      w *= r_sum[prev + s[i] + 1];
      w *= qinv[s[i]] * qinv[s[i]];
      te += s[i];
    }
    auto [it, fresh] = groups.try_emplace(s[k - 1], tr);
    it->second += w.shifted(Monomial{0, te, 0, 0});
  });
  return tq_infinite_power(k, tr) * combine_groups(tr, groups, [&](int top) { return hermite_pair(top, tr); });
}

Series original_index(int k, const Truncation& trunc) {
  require_k(k);
  const Truncation& tr = trunc;
  const DynkinData dynkin = DynkinData::d_odd(k);
  const int rank = dynkin.rank();
  const int cap = std::max(tr.max_q, tr.max_t);
  const auto qinv = inverse_table(mono(tr, 1), cap + 1);
  const auto tinv = inverse_table(mono(tr, 0, 1), cap + 1);

  auto half = [](int x) {
    Rational r(x, 2);
    r.canonicalize();
    return r;
  };
  auto integral = [](const Rational& x, const char* what) {
    if (!is_integer(x)) throw InternalConsistencyError(std::string("non-integral ") + what + " exponent " + x.get_str());
    return static_cast<int>(x.get_num().get_si());
  };

  // Index vectors are 1-based: l[1..rank], m[1..rank].
  std::vector<int> l(rank + 1, 0);
  std::vector<int> m(rank + 1, 0);
  std::map<int, Series> by_z;

  auto emit = [&] {
    Rational qe = 0;
    for (int i = 1; i <= rank; ++i) {
      for (int j = 1; j <= rank; ++j) {
        if (dynkin.at(i, j) != 0) qe += half(dynkin.at(i, j) * l[i] * m[j]);
      }
    }
    Rational te = 0;
    for (int i = 1; i <= k; ++i) {
      qe += half(l[2 * i - 1] + m[2 * i - 1]);
      te += half(l[2 * i] + m[2 * i]);
    }
    te += half(l[rank] + m[rank]);
    const int q_exp = integral(qe, "q");
    const int t_exp = integral(te, "t");
    if (q_exp > tr.max_q || t_exp > tr.max_t) return;

    Series w = qinv[l[rank]] * qinv[m[rank]];
    for (int i = 1; i <= k; ++i) {
      w *= qinv[l[2 * i]] * qinv[m[2 * i]];
      w *= tinv[l[2 * i - 1]] * qinv[m[2 * i - 1]];
    }
    auto [it, fresh] = by_z.try_emplace(2 * m[rank] - 2 * l[rank], tr);
    it->second += w.shifted(Monomial{q_exp, t_exp, 0, 0});
  };

  // Odd nodes carry q^{(l+m)/2} >= q^l, even nodes t^{(l+m)/2} >= t^l, so
  // partial sums over each parity prune whole subtrees.
  std::function<void(int, int, int)> rec = [&](int i, int q_used, int t_used) {
    if (i == rank) {
      // l_{2k+1} free; m_{2k} chosen, m_{2k+1} fixed by the delta.
      for (int last = 0; t_used + last <= tr.max_t; ++last) {
        l[rank] = last;
        const int total = l[rank - 1] + l[rank];
        for (int mk = 0; mk <= total; ++mk) {
          m[rank - 1] = mk;
          m[rank] = total - mk;
          emit();
        }
      }
      return;
    }
    const bool odd = i % 2 == 1;
    for (int v = 0; odd ? q_used + v <= tr.max_q : t_used + v <= tr.max_t; ++v) {
      l[i] = v;
      if (i <= 2 * k - 1) m[i] = v;
      rec(i + 1, odd ? q_used + v : q_used, odd ? t_used : t_used + v);
    }
  };
  rec(1, 0, 0);

  Series sum(tr);
  for (const auto& [e, w] : by_z) sum += w.shifted(Monomial{0, 0, 0, e});
  return tq_infinite_power(k, tr) * sum;
}

Series macdonald_index(int k, Representation rep, const Truncation& trunc) {
  switch (rep) {
  case Representation::bosonic: return bosonic_index(k, trunc);
  case Representation::fermionic: return fermionic_index(k, trunc);
  case Representation::fermionic2: return fermionic2_index(k, trunc);
  case Representation::original: return original_index(k, trunc);
  }
  throw UsageError("unknown representation");
}

Series unrefined_fermionic_direct(int k, const Truncation& trunc) {
  require_k(k);
  const Truncation& tr = trunc;
  Series sum(tr);
  for_each_chain(k, tr.max_t, [&](const std::vector<int>& n) {
    int qe = 0;
    int te = 0;
    for (int i = 0; i < k; ++i) {
      te += n[i];
      if (i + 1 < k) qe += n[i] * n[i];
    }
    if (qe > tr.max_q) return;
    Series w = poch_inv(mono(tr, 1), n[0]);
    for (int i = 1; i < k; ++i) w *= poch_inv(mono(tr, 1), n[i] - n[i - 1]);
    Series binomials(tr);
    for (int j = 0; j <= 2 * n[k - 1]; ++j) binomials += qbinomial(2 * n[k - 1], j, tr);
    sum += (w * binomials).shifted(Monomial{qe, te, 0, 0});
  });
  return sum;
}

GeneralizedSides generalized_sides(const ChainParams& params, const Truncation& trunc) {
  params.validate();
  const int k = params.k;
  const Truncation& tr = trunc;
  const auto qinv = inverse_table(mono(tr, 1), tr.max_t + 1);
  std::vector<std::vector<Series>> b_inv(k), c_inv(k), bc_poch(k);
  for (int i = 0; i < k; ++i) {
    b_inv[i] = inverse_table(mono(tr, 1, 1, 0, 0, params.b[i]), tr.max_t + 1);
    c_inv[i] = inverse_table(mono(tr, 1, 1, 0, 0, params.c[i]), tr.max_t + 1);
    for (int d = 0; d <= tr.max_t; ++d) bc_poch[i].push_back(poch(mono(tr, 1, 1, 0, 0, params.b[i] * params.c[i]), d));
  }

  std::map<int, Series> groups;
  for_each_chain(k, tr.max_t, [&](const std::vector<int>& n) {
    int te = 0;
    int qe = 0;
    for (int i = 0; i < k; ++i) {
      te += n[i];
      if (i + 1 < k) qe += n[i];
    }
    if (qe > tr.max_q) return;
    Series w = Series::constant(tr, 1);
    for (int i = 0; i < k; ++i) {
      const int prev = i == 0 ? 0 : n[i - 1];
      w *= qinv[n[i] - prev] * bc_poch[i][n[i] - prev] * b_inv[i][n[i]] * c_inv[i][n[i]];
      if (i > 0) w *= combined_poch(params.b[i], prev, tr) * combined_poch(params.c[i], prev, tr);
    }
    auto [it, fresh] = groups.try_emplace(n[k - 1], tr);
    it->second += w.shifted(Monomial{qe, te, 0, 0});
  });
  Series lhs = combine_groups(tr, groups, [&](int top) { return hermite_even(top, tr); });

  Series rhs = bosonic_like(
      k, tr, [k](int n) { return k * n + n * (n - 1) / 2; },
      [&](int n) {
        Series f = Series::constant(tr, 1);
        for (int i = 0; i < k; ++i) {
          f *= combined_poch(params.b[i], n, tr) * combined_poch(params.c[i], n, tr) * b_inv[i][n] * c_inv[i][n];
        }
        return f;
      });
  return {std::move(lhs), std::move(rhs)};
}

IdentityReport generalized_identity(const ChainParams& params, const Truncation& trunc) {
  IdentityReport report("thm-general");
  ReportTimer timer(report);
  report.truncation = trunc;
  report.param("k", params.k);
  std::string bs, cs;
  for (int i = 0; i < params.k && i < static_cast<int>(params.b.size()); ++i) {
    bs += (i ? "," : "") + params.b[i].get_str();
  }
  for (int i = 0; i < params.k && i < static_cast<int>(params.c.size()); ++i) {
    cs += (i ? "," : "") + params.c[i].get_str();
  }
  report.param("b", bs).param("c", cs);
  const auto sides = generalized_sides(params, trunc);
  report.compare(sides.lhs, sides.rhs);
  return report;
}

IdentityReport multi_rogers_ramanujan(int k, int max_q) {
  require_k(k);
  if (max_q < 0) throw UsageError("max_q must be nonnegative");
  IdentityReport report("multi-rr");
  ReportTimer timer(report);
  const Truncation tr(max_q, 0);
  report.truncation = tr;
  report.param("k", k);

  const Series q = mono(tr, 1);
  Series lhs(tr);
  // n_1^2 + ... + n_k^2 <= max_q; the largest part is at most sqrt(max_q).
  int reach = 0;
  while ((reach + 1) * (reach + 1) <= max_q) ++reach;
  std::function<void(int, int, int, Series)> rec = [&](int i, int lo, int qe, Series w) {
    if (i == k) {
      lhs += w.shifted(Monomial{qe, 0, 0, 0});
      return;
    }
    for (int v = lo; v <= reach && qe + v * v <= max_q; ++v) rec(i + 1, v, qe + v * v, w * poch_inv(q, v - lo));
  };
  rec(0, 0, 0, Series::constant(tr, 1));

  Series bilateral(tr);
  int bound = 0;
  while (bound * bound * (k + 1) < max_q) ++bound;
  bound += 1;
  for (int n = -bound; n <= bound; ++n) {
    const int e = (k + 1) * n * n + n * (n - 1) / 2;
    bilateral += Series::monomial(tr, Monomial{e, 0, 0, 0}, n % 2 == 0 ? 1 : -1);
  }
  report.param("bilateral_bound", bound);
  report.compare(lhs, poch_infinite_inv(q) * bilateral);
  return report;
}

std::string to_string(Specialization mode) {
  switch (mode) {
  case Specialization::schur: return "schur";
  case Specialization::hall_littlewood: return "hall-littlewood";
  case Specialization::unrefined: return "unrefined";
  }
  return "?";
}

Series specialize_index(const Series& f, Specialization mode) {
  switch (mode) {
  case Specialization::schur: return specialize(f, Var::t, Monomial{1, 0, 0, 0});
  case Specialization::hall_littlewood: return specialize(f, Var::q, Rational(0));
  case Specialization::unrefined: return specialize(f, Var::z, Rational(1));
  }
  throw UsageError("unknown specialization");
}

namespace {

void require_table_shape(const Series& f) {
  for (const auto& [m, c] : f.terms()) {
    if (m.s != 0) throw UsageError("coefficient tables cover q, t, z only; the series depends on s");
  }
}

} // namespace

std::string table_csv(const Series& f) {
  require_table_shape(f);
  std::ostringstream out;
  for (const auto& [m, c] : f.terms()) {
    out << m.q << ',' << m.t << ',' << m.z << ',' << c.get_num().get_str() << ',' << c.get_den().get_str() << '\n';
  }
  return out.str();
}

std::string table_json(const Series& f) {
  require_table_shape(f);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [m, c] : f.terms()) {
    rows.push_back({{"e_q", m.q}, {"e_t", m.t}, {"e_z", m.z}, {"num", c.get_num().get_str()},
                    {"den", c.get_den().get_str()}});
  }
  return rows.dump() + "\n";
}

} // namespace qb
