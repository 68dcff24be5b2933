#include "qbailey/bailey.hpp"

#include <map>
#include <mutex>

#include "qbailey/parallel.hpp"
#include "qbailey/qfunctions.hpp"

namespace qb {

std::string to_string(FamilyKind kind) {
  switch (kind) {
  case FamilyKind::alpha: return "alpha";
  case FamilyKind::beta: return "beta";
  case FamilyKind::gamma: return "gamma";
  case FamilyKind::delta: return "delta";
  }
  return "?";
}

struct PairFamily::Memo {
  Generator generator;
  std::mutex mutex;
  std::map<int, Series> reduced;
  std::map<int, Series> full;
};

PairFamily::PairFamily(FamilyKind kind, const Truncation& trunc, Generator reduced, std::optional<int> support_bound,
                       int t_step)
    : kind_(kind), trunc_(trunc), bound_(support_bound), t_step_(t_step), memo_(std::make_shared<Memo>()) {
  if (t_step < 0) throw UsageError("PairFamily: t_step must be nonnegative");
  memo_->generator = std::move(reduced);
}

const Series& PairFamily::reduced(int n) const {
  if (n < 0) throw UsageError("PairFamily: negative index " + std::to_string(n));
  {
    std::lock_guard lock(memo_->mutex);
    auto it = memo_->reduced.find(n);
    if (it != memo_->reduced.end()) return it->second;
  }
  Series value = memo_->generator(n);
  if (!(value.truncation() == trunc_)) throw UsageError("PairFamily: generator returned a foreign truncation");
  std::lock_guard lock(memo_->mutex);
  return memo_->reduced.emplace(n, std::move(value)).first->second;
}

const Series& PairFamily::at(int n) const {
  if (n < 0) throw UsageError("PairFamily: negative index " + std::to_string(n));
  {
    std::lock_guard lock(memo_->mutex);
    auto it = memo_->full.find(n);
    if (it != memo_->full.end()) return it->second;
  }
  Series value(trunc_);
  const bool beyond = (bound_ && n > *bound_) || t_step_ * n > trunc_.max_t;
  if (!beyond) value = t_step_ == 0 ? reduced(n) : reduced(n).shifted(Monomial{0, t_step_ * n, 0, 0});
  std::lock_guard lock(memo_->mutex);
  return memo_->full.emplace(n, std::move(value)).first->second;
}

ChainParams ChainParams::zeros(int k) {
  return ChainParams{k, std::vector<Rational>(k > 0 ? k : 0), std::vector<Rational>(k > 0 ? k : 0)};
}

void ChainParams::validate() const {
  if (k < 1) throw UsageError("chain depth k must be at least 1");
  if (static_cast<int>(b.size()) != k || static_cast<int>(c.size()) != k) {
    throw UsageError("chain parameters need exactly k values of b and of c");
  }
}

namespace {

// Largest n with C(n,2) <= cap.
int binomial_reach(int cap) {
  int n = 0;
  while ((n + 1) * n / 2 <= cap) ++n;
  return n;
}

std::string index_location(const std::string& name, int n) { return name + "=" + std::to_string(n); }

} // namespace

BaileyPair seed_pair(const Truncation& trunc) {
  PairFamily alpha(
      FamilyKind::alpha, trunc,
      [trunc](int n) {
        if (n == 0) return Series::constant(trunc, 1);
        const Series q = mono(trunc, 1);
        const Series tq = mono(trunc, 1, 1);
        const Rational sign = (n % 2 == 0) ? 1 : -1;
        const Series body = (poch(tq, n - 1) * poch_inv(q, n)).mul_one_minus(1, Monomial{2 * n, 1, 0, 0});
        return body.shifted(Monomial{n * (n - 1) / 2, 0, 0, 0}, sign);
      },
      binomial_reach(trunc.max_q));
  PairFamily beta(
      FamilyKind::beta, trunc, [trunc](int n) { return n == 0 ? Series::constant(trunc, 1) : Series(trunc); }, 0);
  return {alpha, beta};
}

IdentityReport verify_bailey_pair(const BaileyPair& pair, int n_max) {
  IdentityReport report("bailey-pair");
  ReportTimer timer(report);
  const Truncation& tr = pair.alpha.truncation();
  report.truncation = tr;
  report.param("n_max", n_max);
  const Series q = mono(tr, 1);
  const Series tq = mono(tr, 1, 1);
  const auto rhs = parallel_map(static_cast<std::size_t>(n_max + 1), [&](std::size_t idx) {
    const int n = static_cast<int>(idx);
    Series sum(tr);
    for (int l = 0; l <= n; ++l) {
      const Series& a = pair.alpha.at(l);
      if (a.is_zero()) continue;
      sum += a * poch_inv(q, n - l) * poch_inv(tq, n + l);
    }
    return sum;
  });
  for (int n = 0; n <= n_max; ++n) report.compare(pair.beta.at(n), rhs[n], index_location("n", n));
  return report;
}

BaileyPair chain_lift(const BaileyPair& pair, const ChainParams& params) {
  params.validate();
  BaileyPair current = pair;
  const Truncation tr = pair.alpha.truncation();
  for (int i = 0; i < params.k; ++i) {
    const Rational b = params.b[i];
    const Rational c = params.c[i];
    const BaileyPair prev = current;
    const Series btq = mono(tr, 1, 1, 0, 0, b);
    const Series ctq = mono(tr, 1, 1, 0, 0, c);

    std::optional<int> alpha_bound = tr.max_t;
    if (prev.alpha.support_bound()) alpha_bound = std::min(*alpha_bound, *prev.alpha.support_bound());
    PairFamily alpha(
        FamilyKind::alpha, tr,
        [=](int n) {
          const Series& a = prev.alpha.at(n);
          if (a.is_zero()) return Series(tr);
          return (combined_poch(b, n, tr) * combined_poch(c, n, tr) * poch_inv(btq, n) * poch_inv(ctq, n) * a)
              .shifted(Monomial{n, n, 0, 0});
        },
        alpha_bound);

    PairFamily beta(
        FamilyKind::beta, tr,
        [=](int n) {
          const Series q = mono(tr, 1);
          const Series bctq = mono(tr, 1, 1, 0, 0, b * c);
          int top = std::min(n, tr.max_t);
          if (prev.beta.support_bound()) top = std::min(top, *prev.beta.support_bound());
          Series sum(tr);
          for (int j = 0; j <= top; ++j) {
            const Series& bj = prev.beta.at(j);
            if (bj.is_zero()) continue;
            sum += (poch(bctq, n - j) * poch_inv(q, n - j) * combined_poch(b, j, tr) * combined_poch(c, j, tr) * bj)
                       .shifted(Monomial{j, j, 0, 0});
          }
          return sum * poch_inv(btq, n) * poch_inv(ctq, n);
        },
        std::nullopt);
    current = BaileyPair{alpha, beta};
  }
  return current;
}

namespace {

// sum_j coeff(j, 2n) z^{j-n} for the C-coefficients with the given parameter.
Series half_step_ultraspherical(int n, const Series& param) {
  const Truncation& tr = param.truncation();
  Series sum(tr);
  for (int j = 0; j <= 2 * n; ++j) sum += ultraspherical_coeff(j, 2 * n, param).shifted(Monomial{0, 0, 0, j - n});
  return sum;
}

Series half_step_hermite(int n, const Truncation& tr) {
  Series sum(tr);
  for (int j = 0; j <= 2 * n; ++j) sum += qbinomial(2 * n, j, tr).shifted(Monomial{0, 0, 0, j - n});
  return sum;
}

// gamma_n / t^n without the prefactor common to all n.
Series gamma_body(int n, const Truncation& tr) {
  const Series q = mono(tr, 1);
  const Series t = mono(tr, 0, 1);
  return poch(q, 2 * n) * poch_infinite(mono(tr, 2 * n, 2)) * half_step_ultraspherical(n, t);
}

Series gamma_prefactor(const Truncation& tr) {
  return poch_infinite_inv(mono(tr, 0, 1)) * poch_infinite_inv(mono(tr, 1, 1)) *
         poch_infinite_inv(mono(tr, 0, 1, 0, 1)) * poch_infinite_inv(mono(tr, 0, 1, 0, -1));
}

} // namespace

ConjugatePair hermite_conjugate_pair(const Truncation& trunc) {
  const Truncation tr(trunc.max_q, trunc.max_t, trunc.max_s);
  auto prefactor = std::make_shared<const Series>(gamma_prefactor(tr));
  PairFamily gamma(
      FamilyKind::gamma, tr, [tr, prefactor](int n) { return gamma_body(n, tr) * *prefactor; }, tr.max_t, 1);
  PairFamily delta(
      FamilyKind::delta, tr, [tr](int n) { return half_step_hermite(n, tr); }, tr.max_t, 1);
  return {gamma, delta};
}

IdentityReport verify_conjugate_pair(const ConjugatePair& pair, int n_max) {
  IdentityReport report("conjugate-pair");
  ReportTimer timer(report);
  const Truncation& tr = pair.gamma.truncation();
  report.truncation = tr;
  report.param("n_max", n_max);
  if (!pair.delta.support_bound()) throw UsageError("verify_conjugate_pair: delta family has no support bound");
  const int bound = *pair.delta.support_bound();
  const Series q = mono(tr, 1);
  const Series tq = mono(tr, 1, 1);
  const auto rhs = parallel_map(static_cast<std::size_t>(n_max + 1), [&](std::size_t idx) {
    const int n = static_cast<int>(idx);
    Series sum(tr);
    for (int l = n; l <= bound; ++l) {
      const Series& d = pair.delta.at(l);
      if (d.is_zero()) continue;
      sum += d * poch_inv(q, l - n) * poch_inv(tq, l + n);
    }
    return sum;
  });
  for (int n = 0; n <= n_max; ++n) report.compare(pair.gamma.at(n), rhs[n], index_location("n", n));
  return report;
}

namespace {

std::optional<int> product_bound(const PairFamily& f, const PairFamily& g) {
  const auto a = f.support_bound();
  const auto b = g.support_bound();
  if (a && b) return std::min(*a, *b);
  return a ? a : b;
}

Series transform_side(const PairFamily& f, const PairFamily& g, const std::string& side) {
  const auto bound = product_bound(f, g);
  if (!bound) throw UsageError("bailey_transform_check: " + side + " has no finite support bound");
  return parallel_sum(f.truncation(), static_cast<std::size_t>(*bound + 1), [&](std::size_t idx) {
    const int n = static_cast<int>(idx);
    const Series& a = f.at(n);
    const Series& b = g.at(n);
    if (a.is_zero() || b.is_zero()) return Series(f.truncation());
    return a * b;
  });
}

} // namespace

IdentityReport bailey_transform_check(const BaileyPair& pair, const ConjugatePair& conj) {
  IdentityReport report("bailey-transform");
  ReportTimer timer(report);
  const Truncation& tr = pair.alpha.truncation();
  if (!(pair.beta.truncation() == tr) || !(conj.gamma.truncation() == tr) || !(conj.delta.truncation() == tr)) {
    throw UsageError("bailey_transform_check: families use different truncations");
  }
  report.truncation = tr;
  report.compare(transform_side(pair.alpha, conj.gamma, "sum alpha_n gamma_n"),
                 transform_side(pair.beta, conj.delta, "sum beta_n delta_n"));
  return report;
}

ConjugatePair wp_conjugate_pair(const Truncation& trunc) {
  if (!trunc.has_s()) throw UsageError("well-poised pairs need an s cap");
  const Truncation tr = trunc;
  auto gamma_pre = std::make_shared<const Series>(gamma_prefactor(tr) * poch_infinite(mono(tr, 0, 0, 1, 1)) *
                                                  poch_infinite(mono(tr, 0, 0, 1, -1)));
  // 1/((1-s)(s;q)_inf (sq;q)_inf); every factor has constant term 1.
  auto delta_pre = std::make_shared<const Series>(Series::constant(tr, 1).div_one_minus(1, Monomial{0, 0, 1, 0}) *
                                                  poch_infinite_inv(mono(tr, 0, 0, 1)) *
                                                  poch_infinite_inv(mono(tr, 1, 0, 1)));
  PairFamily gamma(
      FamilyKind::gamma, tr, [tr, gamma_pre](int n) { return gamma_body(n, tr) * *gamma_pre; }, tr.max_t, 1);
  PairFamily delta(
      FamilyKind::delta, tr,
      [tr, delta_pre](int n) {
        const Series q = mono(tr, 1);
        const Series s = mono(tr, 0, 0, 1);
        const Series body = (poch(q, 2 * n) * poch_infinite(mono(tr, 2 * n, 0, 2)) * half_step_ultraspherical(n, s))
                                .mul_one_minus(1, Monomial{2 * n, 0, 1, 0});
        return body * *delta_pre;
      },
      tr.max_t, 1);
  return {gamma, delta};
}

IdentityReport verify_wp_conjugate(const ConjugatePair& pair, int n_max) {
  IdentityReport report("wp-conjugate-pair");
  ReportTimer timer(report);
  const Truncation& tr = pair.gamma.truncation();
  if (!tr.has_s()) throw UsageError("verify_wp_conjugate: truncation has no s cap");
  if (pair.delta.t_step() != 1) {
    throw UsageError("verify_wp_conjugate: delta family must expose its t^l prefactor (t_step = 1)");
  }
  report.truncation = tr;
  report.param("n_max", n_max);
  const Series q = mono(tr, 1);
  const Series s = mono(tr, 0, 0, 1);
  const Series t = mono(tr, 0, 1);
  const Series tq = mono(tr, 1, 1);
  const int span = tr.max_t + tr.s_cap();
  const auto rhs = parallel_map(static_cast<std::size_t>(n_max + 1), [&](std::size_t idx) {
    const int n = static_cast<int>(idx);
    Series sum(tr);
    Series absorbed = Series::constant(tr, 1); // prod_{i < l-n} (t - s q^i)
    for (int l = n; l <= n + span; ++l) {
      if (l > n) absorbed *= t - s.shifted(Monomial{l - n - 1, 0, 0, 0});
      if (absorbed.is_zero()) break;
      sum += absorbed * poch(s, l + n) * poch_inv(q, l - n) * poch_inv(tq, l + n) * pair.delta.reduced(l);
    }
    return sum.shifted(Monomial{0, n, 0, 0});
  });
  for (int n = 0; n <= n_max; ++n) report.compare(pair.gamma.at(n), rhs[n], index_location("n", n));
  return report;
}

IdentityReport wp_specialization_check(const Truncation& trunc, int n_max) {
  IdentityReport report("wp-s-zero");
  ReportTimer timer(report);
  report.truncation = trunc;
  report.param("n_max", n_max);
  const Truncation plain(trunc.max_q, trunc.max_t);
  const ConjugatePair wp = wp_conjugate_pair(trunc);
  const ConjugatePair ordinary = hermite_conjugate_pair(plain);
  for (int n = 0; n <= n_max; ++n) {
    report.compare(wp.gamma.at(n).retruncated(plain), ordinary.gamma.at(n), index_location("gamma n", n));
    report.compare(wp.delta.at(n).retruncated(plain), ordinary.delta.at(n), index_location("delta n", n));
  }
  return report;
}

} // namespace qb
