#include "qbailey/hypergeometric.hpp"

#include <chrono>
#include <sstream>

#include "qbailey/qfunctions.hpp"

namespace qb {

RationalPoint::RationalPoint(std::initializer_list<std::pair<const std::string, Rational>> values)
    : values_(values) {}

RationalPoint& RationalPoint::set(const std::string& name, const Rational& value) {
  values_[name] = value;
  return *this;
}

const Rational& RationalPoint::operator[](const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw UsageError("rational point has no value for '" + name + "'");
  return it->second;
}

const Rational& RationalPoint::denominator(const Rational& value, const std::string& label) {
  log_.push_back(label);
  if (sgn(value) == 0) throw PoleError(label + " at " + describe());
  return value;
}

void RationalPoint::require_q_generic(int bound) const {
  const Rational& q = (*this)["q"];
  if (sgn(q) == 0) throw DomainError("q must be nonzero");
  Rational power = 1;
  for (int j = 1; j <= bound; ++j) {
    power *= q;
    if (power == 1) throw DomainError("q is a root of unity of order " + std::to_string(j));
  }
}

std::string RationalPoint::describe() const {
  std::string out;
  for (const auto& [k, v] : values_) {
    if (!out.empty()) out += ",";
    out += k + "=" + v.get_str();
  }
  return out;
}

Rational qpoch(const Rational& a, int n, RationalPoint& point, const std::string& label) {
  const Rational& q = point["q"];
  Rational out = 1;
  if (n >= 0) {
    Rational qk = 1;
    for (int k = 0; k < n; ++k) {
      out *= 1 - a * qk;
      qk *= q;
    }
    return out;
  }
  Rational denom = 1;
  for (int j = 1; j <= -n; ++j) denom *= 1 - a * pow(q, -j);
  return out / point.denominator(denom, "(" + label + ";q)_" + std::to_string(n));
}

Rational qpoch_recip(const Rational& a, int n, RationalPoint& point, const std::string& label) {
  if (n >= 0) {
    const Rational value = qpoch(a, n, point, label);
    return Rational(1) / point.denominator(value, "(" + label + ";q)_" + std::to_string(n));
  }
  const Rational& q = point["q"];
  Rational out = 1;
  for (int j = 1; j <= -n; ++j) out *= 1 - a * pow(q, -j);
  return out;
}

Rational qbinomial_at(int M, int N, RationalPoint& point) {
  if (N < 0 || N > M) return 0;
  const Rational& q = point["q"];
  return qpoch(q, M, point, "q") * qpoch_recip(q, N, point, "q") * qpoch_recip(q, M - N, point, "q");
}

Rational phi_terminating(const PhiSpec& spec, RationalPoint& point) {
  const Rational& q = point["q"];
  const int n = spec.termination;
  if (n < 0) throw UsageError("phi_terminating: termination index must be nonnegative");
  const Rational terminator = pow(q, -n);
  int count = 0;
  for (const auto& a : spec.upper) count += (a == terminator) ? 1 : 0;
  if (count != 1) {
    throw DomainError("phi_terminating: expected exactly one upper parameter equal to q^-" + std::to_string(n) +
                      ", found " + std::to_string(count));
  }
  point.require_q_generic(n + 1);

  const int balance = 1 + static_cast<int>(spec.lower.size()) - static_cast<int>(spec.upper.size());
  Rational sum = 0;
  Rational term = 1;
  Rational qk = 1;
  for (int k = 0; k <= n; ++k) {
    sum += term;
    // term_{k+1} / term_k
    Rational ratio = spec.argument;
    for (const auto& a : spec.upper) ratio *= 1 - a * qk;
    for (std::size_t i = 0; i < spec.lower.size(); ++i) {
      ratio /= point.denominator(1 - spec.lower[i] * qk, "(b" + std::to_string(i + 1) + ";q)_" + std::to_string(k + 1));
    }
    ratio /= point.denominator(1 - qk * q, "(q;q)_" + std::to_string(k + 1));
    if (balance != 0) ratio *= pow(-qk, balance);
    term *= ratio;
    qk *= q;
  }
  return sum;
}

std::string to_string(ClassicalIdentity id) {
  switch (id) {
  case ClassicalIdentity::pfaff_saalschutz: return "pfaff-saalschutz";
  case ClassicalIdentity::chu_vandermonde_2: return "chu-vandermonde-2";
  case ClassicalIdentity::qbinomial_theorem: return "qbinomial-theorem";
  case ClassicalIdentity::sixphi5: return "sixphi5";
  case ClassicalIdentity::heine_1: return "heine-1";
  }
  return "?";
}

ClassicalIdentity classical_identity_from_string(const std::string& name) {
  for (auto id : {ClassicalIdentity::pfaff_saalschutz, ClassicalIdentity::chu_vandermonde_2,
                  ClassicalIdentity::qbinomial_theorem, ClassicalIdentity::sixphi5, ClassicalIdentity::heine_1}) {
    if (to_string(id) == name) return id;
  }
  throw UsageError("unknown classical identity '" + name + "'");
}

std::vector<std::string> classical_variables(ClassicalIdentity id) {
  switch (id) {
  case ClassicalIdentity::pfaff_saalschutz: return {"q", "a", "b", "c"};
  case ClassicalIdentity::chu_vandermonde_2: return {"q", "a", "c"};
  case ClassicalIdentity::qbinomial_theorem: return {"q", "z"};
  case ClassicalIdentity::sixphi5: return {"q", "alpha", "b", "c"};
  case ClassicalIdentity::heine_1: return {"alpha", "beta", "gamma"};
  }
  return {};
}

namespace {

// Heine's first transformation in Q[[q, t]] with the argument z carried by t:
//   2phi1(a, b; c; q, z) = (b, az; q)_inf / (c, z; q)_inf * 2phi1(c/b, z; az; q, b)
// at a = alpha, b = beta q, c = gamma q.
void heine_check(RationalPoint& point, IdentityReport& report) {
  const Truncation tr(8, 8);
  const Rational alpha = point["alpha"];
  const Rational beta = point["beta"];
  const Rational gamma = point["gamma"];
  const Series q = mono(tr, 1);
  const Series a = Series::constant(tr, alpha);
  const Series b = mono(tr, 1, 0, 0, 0, beta);
  const Series c = mono(tr, 1, 0, 0, 0, gamma);
  const Series z = mono(tr, 0, 1);
  const Series az = mono(tr, 0, 1, 0, 0, alpha);

  Series lhs(tr);
  for (int k = 0; k <= tr.max_t; ++k) {
    lhs += (poch(a, k) * poch(b, k) * poch_inv(q, k) * poch_inv(c, k)).shifted(Monomial{0, k, 0, 0});
  }

  Series inner(tr);
  const Series c_over_b = Series::constant(tr, gamma / beta);
  for (int k = 0; k <= tr.max_q; ++k) {
    inner += (poch(c_over_b, k) * poch(z, k) * poch_inv(q, k) * poch_inv(az, k))
                 .shifted(Monomial{k, 0, 0, 0}, pow(beta, k));
  }
  const Series rhs = poch_infinite(b) * poch_infinite(az) * poch_infinite_inv(c) * poch_infinite_inv(z) * inner;
  report.truncation = tr;
  report.compare(lhs, rhs);
}

} // namespace

IdentityReport classical_check(ClassicalIdentity id, RationalPoint& point, int n) {
  IdentityReport report(to_string(id));
  ReportTimer timer(report);
  report.param("n", n);
  if (id == ClassicalIdentity::heine_1) {
    heine_check(point, report);
    return report;
  }

  const Rational& q = point["q"];
  const Rational qn = pow(q, -n);
  Rational lhs;
  Rational rhs;
  switch (id) {
  case ClassicalIdentity::pfaff_saalschutz: {
    const Rational &a = point["a"], &b = point["b"], &c = point["c"];
    const Rational lower2 = a * b * pow(q, 1 - n) / point.denominator(c, "c");
    lhs = phi_terminating({{a, b, qn}, {c, lower2}, q, n}, point);
    rhs = qpoch(c / a, n, point, "c/a") * qpoch(c / b, n, point, "c/b") * qpoch_recip(c, n, point, "c") *
          qpoch_recip(c / (a * b), n, point, "c/(ab)");
    break;
  }
  case ClassicalIdentity::chu_vandermonde_2: {
    const Rational &a = point["a"], &c = point["c"];
    lhs = phi_terminating({{a, qn}, {c}, q, n}, point);
    rhs = pow(a, n) * qpoch(c / a, n, point, "c/a") * qpoch_recip(c, n, point, "c");
    break;
  }
  case ClassicalIdentity::qbinomial_theorem: {
    const Rational& z = point["z"];
    lhs = phi_terminating({{qn}, {}, z, n}, point);
    rhs = qpoch(z * qn, n, point, "z q^-n");
    break;
  }
  case ClassicalIdentity::sixphi5: {
    const Rational &alpha = point["alpha"], &b = point["b"], &c = point["c"];
    const Rational a = alpha * alpha;
    const Rational aqn1 = a * pow(q, n + 1);
    lhs = phi_terminating({{a, alpha * q, -alpha * q, b, c, qn},
                           {alpha, -alpha, a * q / b, a * q / c, aqn1},
                           aqn1 / (b * c),
                           n},
                          point);
    rhs = qpoch(a * q, n, point, "aq") * qpoch(a * q / (b * c), n, point, "aq/(bc)") *
          qpoch_recip(a * q / b, n, point, "aq/b") * qpoch_recip(a * q / c, n, point, "aq/c");
    break;
  }
  case ClassicalIdentity::heine_1: break;
  }
  report.compare(lhs, rhs, "n=" + std::to_string(n));
  return report;
}

Rational s_sum(int d, int n, RationalPoint& point) {
  const Rational& q = point["q"];
  const Rational& t = point["t"];
  const Rational t_inv = Rational(1) / point.denominator(t, "t");
  Rational sum = 0;
  for (int j = 0; j <= 2 * n; ++j) {
    sum += qpoch(t, j, point, "t") * qpoch(t, 2 * n - j, point, "t") * qpoch(t_inv, j + d, point, "1/t") *
           pow(t, j + d) * qpoch_recip(q, j, point, "q") * qpoch_recip(q, 2 * n - j, point, "q") *
           qpoch_recip(t, j + d, point, "t");
  }
  return sum;
}

Rational s_closed(int d, int n, RationalPoint& point) {
  const Rational& q = point["q"];
  const Rational& t = point["t"];
  const Rational t_inv = Rational(1) / point.denominator(t, "t");
  return qpoch(t * t, 2 * n, point, "t^2") * qpoch(pow(q, d), 2 * n, point, "q^d") * qpoch(t_inv, d, point, "1/t") *
         pow(t, d) * qpoch_recip(q, 2 * n, point, "q") * qpoch_recip(t, 2 * n + d, point, "t");
}

std::pair<Rational, Rational> s_symmetry_sides(int l, int n, RationalPoint& point) {
  Rational lhs = 0;
  Rational rhs = 0;
  for (int j = 0; j <= 2 * l; ++j) {
    const Rational binom = qbinomial_at(2 * l, j, point);
    lhs += binom * s_sum(j - l - n, n, point);
    rhs -= binom * s_sum(j - l - n + 1, n, point);
  }
  return {lhs, rhs};
}

namespace {

Rational key_sum(int l, int n, RationalPoint& point, bool with_s) {
  const Rational& q = point["q"];
  const Rational& t = point["t"];
  const Rational t_inv = Rational(1) / point.denominator(t, "t");
  Rational sum = 0;
  for (int j = 0; j <= 2 * l; ++j) {
    Rational term = qpoch(pow(q, j - l - n), 2 * n, point, "q^(j-l-n)") * qpoch(t_inv, j - l - n, point, "1/t") *
                    pow(t, j) * qpoch_recip(q, j, point, "q") * qpoch_recip(q, 2 * l - j, point, "q") *
                    qpoch_recip(t, j - l + n, point, "t");
    if (with_s) {
      const Rational& s = point["s"];
      term *= qpoch(s, j, point, "s") * qpoch(s, 2 * l - j, point, "s");
    }
    sum += term;
  }
  return sum;
}

} // namespace

std::pair<Rational, Rational> binomial_sum_sides(int l, int n, RationalPoint& point) {
  const Rational& q = point["q"];
  const Rational& t = point["t"];
  const Rational rhs = pow(t, 2 * l) * qpoch_recip(q, l - n, point, "q") * qpoch_recip(t * q, l + n, point, "tq");
  return {key_sum(l, n, point, false), rhs};
}

std::pair<Rational, Rational> s_binomial_sum_sides(int l, int n, RationalPoint& point) {
  const Rational& q = point["q"];
  const Rational& t = point["t"];
  const Rational& s = point["s"];
  const Rational rhs = qpoch(s / point.denominator(t, "t"), l - n, point, "s/t") * qpoch(s, l + n, point, "s") *
                       pow(t, 2 * l) * qpoch_recip(q, l - n, point, "q") * qpoch_recip(t * q, l + n, point, "tq");
  return {key_sum(l, n, point, true), rhs};
}

IdentityReport binomial_sum_check(int l, int n, RationalPoint& point) {
  IdentityReport report("lemma-b1");
  ReportTimer timer(report);
  report.param("l", l).param("n", n);
  const auto [lhs, rhs] = binomial_sum_sides(l, n, point);
  report.compare(lhs, rhs, "l=" + std::to_string(l) + ",n=" + std::to_string(n) + ",point=" + point.describe());
  return report;
}

IdentityReport s_binomial_sum_check(int l, int n, RationalPoint& point) {
  IdentityReport report("appx-c");
  ReportTimer timer(report);
  report.param("l", l).param("n", n);
  const auto [lhs, rhs] = s_binomial_sum_sides(l, n, point);
  report.compare(lhs, rhs, "l=" + std::to_string(l) + ",n=" + std::to_string(n) + ",point=" + point.describe());
  return report;
}

RationalPoint PointSampler::draw(const std::vector<std::string>& names) {
  std::uniform_int_distribution<int> dist(2, 97);
  RationalPoint point;
  for (const auto& name : names) {
    int num = 0;
    int den = 0;
    do {
      num = dist(rng_);
      den = dist(rng_);
    } while (num == den);
    Rational value(num, den);
    value.canonicalize();
    point.set(name, value);
  }
  return point;
}

IdentityReport run_on_random_points(IdentityReport report, PointSampler& sampler, int count,
                                    const std::vector<std::string>& names,
                                    const std::function<void(RationalPoint&, IdentityReport&, const std::string&)>& check) {
  const auto start = std::chrono::steady_clock::now();
  report.seed = sampler.seed();
  constexpr int kMaxRedraws = 1000;
  for (int i = 0; i < count; ++i) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > kMaxRedraws) throw DomainError("run_on_random_points: could not find a pole-free point");
      RationalPoint point = sampler.draw(names);
      IdentityReport trial(report.id);
      try {
        check(point, trial, "point#" + std::to_string(i) + "(" + point.describe() + ")");
      } catch (const PoleError&) {
        sampler.note_rejection();
        continue;
      } catch (const DomainError&) {
        sampler.note_rejection();
        continue;
      }
      report.lhs_terms += trial.lhs_terms;
      report.rhs_terms += trial.rhs_terms;
      if (!trial.passed && report.passed) {
        report.passed = false;
        report.first_mismatch = trial.first_mismatch;
      }
      break;
    }
  }
  report.param("points", count);
  report.wall_time_ms += std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  return report;
}

BPhiEvaluation b_phi_closed(int n, int n_prime, const Truncation& trunc) {
  const Series q = mono(trunc, 1);
  BPhiEvaluation out{Series(trunc), Series(trunc), Series(trunc), Series(trunc)};
  for (int s = 0; s <= n; ++s) {
    const int m = n - s;
    const Rational sign = (m % 2 == 0) ? 1 : -1;
    const Series weight = poch_inv(q, s) * poch_inv(q, s) * poch_inv(q, m);
    const Monomial shift{m * (m - 1) / 2, 0, 0, 0};

    Series zsum(trunc);
    for (int u1 = 0; u1 <= s; ++u1) {
      for (int u2 = 0; u2 <= s; ++u2) {
        zsum += (qbinomial(s, u1, trunc) * qbinomial(s, u2, trunc)).shifted(Monomial{0, 0, 0, 2 * u1 - 2 * u2});
      }
    }
    out.b_sum += (weight * zsum).shifted(shift, sign);
    out.phi_sum += (weight * poch(q, s + n_prime)).shifted(shift, sign);
  }
  out.b_closed = hermite(2 * n, trunc) * poch_inv(q, n) * poch_inv(q, n);
  out.phi_closed =
      (poch(q, n_prime) * poch_inv(q, n) * qbinomial(n_prime, n, trunc)).shifted(Monomial{n * n, 0, 0, 0});
  return out;
}

} // namespace qb
