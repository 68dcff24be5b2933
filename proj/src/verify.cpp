#include "qbailey/verify.hpp"

#include <random>

#include "qbailey/bailey.hpp"
#include "qbailey/hypergeometric.hpp"
#include "qbailey/macdonald.hpp"
#include "qbailey/qfunctions.hpp"

namespace qb {

const std::vector<std::string>& verify_ids() {
  static const std::vector<std::string> ids = {"thm-main", "thm-kks",  "thm-conj-pair", "thm-wp",   "thm-general",
                                               "appx-a",   "lemma-b1", "appx-c",        "multi-rr", "corollary-special"};
  return ids;
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

IdentityReport compare_representations(const std::string& id, int k, Representation lhs, Representation rhs,
                                       const Truncation& tr) {
  IdentityReport report(id);
  ReportTimer timer(report);
  report.truncation = tr;
  report.param("k", k).param("lhs", to_string(lhs)).param("rhs", to_string(rhs));
  report.compare(macdonald_index(k, lhs, tr), macdonald_index(k, rhs, tr));
  return report;
}

ChainParams chain_from(const VerifyOptions& o) {
  ChainParams p = ChainParams::zeros(o.k);
  if (!o.b.empty()) p.b = o.b;
  if (!o.c.empty()) p.c = o.c;
  p.validate();
  return p;
}

std::string join(const std::vector<Rational>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + xs[i].get_str();
  return out;
}

std::uint64_t seed_or_entropy(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

RationalPoint fixed_point() { return RationalPoint{{"q", Rational(2, 3)}, {"t", Rational(3, 5)}, {"s", Rational(5, 7)}}; }

using SidesFn = std::pair<Rational, Rational> (*)(int, int, RationalPoint&);

IdentityReport rational_suite(const std::string& id, SidesFn sides, const std::vector<std::string>& names, int lmax,
                              int nmax, int points, std::uint64_t seed) {
  auto check_all = [=](RationalPoint& point, IdentityReport& report, const std::string& where) {
    for (int l = 0; l <= lmax; ++l) {
      for (int n = 0; n <= nmax; ++n) {
        const auto [lhs, rhs] = sides(l, n, point);
        report.compare(lhs, rhs, where + " l=" + std::to_string(l) + ",n=" + std::to_string(n));
      }
    }
  };
  IdentityReport report(id);
  report.param("lmax", lmax).param("nmax", nmax);
  {
    ReportTimer timer(report);
    RationalPoint point = fixed_point();
    check_all(point, report, "fixed(" + point.describe() + ")");
  }
  const std::int64_t fixed_ms = report.wall_time_ms;
  PointSampler sampler(seed);
  report = run_on_random_points(report, sampler, points, names, check_all);
  report.wall_time_ms += fixed_ms;
  return report;
}

} // namespace

IdentityReport binomial_sum_suite(int lmax, int nmax, int points, std::uint64_t seed) {
  return rational_suite("lemma-b1", &binomial_sum_sides, {"q", "t"}, lmax, nmax, points, seed);
}

IdentityReport s_binomial_sum_suite(int lmax, int nmax, int points, std::uint64_t seed) {
  return rational_suite("appx-c", &s_binomial_sum_sides, {"q", "t", "s"}, lmax, nmax, points, seed);
}

std::vector<IdentityReport> run_verify(const std::string& id, const VerifyOptions& o) {
  require(o.k >= 1, "--k must be at least 1");
  require(o.nq >= 0 && o.nt >= 0 && o.ns >= 0, "truncation caps must be nonnegative");
  require(o.points >= 0, "--points must be nonnegative");
  const Truncation tr(o.nq, o.nt);
  auto nmax_or = [&](int fallback) { return o.nmax >= 0 ? o.nmax : fallback; };

  if (id == "thm-main") return {compare_representations(id, o.k, Representation::fermionic, Representation::bosonic, tr)};
  if (id == "thm-kks") {
    return {compare_representations(id, o.k, Representation::fermionic, Representation::fermionic2, tr)};
  }
  if (id == "appx-a") {
    return {compare_representations(id, o.k, Representation::original, Representation::fermionic2, tr)};
  }
  if (id == "thm-conj-pair") {
    IdentityReport r = verify_conjugate_pair(hermite_conjugate_pair(tr), nmax_or(5));
    r.id = id;
    return {r};
  }
  if (id == "thm-wp") {
    const Truncation wp_tr(o.nq, o.nt, o.ns);
    const int n_max = nmax_or(4);
    IdentityReport relation = verify_wp_conjugate(wp_conjugate_pair(wp_tr), n_max);
    relation.id = id;
    IdentityReport s_zero = wp_specialization_check(wp_tr, n_max);
    s_zero.id = id + "/s=0";
    return {relation, s_zero};
  }
  if (id == "thm-general") return {generalized_identity(chain_from(o), tr)};
  if (id == "multi-rr") {
    IdentityReport r = multi_rogers_ramanujan(o.k, o.nq);
    return {r};
  }
  if (id == "corollary-special") {
    const ChainParams params = chain_from(o);
    const ConjugatePair conj = hermite_conjugate_pair(tr);
    const BaileyPair seed = seed_pair(tr);
    IdentityReport base = bailey_transform_check(seed, conj);
    base.id = id;
    base.param("chain", 0);
    IdentityReport lifted = bailey_transform_check(chain_lift(seed, params), conj);
    lifted.id = id;
    lifted.param("chain", params.k).param("b", join(params.b)).param("c", join(params.c));
    return {base, lifted};
  }
  if (id == "lemma-b1") return {binomial_sum_suite(o.lmax, nmax_or(6), o.points, seed_or_entropy(o.seed))};
  if (id == "appx-c") return {s_binomial_sum_suite(o.lmax, nmax_or(4), o.points, seed_or_entropy(o.seed))};
  throw UsageError("unknown identity '" + id + "'");
}

namespace {

IdentityReport series_family(const std::string& id, const Truncation& tr,
                             const std::function<void(IdentityReport&)>& body) {
  IdentityReport report(id);
  ReportTimer timer(report);
  report.truncation = tr;
  body(report);
  return report;
}

std::string mn(int m, int n) { return "m=" + std::to_string(m) + ",n=" + std::to_string(n); }

} // namespace

std::vector<IdentityReport> run_selftest() {
  std::vector<IdentityReport> out;
  constexpr std::uint64_t kSeed = 20260101;

  for (auto id : {ClassicalIdentity::pfaff_saalschutz, ClassicalIdentity::chu_vandermonde_2,
                  ClassicalIdentity::qbinomial_theorem, ClassicalIdentity::sixphi5, ClassicalIdentity::heine_1}) {
    const int n_top = id == ClassicalIdentity::heine_1 ? 0 : 6;
    PointSampler sampler(kSeed + static_cast<std::uint64_t>(id));
    IdentityReport report(to_string(id));
    report.param("n_max", n_top);
    report = run_on_random_points(report, sampler, 10, classical_variables(id),
                                  [&](RationalPoint& point, IdentityReport& r, const std::string& where) {
                                    for (int n = 0; n <= n_top; ++n) {
                                      IdentityReport one = classical_check(id, point, n);
                                      if (one.truncation) r.truncation = one.truncation;
                                      r.lhs_terms += one.lhs_terms;
                                      r.rhs_terms += one.rhs_terms;
                                      if (!one.passed && r.passed) {
                                        r.passed = false;
                                        r.first_mismatch = one.first_mismatch;
                                        r.first_mismatch->location = where + " " + r.first_mismatch->location;
                                      }
                                    }
                                  });
    out.push_back(report);
  }

  {
    PointSampler sampler(kSeed + 10);
    IdentityReport report("s-closed-form");
    report.param("d", "-6..6").param("n_max", 4);
    out.push_back(run_on_random_points(report, sampler, 20, {"q", "t"},
                                       [](RationalPoint& point, IdentityReport& r, const std::string& where) {
                                         for (int d = -6; d <= 6; ++d) {
                                           for (int n = 0; n <= 4; ++n) {
                                             r.compare(s_sum(d, n, point), s_closed(d, n, point),
                                                       where + " d=" + std::to_string(d) + ",n=" + std::to_string(n));
                                           }
                                         }
                                       }));
  }
  {
    PointSampler sampler(kSeed + 11);
    IdentityReport report("s-symmetry");
    report.param("l_max", 4).param("n_max", 3);
    out.push_back(run_on_random_points(report, sampler, 10, {"q", "t"},
                                       [](RationalPoint& point, IdentityReport& r, const std::string& where) {
                                         for (int l = 0; l <= 4; ++l) {
                                           for (int n = 0; n <= 3; ++n) {
                                             const auto [lhs, rhs] = s_symmetry_sides(l, n, point);
                                             r.compare(lhs, rhs, where + " l=" + std::to_string(l) +
                                                                     ",n=" + std::to_string(n));
                                           }
                                         }
                                       }));
  }

  const Truncation q_only(10, 0);
  out.push_back(series_family("b-phi-closed", q_only, [&](IdentityReport& r) {
    r.param("n_max", 5);
    for (int n = 0; n <= 5; ++n) {
      for (int np = 0; np <= 5; ++np) {
        const BPhiEvaluation e = b_phi_closed(n, np, q_only);
        if (np == 0) r.compare(e.b_sum, e.b_closed, "B n=" + std::to_string(n));
        r.compare(e.phi_sum, e.phi_closed, "Phi " + mn(n, np));
      }
    }
  }));
  out.push_back(series_family("hermite-orthogonality", q_only, [&](IdentityReport& r) {
    for (int m = 0; m <= 4; ++m) {
      for (int n = 0; n <= 4; ++n) {
        r.compare(hermite_inner(m, n, q_only), m == n ? hermite_norm(n, q_only) : Series(q_only), mn(m, n));
      }
    }
  }));
  const Truncation with_s(6, 0, 6);
  out.push_back(series_family("ultraspherical-orthogonality", with_s, [&](IdentityReport& r) {
    for (int m = 0; m <= 3; ++m) {
      for (int n = 0; n <= 3; ++n) {
        r.compare(ultraspherical_inner(m, n, with_s), m == n ? ultraspherical_norm(n, with_s) : Series(with_s),
                  mn(m, n));
      }
    }
  }));
  out.push_back(series_family("hermite-linearization", q_only, [&](IdentityReport& r) {
    for (int m = 0; m <= 5; ++m) {
      for (int n = 0; n <= 5; ++n) {
        r.compare(hermite_linearize(m, n, q_only), hermite(m, q_only) * hermite(n, q_only), mn(m, n));
      }
    }
  }));
  const Truncation qt(8, 6);
  out.push_back(series_family("weight-expansion", qt,
                              [&](IdentityReport& r) { r.compare(weight_ratio(qt), weight_ratio_bilateral(qt)); }));
  out.push_back(series_family("hermite-expansion-coeff", qt, [&](IdentityReport& r) {
    for (int n = 0; n <= 3; ++n) {
      for (int l = 0; l <= 3; ++l) {
        r.compare(hermite_expansion_coeff(n, l, qt), hermite_expansion_coeff_closed(n, l, qt),
                  "n=" + std::to_string(n) + ",l=" + std::to_string(l));
      }
    }
  }));
  return out;
}

} // namespace qb
