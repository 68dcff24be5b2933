#include <doctest.h>

#include <set>

#include "qbailey/hypergeometric.hpp"
#include "qbailey/qfunctions.hpp"

using namespace qb;

namespace {

Rational r(long n, long d) {
  Rational x(n, d);
  x.canonicalize();
  return x;
}

// Direct products, with (a;q)_{-m} = 1/(a q^{-m};q)_m, kept separate from the engine.
Rational poch_direct(const Rational& a, int n, const Rational& q) {
  Rational out = 1;
  if (n >= 0) {
    Rational qk = 1;
    for (int k = 0; k < n; ++k, qk *= q) out *= 1 - a * qk;
    return out;
  }
  Rational qinv = 1 / q;
  Rational qk = qinv;
  for (int k = 1; k <= -n; ++k, qk *= qinv) out /= 1 - a * qk;
  return out;
}

Rational ipow(const Rational& x, int n) {
  Rational out = 1;
  for (int i = 0; i < (n < 0 ? -n : n); ++i) out *= x;
  return n < 0 ? 1 / out : out;
}

RationalPoint sample_point() { return RationalPoint{{"q", r(2, 7)}, {"t", r(5, 3)}, {"s", r(3, 11)}}; }

} // namespace

TEST_CASE("one-phi-zero examples") {
  RationalPoint point = sample_point();
  const Rational q = point["q"];
  for (int n = 1; n <= 5; ++n) CHECK(phi_terminating(PhiSpec{{ipow(q, -n)}, {}, q, n}, point) == 0);
  CHECK(phi_terminating(PhiSpec{{Rational(1)}, {}, r(3, 5), 0}, point) == 1);
}

TEST_CASE("phi_terminating against direct summation") {
  RationalPoint point{{"q", r(3, 8)}};
  const Rational q = point["q"], a = r(5, 2), b = r(7, 9), c = r(11, 4);
  for (int n = 0; n <= 5; ++n) {
    const Rational qn = ipow(q, -n), d = a * b * q * ipow(q, -n) / c;
    Rational direct = 0;
    for (int k = 0; k <= n; ++k) {
      direct += poch_direct(qn, k, q) * poch_direct(a, k, q) * poch_direct(b, k, q) * ipow(q, k) /
                (poch_direct(c, k, q) * poch_direct(d, k, q) * poch_direct(q, k, q));
    }
    CHECK(phi_terminating(PhiSpec{{qn, a, b}, {c, d}, q, n}, point) == direct);
    // q-Pfaff-Saalschutz
    CHECK(direct == poch_direct(c / a, n, q) * poch_direct(c / b, n, q) /
                        (poch_direct(c, n, q) * poch_direct(c / (a * b), n, q)));
  }
}

TEST_CASE("phi_terminating needs the terminating parameter") {
  RationalPoint point = sample_point();
  CHECK_THROWS_AS(phi_terminating(PhiSpec{{r(1, 2)}, {}, r(1, 3), 2}, point), DomainError);
  CHECK_THROWS_AS(phi_terminating(PhiSpec{{Rational(1)}, {}, r(1, 3), -1}, point), UsageError);
}

TEST_CASE("phi_terminating reports the pole factor") {
  RationalPoint point{{"q", r(1, 2)}};
  // lower parameter 2 makes (b1;q)_2 vanish since 1 - 2 q = 0
  CHECK_THROWS_AS(phi_terminating(PhiSpec{{Rational(4), Rational(3)}, {Rational(2)}, r(1, 2), 2}, point), PoleError);
}

TEST_CASE("roots of unity are rejected") {
  RationalPoint point{{"q", Rational(-1)}};
  CHECK_THROWS_AS(point.require_q_generic(2), DomainError);
  RationalPoint fine{{"q", r(2, 3)}};
  CHECK_NOTHROW(fine.require_q_generic(10));
}

TEST_CASE("classical checks at fixed points") {
  RationalPoint p{{"q", r(2, 5)}, {"a", r(3, 7)}, {"b", r(11, 13)}, {"c", r(5, 9)}};
  CHECK(classical_check(ClassicalIdentity::pfaff_saalschutz, p, 0).passed);
  for (int n = 0; n <= 6; ++n) CHECK(classical_check(ClassicalIdentity::pfaff_saalschutz, p, n).passed);
  RationalPoint chu{{"q", r(3, 4)}, {"a", r(7, 5)}, {"c", r(2, 9)}};
  CHECK(classical_check(ClassicalIdentity::chu_vandermonde_2, chu, 4).passed);
  RationalPoint qb{{"q", r(4, 7)}, {"z", r(9, 2)}};
  for (int n = 0; n <= 6; ++n) CHECK(classical_check(ClassicalIdentity::qbinomial_theorem, qb, n).passed);
  RationalPoint six{{"q", r(5, 6)}, {"alpha", r(2, 3)}, {"b", r(7, 3)}, {"c", r(4, 5)}};
  CHECK(classical_check(ClassicalIdentity::sixphi5, six, 0).passed);
  for (int n = 0; n <= 6; ++n) CHECK(classical_check(ClassicalIdentity::sixphi5, six, n).passed);
  RationalPoint heine{{"alpha", r(3, 2)}, {"beta", r(5, 7)}, {"gamma", r(2, 9)}};
  CHECK(classical_check(ClassicalIdentity::heine_1, heine, 0).passed);
}

TEST_CASE("second q-Chu-Vandermonde against direct summation") {
  const Rational q = r(3, 4), a = r(7, 5), c = r(2, 9);
  for (int n = 0; n <= 5; ++n) {
    Rational direct = 0;
    for (int k = 0; k <= n; ++k) {
      direct += poch_direct(ipow(q, -n), k, q) * poch_direct(a, k, q) * ipow(q, k) /
                (poch_direct(c, k, q) * poch_direct(q, k, q));
    }
    CHECK(direct == ipow(a, n) * poch_direct(c / a, n, q) / poch_direct(c, n, q));
  }
}

TEST_CASE("classical identity names round-trip") {
  for (auto id : {ClassicalIdentity::pfaff_saalschutz, ClassicalIdentity::chu_vandermonde_2,
                  ClassicalIdentity::qbinomial_theorem, ClassicalIdentity::sixphi5, ClassicalIdentity::heine_1}) {
    CHECK(classical_identity_from_string(to_string(id)) == id);
  }
  CHECK_THROWS_AS(classical_identity_from_string("nope"), UsageError);
}

TEST_CASE("S sums") {
  RationalPoint point = sample_point();
  const Rational q = point["q"], t = point["t"];
  for (int d = -6; d <= 6; ++d) {
    CHECK(s_sum(d, 0, point) == poch_direct(1 / t, d, q) * ipow(t, d) / poch_direct(t, d, q));
    CHECK(s_closed(d, 0, point) == poch_direct(1 / t, d, q) * ipow(t, d) / poch_direct(t, d, q));
    for (int n = 0; n <= 4; ++n) CHECK(s_sum(d, n, point) == s_closed(d, n, point));
  }
  for (int l = 0; l <= 4; ++l) {
    for (int n = 0; n <= 3; ++n) {
      const auto [lhs, rhs] = s_symmetry_sides(l, n, point);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("S closed form names its pole") {
  RationalPoint point{{"q", r(1, 2)}, {"t", Rational(1)}};
  CHECK_THROWS_AS(s_closed(2, 1, point), PoleError);
}

TEST_CASE("terminating binomial sum, small cases") {
  RationalPoint point = sample_point();
  const Rational q = point["q"], t = point["t"];
  for (int l = 0; l <= 4; ++l) {
    for (int n = l + 1; n <= 5; ++n) {
      const auto [lhs, rhs] = binomial_sum_sides(l, n, point);
      CHECK(lhs == 0);
      CHECK(rhs == 0);
    }
  }
  const auto [lhs00, rhs00] = binomial_sum_sides(0, 0, point);
  CHECK(lhs00 == 1);
  CHECK(rhs00 == 1);
  // l = 1, n = 0 by brute force over j = 0, 1, 2
  Rational brute = 0;
  for (int j = 0; j <= 2; ++j) {
    brute += poch_direct(ipow(q, j - 1), 0, q) * poch_direct(1 / t, j - 1, q) * ipow(t, j) /
             (poch_direct(q, j, q) * poch_direct(q, 2 - j, q) * poch_direct(t, j - 1, q));
  }
  const Rational expected = t * t / ((1 - q) * (1 - t * q));
  CHECK(brute == expected);
  const auto [lhs10, rhs10] = binomial_sum_sides(1, 0, point);
  CHECK(lhs10 == expected);
  CHECK(rhs10 == expected);
  CHECK(binomial_sum_check(3, 2, point).passed);
}

TEST_CASE("s-deformed binomial sum") {
  RationalPoint point = sample_point();
  const auto [lhs00, rhs00] = s_binomial_sum_sides(0, 0, point);
  CHECK(lhs00 == 1);
  CHECK(rhs00 == 1);
  for (int l = 0; l <= 4; ++l)
    for (int n = 0; n <= 4; ++n) CHECK(s_binomial_sum_check(l, n, point).passed);
  RationalPoint s_zero = sample_point();
  s_zero.set("s", 0);
  RationalPoint plain = sample_point();
  for (int l = 0; l <= 4; ++l) {
    for (int n = 0; n <= 4; ++n) {
      const auto c_sides = s_binomial_sum_sides(l, n, s_zero);
      const auto b_sides = binomial_sum_sides(l, n, plain);
      CHECK(c_sides.first == b_sides.first);
      CHECK(c_sides.second == b_sides.second);
    }
  }
}

TEST_CASE("point sampler") {
  PointSampler a(99), b(99), c(100);
  std::set<std::string> seen;
  for (int i = 0; i < 20; ++i) {
    RationalPoint pa = a.draw({"q", "t"});
    RationalPoint pb = b.draw({"q", "t"});
    CHECK(pa.describe() == pb.describe());
    seen.insert(c.draw({"q", "t"}).describe());
    for (const char* name : {"q", "t"}) {
      const Rational v = pa[name];
      CHECK(v != 1);
      CHECK(v > 0);
      CHECK(v.get_num() <= 97);
      CHECK(v.get_den() <= 97);
    }
  }
  CHECK(seen.size() > 15);
  CHECK(a.seed() == 99);
}

TEST_CASE("random-point runner records the seed and redraws past poles") {
  PointSampler sampler(3);
  int calls = 0;
  IdentityReport report("probe");
  report = run_on_random_points(report, sampler, 5, {"q"}, [&](RationalPoint& point, IdentityReport& rep,
                                                                 const std::string& where) {
    if (++calls == 2) point.denominator(0, "forced");
    rep.compare(Rational(1), Rational(1), where);
  });
  CHECK(report.passed);
  CHECK(report.seed == std::optional<std::uint64_t>(3));
  CHECK(sampler.rejections() == 1);
  CHECK(calls == 6);
}

TEST_CASE("B and Phi closed forms") {
  const Truncation tr(10, 0);
  const BPhiEvaluation e00 = b_phi_closed(0, 0, tr);
  CHECK(e00.b_sum == Series::constant(tr, 1));
  CHECK(e00.b_closed == Series::constant(tr, 1));
  for (int np = 0; np <= 5; ++np) {
    const BPhiEvaluation e = b_phi_closed(0, np, tr);
    // a single s = 0 term: (q;q)_{n'}
    CHECK(e.phi_sum == poch(mono(tr, 1), np));
    CHECK(e.phi_closed == poch(mono(tr, 1), np));
  }
  for (int n = 0; n <= 5; ++n) {
    for (int np = 0; np <= 5; ++np) {
      const BPhiEvaluation e = b_phi_closed(n, np, tr);
      CHECK(e.b_sum == e.b_closed);
      CHECK(e.phi_sum == e.phi_closed);
      if (n > np) CHECK(e.phi_closed.is_zero());
    }
  }
}
