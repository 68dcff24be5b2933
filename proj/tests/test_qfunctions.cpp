#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "qbailey/qfunctions.hpp"

using namespace qb;

namespace {

const Truncation kTr(8, 6);

Series m(const Truncation& tr, int q, int t = 0, int z = 0, const Rational& c = 1) { return mono(tr, q, t, 0, z, c); }
Series one(const Truncation& tr = kTr) { return Series::constant(tr, 1); }

// [M choose N]_q by exact long division of (q;q)_M by (q;q)_N (q;q)_{M-N} on
// dense coefficient vectors.
std::vector<Rational> gaussian_by_division(int M, int N) {
  auto poch_q = [](int n) {
    std::vector<Rational> p{1};
    for (int k = 1; k <= n; ++k) {
      std::vector<Rational> next(p.size() + k);
      for (std::size_t i = 0; i < p.size(); ++i) {
        next[i] += p[i];
        next[i + k] -= p[i];
      }
      p = next;
    }
    return p;
  };
  auto times = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
  };
  std::vector<Rational> num = poch_q(M);
  const std::vector<Rational> den = times(poch_q(N), poch_q(M - N));
  std::vector<Rational> quot(num.size() - den.size() + 1);
  for (std::size_t i = quot.size(); i-- > 0;) {
    quot[i] = num[i + den.size() - 1] / den.back();
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= quot[i] * den[j];
  }
  for (const auto& r : num) REQUIRE(r == 0);
  return quot;
}

Series from_dense_q(const std::vector<Rational>& coeffs, const Truncation& tr) {
  Series out(tr);
  for (std::size_t i = 0; i < coeffs.size() && static_cast<int>(i) <= tr.max_q; ++i) out += m(tr, i, 0, 0, coeffs[i]);
  return out;
}

} // namespace

TEST_CASE("finite Pochhammer examples") {
  CHECK(poch(m(kTr, 1), 3) == one() - m(kTr, 1) - m(kTr, 2) + m(kTr, 4) + m(kTr, 5) - m(kTr, 6));
  CHECK(poch(m(kTr, 0, 1, 2), 0) == one());
  CHECK(poch(m(kTr, 0, 1), 1) == one() - m(kTr, 0, 1));
}

TEST_CASE("finite Pochhammer matches the dense oracle") {
  for (int n = 0; n <= 6; ++n) {
    CHECK(oracle::same(oracle::to_dense(poch(m(kTr, 1), n)), oracle::q_poch(8, 6, n)));
    CHECK(oracle::same(oracle::to_dense(poch_inv(m(kTr, 1), n)), oracle::q_poch_inv(8, 6, n)));
  }
}

TEST_CASE("infinite Pochhammer examples") {
  const Truncation q3(3, 3);
  CHECK(poch_infinite(m(q3, 1)) == one(q3) - m(q3, 1) - m(q3, 2));
  CHECK(poch_infinite(Series(kTr)) == one());
  // (t z^2;q)_inf: the t^1 part is -z^2 (1 + q + q^2 + ...).
  const Series p = poch_infinite(m(kTr, 0, 1, 2));
  for (int a = 0; a <= kTr.max_q; ++a) CHECK(oracle::coeff(p, a, 1, 2) == -1);
  CHECK(oracle::coeff(p, 1, 2, 4) == 1);
}

TEST_CASE("infinite Pochhammer with a constant base stops at the q cap") {
  const Truncation q3(3, 0);
  const Rational half(1, 2);
  oracle::Dense expected = oracle::binomial(3, 0, 0, 0, half);
  for (int k = 1; k <= 3; ++k) expected = expected * oracle::binomial(3, 0, k, 0, half);
  CHECK(oracle::same(oracle::to_dense(poch_infinite(Series::constant(q3, half))), expected));
}

TEST_CASE("Euler's pentagonal theorem") {
  const Truncation q_only(40, 0);
  Series pentagonal(q_only);
  for (int k = -6; k <= 6; ++k) {
    const int e = k * (3 * k - 1) / 2;
    if (e <= 40) pentagonal += m(q_only, e, 0, 0, k % 2 == 0 ? 1 : -1);
  }
  CHECK(poch_infinite(m(q_only, 1)) == pentagonal);
}

TEST_CASE("Pochhammer splitting laws") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> qd(0, 2), td(0, 2), zd(-2, 2);
  for (int trial = 0; trial < 12; ++trial) {
    const int a = qd(rng), b = td(rng), e = zd(rng);
    const Series base = m(kTr, a, b, e, trial % 2 ? 1 : Rational(-2, 3));
    for (int mm = 0; mm <= 3; ++mm) {
      for (int n = 0; n <= 3; ++n) {
        CHECK(poch(base, mm + n) == poch(base, mm) * poch(base * m(kTr, mm), n));
      }
    }
    if (a + b > 0) {
      for (int n = 0; n <= 4; ++n) CHECK(poch_infinite(base) == poch(base, n) * poch_infinite(base * m(kTr, n)));
    }
  }
}

TEST_CASE("poch_inv inverts poch") {
  for (int n = 0; n <= 5; ++n) {
    const Series base = m(kTr, 1, 1, -2);
    CHECK(poch(base, n) * poch_inv(base, n) == one());
  }
  CHECK(poch_infinite(m(kTr, 1, 1)) * poch_infinite_inv(m(kTr, 1, 1)) == one());
}

TEST_CASE("negative-length Pochhammer") {
  // (t q^2;q)_{-1} = 1/(1 - t q)
  CHECK(poch(m(kTr, 2, 1), -1) == invert(one() - m(kTr, 1, 1)));
}

TEST_CASE("combined Pochhammer") {
  for (int n = 0; n <= 4; ++n) {
    CHECK(combined_poch(0, n, kTr) == m(kTr, n * (n - 1) / 2, 0, 0, n % 2 ? -1 : 1));
  }
  CHECK(combined_poch(Rational(3, 2), 0, kTr) == one());
  CHECK(combined_poch(1, 2, kTr).is_zero());
  // (1/b;q)_2 b^2 = (b - 1)(b - q)
  const Rational b(5, 3);
  CHECK(combined_poch(b, 2, kTr) == (one() * b - one()) * (one() * b - m(kTr, 1)));
}

TEST_CASE("q-binomial examples") {
  CHECK(qbinomial(2, 1, kTr) == one() + m(kTr, 1));
  CHECK(qbinomial(4, 2, kTr) == one() + m(kTr, 1) + m(kTr, 2, 0, 0, 2) + m(kTr, 3) + m(kTr, 4));
  CHECK(qbinomial(3, 5, kTr).is_zero());
  CHECK(qbinomial(3, -1, kTr).is_zero());
}

TEST_CASE("q-binomial matches polynomial division") {
  const Truncation q_only(20, 0);
  for (int M = 0; M <= 8; ++M) {
    for (int N = 0; N <= M; ++N) CHECK(qbinomial(M, N, q_only) == from_dense_q(gaussian_by_division(M, N), q_only));
  }
}

TEST_CASE("Hermite examples") {
  CHECK(hermite(0, kTr) == one());
  CHECK(hermite(1, kTr) == m(kTr, 0, 0, 1) + m(kTr, 0, 0, -1));
  CHECK(hermite(2, kTr) == m(kTr, 0, 0, 2) + one() + m(kTr, 1) + m(kTr, 0, 0, -2));
}

TEST_CASE("Hermite and ultraspherical support and symmetry") {
  for (int n = 0; n <= 6; ++n) {
    for (const Series& p : {hermite(n, kTr), ultraspherical(n, kTr)}) {
      CHECK(flip_z(p) == p);
      CHECK(p.min_z() == -n);
      CHECK(p.max_z() == n);
      for (const auto& [mono_, c] : p.terms()) CHECK((mono_.z - n) % 2 == 0);
    }
  }
}

TEST_CASE("ultraspherical examples") {
  CHECK(ultraspherical(0, kTr) == one());
  const Series coeff = (one() - m(kTr, 0, 1)) * invert(one() - m(kTr, 1));
  CHECK(ultraspherical(1, kTr) == coeff * (m(kTr, 0, 0, 1) + m(kTr, 0, 0, -1)));
  for (int n = 0; n <= 5; ++n) {
    Series expected(kTr);
    for (int j = 0; j <= n; ++j) expected += m(kTr, 0, 0, n - 2 * j);
    CHECK(ultraspherical(n, m(kTr, 1)) == expected);
  }
}

TEST_CASE("constant term") {
  CHECK(ct_z(m(kTr, 0, 0, 2) + one() * 3 + m(kTr, 0, 0, -2)) == one() * 3);
  CHECK(ct_z(hermite_weight(Truncation(0, 0))) == Series::constant(Truncation(0, 0), 2));
  CHECK_THROWS_AS(ct_z(m(kTr, 0, 0, 2)), DomainError);
}

TEST_CASE("Hermite orthogonality") {
  const Truncation q_only(10, 0);
  const Series inv_qinf = poch_infinite_inv(m(q_only, 1));
  CHECK(hermite_inner(0, 0, q_only) == inv_qinf * 2);
  CHECK(ct_z(hermite(1, q_only) * hermite(1, q_only) * hermite_weight(q_only)) ==
        (one(q_only) - m(q_only, 1)) * inv_qinf * 2);
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; b <= 4; ++b) {
      const Series expected = a == b ? poch(m(q_only, 1), a) * inv_qinf * 2 : Series(q_only);
      CHECK(hermite_inner(a, b, q_only) == expected);
      CHECK(hermite_norm(a, q_only) == poch(m(q_only, 1), a) * inv_qinf * 2);
    }
  }
}

TEST_CASE("ultraspherical orthogonality") {
  const Truncation tr(5, 0, 5);
  const Series s = mono(tr, 0, 0, 1);
  const Series q = mono(tr, 1);
  const Series base = poch_infinite(s) * poch_infinite(s * q) * poch_infinite_inv(q) * poch_infinite_inv(s * s) * 2;
  CHECK(ultraspherical_inner(0, 0, tr) == base);
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 3; ++b) {
      Series expected(tr);
      if (a == b) {
        expected = base * (one(tr) - s) * poch(s * s, a) * invert(one(tr) - s * mono(tr, a)) * poch_inv(q, a);
      }
      CHECK(ultraspherical_inner(a, b, tr) == expected);
    }
  }
}

TEST_CASE("Hermite linearization") {
  const Truncation q_only(10, 0);
  for (int a = 0; a <= 5; ++a) CHECK(hermite_linearize(a, 0, q_only) == hermite(a, q_only));
  CHECK(hermite_linearize(1, 1, q_only) == hermite(2, q_only) + (one(q_only) - m(q_only, 1)));
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b) CHECK(hermite_linearize(a, b, q_only) == hermite(a, q_only) * hermite(b, q_only));
}

TEST_CASE("expansion coefficients") {
  const Truncation tr(6, 5);
  const Series t = m(tr, 0, 1);
  for (int n = 1; n <= 3; ++n)
    for (int l = 0; l < n; ++l) CHECK(hermite_expansion_coeff(n, l, tr).is_zero());
  const Series c00 = poch_infinite(t) * poch_infinite(t * m(tr, 1)) * poch_infinite_inv(t * t);
  CHECK(hermite_expansion_coeff(0, 0, tr) == c00);
  CHECK(hermite_expansion_coeff_closed(0, 0, tr) == c00);
  for (int n = 0; n <= 3; ++n)
    for (int l = 0; l <= 3; ++l) CHECK(hermite_expansion_coeff(n, l, tr) == hermite_expansion_coeff_closed(n, l, tr));
}

TEST_CASE("bilateral weight expansion") {
  const Truncation tr(8, 6);
  CHECK(weight_ratio(tr) == weight_ratio_bilateral(tr));
  CHECK(bilateral_term(0, tr) == one(tr));
  // term_{-1} = -(q - t)/(1 - t q)
  CHECK(bilateral_term(-1, tr) == -(m(tr, 1) - m(tr, 0, 1)) * invert(one(tr) - m(tr, 1, 1)));
  // term_1 = (t - 1)/(1 - t) = -1
  CHECK(bilateral_term(1, tr) == -one(tr));
}

TEST_CASE("fault injection perturbs q-binomials and can be turned off") {
  const Series clean = qbinomial(4, 2, kTr);
  fault::set_qbinomial_perturbation(true);
  CHECK(fault::qbinomial_perturbation());
  CHECK(qbinomial(4, 2, kTr) != clean);
  fault::set_qbinomial_perturbation(false);
  CHECK(qbinomial(4, 2, kTr) == clean);
}
