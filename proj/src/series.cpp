#include "qbailey/series.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qb {

namespace {

void require_same(const Truncation& a, const Truncation& b, const char* op) {
  if (!(a == b)) {
    throw UsageError(std::string(op) + ": truncation mismatch (" + to_string(a) + " vs " +
                     to_string(b) + ")");
  }
}

bool by_monomial(const Series::Term& a, const Series::Term& b) { return a.first < b.first; }

} // namespace

std::string to_string(Var v) {
  switch (v) {
  case Var::q: return "q";
  case Var::t: return "t";
  case Var::s: return "s";
  case Var::z: return "z";
  }
  return "?";
}

Truncation::Truncation(int q_cap, int t_cap, std::optional<int> s_cap)
    : max_q(q_cap), max_t(t_cap), max_s(s_cap) {
  if (q_cap < 0 || t_cap < 0 || (s_cap && *s_cap < 0)) {
    throw UsageError("truncation caps must be nonnegative");
  }
}

int Truncation::cap(Var v) const {
  switch (v) {
  case Var::q: return max_q;
  case Var::t: return max_t;
  case Var::s: return s_cap();
  case Var::z: break;
  }
  throw UsageError("z carries no truncation cap");
}

std::string to_string(const Truncation& trunc) {
  std::ostringstream out;
  out << "max_q=" << trunc.max_q << ", max_t=" << trunc.max_t;
  if (trunc.max_s) out << ", max_s=" << *trunc.max_s;
  return out.str();
}

int Monomial::exponent(Var v) const {
  switch (v) {
  case Var::q: return q;
  case Var::t: return t;
  case Var::s: return s;
  case Var::z: return z;
  }
  return 0;
}

std::string to_string(const Monomial& m, bool with_s) {
  std::ostringstream out;
  out << "q^" << m.q << " t^" << m.t;
  if (with_s) out << " s^" << m.s;
  out << " z^" << m.z;
  return out.str();
}

Series Series::constant(const Truncation& trunc, const Rational& c) {
  return monomial(trunc, Monomial{}, c);
}

Series Series::monomial(const Truncation& trunc, const Monomial& m, const Rational& c) {
  Series out(trunc);
  if (sgn(c) != 0 && out.fits(m)) out.terms_.emplace_back(m, c);
  return out;
}

Series Series::from_terms(const Truncation& trunc, std::vector<Term> terms) {
  Series out(trunc);
  std::erase_if(terms, [&](const Term& term) { return !out.fits(term.first); });
  std::stable_sort(terms.begin(), terms.end(), by_monomial);
  for (auto& term : terms) {
    if (!out.terms_.empty() && out.terms_.back().first == term.first) {
      out.terms_.back().second += term.second;
    } else {
      out.terms_.push_back(std::move(term));
    }
  }
  std::erase_if(out.terms_, [](const Term& term) { return sgn(term.second) == 0; });
  return out;
}

bool Series::fits(const Monomial& m) const {
  if (m.q < 0 || m.t < 0 || m.s < 0) return false;
  return m.q <= trunc_.max_q && m.t <= trunc_.max_t && m.s <= trunc_.s_cap();
}

Rational Series::constant_term() const { return coefficient(*this, Monomial{}); }

int Series::min_z() const {
  int lo = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (first || m.z < lo) lo = m.z;
    first = false;
  }
  return lo;
}

int Series::max_z() const {
  int hi = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (first || m.z > hi) hi = m.z;
    first = false;
  }
  return hi;
}

Series add(const Series& f, const Series& g) {
  require_same(f.trunc_, g.trunc_, "add");
  Series out(f.trunc_);
  out.terms_.reserve(f.terms_.size() + g.terms_.size());
  auto i = f.terms_.begin();
  auto j = g.terms_.begin();
  while (i != f.terms_.end() || j != g.terms_.end()) {
    if (j == g.terms_.end() || (i != f.terms_.end() && i->first < j->first)) {
      out.terms_.push_back(*i++);
    } else if (i == f.terms_.end() || j->first < i->first) {
      out.terms_.push_back(*j++);
    } else {
      Rational c = i->second + j->second;
      if (sgn(c) != 0) out.terms_.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

Series& Series::operator+=(const Series& g) { return *this = add(*this, g); }

Series& Series::operator-=(const Series& g) {
  Series neg = g;
  neg *= Rational(-1);
  return *this = add(*this, neg);
}

Series& Series::operator*=(const Series& g) { return *this = mul(*this, g); }

Series& Series::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else if (c != 1) {
    for (auto& term : terms_) term.second *= c;
  }
  return *this;
}

Series mul(const Series& f, const Series& g) {
  require_same(f.trunc_, g.trunc_, "mul");
  const Truncation& tr = f.trunc_;
  Series out(tr);
  if (f.is_zero() || g.is_zero()) return out;

  const Series& small = f.size() <= g.size() ? f : g;
  const Series& large = f.size() <= g.size() ? g : f;

  const long zlo = static_cast<long>(small.min_z()) + large.min_z();
  const long zspan = static_cast<long>(small.max_z()) + large.max_z() - zlo + 1;
  const long dim_t = tr.max_t + 1;
  const long dim_s = tr.s_cap() + 1;
  const long box = (tr.max_q + 1L) * dim_t * dim_s * zspan;

  std::vector<Series::Term> acc;
  mpq_class product;
  auto accumulate = [&](std::size_t slot, const Monomial& m, const Rational& a, const Rational& b) {
    mpq_mul(product.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
    if (slot == acc.size()) {
      acc.emplace_back(m, product);
    } else {
      mpq_add(acc[slot].second.get_mpq_t(), acc[slot].second.get_mpq_t(), product.get_mpq_t());
    }
  };

  // Large boxes fall back to an ordered map of slots.
  constexpr long kDenseLimit = 1L << 22;
  std::vector<int> dense;
  std::map<Monomial, std::size_t> sparse;
  if (box <= kDenseLimit) dense.assign(static_cast<std::size_t>(box), -1);

  for (const auto& [ma, ca] : small.terms_) {
    const int q_room = tr.max_q - ma.q;
    const int t_room = tr.max_t - ma.t;
    const int s_room = tr.s_cap() - ma.s;
    for (const auto& [mb, cb] : large.terms_) {
      if (mb.q > q_room) break;
      if (mb.t > t_room || mb.s > s_room) continue;
      const Monomial m = ma + mb;
      std::size_t slot;
      if (!dense.empty()) {
        const long index = ((m.q * dim_t + m.t) * dim_s + m.s) * zspan + (m.z - zlo);
        int& cell = dense[static_cast<std::size_t>(index)];
        if (cell < 0) cell = static_cast<int>(acc.size());
        slot = static_cast<std::size_t>(cell);
      } else {
        auto [it, inserted] = sparse.try_emplace(m, acc.size());
        slot = it->second;
      }
      accumulate(slot, m, ca, cb);
    }
  }

  std::sort(acc.begin(), acc.end(), by_monomial);
  std::erase_if(acc, [](const Series::Term& term) { return sgn(term.second) == 0; });
  out.terms_ = std::move(acc);
  return out;
}

Series Series::shifted(const Monomial& m, const Rational& c) const {
  Series out(trunc_);
  if (sgn(c) == 0) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& [mono, coeff] : terms_) {
    const Monomial moved = mono + m;
    if (out.fits(moved)) out.terms_.emplace_back(moved, coeff * c);
  }
  // Adding a fixed vector preserves lexicographic order.
  return out;
}

Series Series::mul_one_minus(const Rational& c, const Monomial& m) const {
  return add(*this, shifted(m, -c));
}

Series Series::div_one_minus(const Rational& c, const Monomial& m) const {
  if (m.degree() <= 0) {
    throw NonInvertibleError("div_one_minus: 1 - c*" + to_string(m, true) +
                             " is not a unit of the truncated ring");
  }
  Series out = *this;
  Series power = *this;
  for (int guard = 0; guard <= trunc_.total_degree() + 1; ++guard) {
    power = power.shifted(m, c);
    if (power.is_zero()) return out;
    out += power;
  }
  throw InternalConsistencyError("div_one_minus: geometric series failed to terminate");
}

Series Series::retruncated(const Truncation& smaller) const {
  if (smaller.max_q > trunc_.max_q || smaller.max_t > trunc_.max_t ||
      smaller.s_cap() > trunc_.s_cap() || (smaller.has_s() && !trunc_.has_s())) {
    throw UsageError("retruncated: target caps must not exceed the source caps");
  }
  Series out(smaller);
  for (const auto& term : terms_) {
    if (out.fits(term.first)) out.terms_.push_back(term);
  }
  return out;
}

Series invert(const Series& f) {
  const Rational c0 = f.constant_term();
  if (sgn(c0) == 0) {
    throw NonInvertibleError("invert: constant term vanishes in " + render(f));
  }
  for (const auto& [m, c] : f.terms()) {
    if (m.degree() == 0 && m.z != 0) {
      throw NonInvertibleError("invert: degree-zero z-dependence in " + render(f));
    }
  }
  const Truncation& tr = f.truncation();
  const Rational inv0 = Rational(1) / c0;

  // Binomials c0 + c1 x^m invert as a geometric series.
  if (f.size() == 2) {
    const auto& [m, c1] = f.terms()[1];
    return Series::constant(tr, inv0).div_one_minus(-c1 * inv0, m);
  }

  // Newton iteration g <- g(2 - f g); the error 1 - f g doubles its minimal
  // total degree each round.
  const Series one = Series::constant(tr, 1);
  Series g = Series::constant(tr, inv0);
  for (int round = 0; round < 64; ++round) {
    Series err = one - f * g;
    if (err.is_zero()) return g;
    g += g * err;
  }
  throw InternalConsistencyError("invert: Newton iteration failed to converge");
}

Rational coefficient(const Series& f, const Monomial& m) {
  const auto& terms = f.terms();
  auto it = std::lower_bound(terms.begin(), terms.end(), m,
                             [](const Series::Term& term, const Monomial& key) { return term.first < key; });
  if (it != terms.end() && it->first == m) return it->second;
  return 0;
}

Series flip_z(const Series& f) {
  std::vector<Series::Term> terms;
  terms.reserve(f.size());
  for (const auto& [m, c] : f.terms()) terms.emplace_back(Monomial{m.q, m.t, m.s, -m.z}, c);
  return Series::from_terms(f.truncation(), std::move(terms));
}

Series specialize(const Series& f, Var var, const Rational& value) {
  if (var == Var::z && sgn(value) == 0) throw DomainError("specialize: z cannot be set to 0");
  std::vector<Series::Term> terms;
  terms.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    Monomial moved = m;
    switch (var) {
    case Var::q: moved.q = 0; break;
    case Var::t: moved.t = 0; break;
    case Var::s: moved.s = 0; break;
    case Var::z: moved.z = 0; break;
    }
    terms.emplace_back(moved, c * pow(value, m.exponent(var)));
  }
  return Series::from_terms(f.truncation(), std::move(terms));
}

Series specialize(const Series& f, Var var, const Monomial& value) {
  const Truncation& tr = f.truncation();
  if (var == Var::z) {
    if (value.degree() != 0 || value.q != 0 || value.t != 0 || value.s != 0) {
      throw DomainError("specialize: z carries negative exponents and can only map to a power of z");
    }
    if (value.z == 0) throw DomainError("specialize: use the rational overload to set z to a constant");
  } else {
    if (value.q < 0 || value.t < 0 || value.s < 0) {
      throw DomainError("specialize: target monomial must have nonnegative q, t, s exponents");
    }
    // Every source power var^a whose image stays inside the caps must itself
    // lie inside the source cap.
    int reach = -1;
    for (Var w : {Var::q, Var::t, Var::s}) {
      const int e = value.exponent(w);
      if (e <= 0) continue;
      const int bound = tr.cap(w) / e;
      reach = reach < 0 ? bound : std::min(reach, bound);
    }
    if (reach < 0) {
      throw TruncationOverflowError("specialize: target " + to_string(value, true) +
                                    " has no truncated degree; use a rational value instead");
    }
    if (reach > tr.cap(var)) {
      throw TruncationOverflowError("specialize: " + to_string(var) + " -> " + to_string(value, true) +
                                    " needs " + to_string(var) + "-degree " + std::to_string(reach) +
                                    " but the cap is " + std::to_string(tr.cap(var)));
    }
  }

  std::vector<Series::Term> terms;
  terms.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    const int e = m.exponent(var);
    Monomial moved = m;
    switch (var) {
    case Var::q: moved.q = 0; break;
    case Var::t: moved.t = 0; break;
    case Var::s: moved.s = 0; break;
    case Var::z: moved.z = 0; break;
    }
    moved.q += e * value.q;
    moved.t += e * value.t;
    moved.s += e * value.s;
    moved.z += e * value.z;
    terms.emplace_back(moved, c);
  }
  return Series::from_terms(tr, std::move(terms));
}

std::string render(const Series& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    out += to_string(c) + " * " + to_string(m, f.truncation().has_s());
  }
  return out;
}

std::optional<Monomial> first_difference(const Series& f, const Series& g) {
  auto i = f.terms().begin();
  auto j = g.terms().begin();
  while (i != f.terms().end() || j != g.terms().end()) {
    if (j == g.terms().end()) return i->first;
    if (i == f.terms().end()) return j->first;
    if (i->first < j->first) return i->first;
    if (j->first < i->first) return j->first;
    if (i->second != j->second) return i->first;
    ++i;
    ++j;
  }
  return std::nullopt;
}

} // namespace qb
