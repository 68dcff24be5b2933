#include "qbailey/report.hpp"

#include <json.hpp>

#include <sstream>

namespace qb {

using nlohmann::json;

bool IdentityReport::compare(const Series& lhs, const Series& rhs, const std::string& location) {
  lhs_terms += static_cast<std::int64_t>(lhs.size());
  rhs_terms += static_cast<std::int64_t>(rhs.size());
  if (!(lhs.truncation() == rhs.truncation())) {
    fail(location, "truncation " + to_string(lhs.truncation()), "truncation " + to_string(rhs.truncation()));
    return false;
  }
  const auto diff = first_difference(lhs, rhs);
  if (!diff) return true;
  if (passed) {
    passed = false;
    first_mismatch = Mismatch{location, *diff, to_string(coefficient(lhs, *diff)),
                              to_string(coefficient(rhs, *diff))};
  }
  return false;
}

bool IdentityReport::compare(const Rational& lhs, const Rational& rhs, const std::string& location) {
  lhs_terms += 1;
  rhs_terms += 1;
  if (lhs == rhs) return true;
  if (passed) {
    passed = false;
    first_mismatch = Mismatch{location, std::nullopt, to_string(lhs), to_string(rhs)};
  }
  return false;
}

void IdentityReport::fail(const std::string& location, const std::string& lhs, const std::string& rhs) {
  if (!passed) return;
  passed = false;
  first_mismatch = Mismatch{location, std::nullopt, lhs, rhs};
}

namespace {

json monomial_json(const Monomial& m) { return json{{"q", m.q}, {"t", m.t}, {"s", m.s}, {"z", m.z}}; }

json to_json_value(const IdentityReport& r) {
  json j;
  j["id"] = r.id;
  j["params"] = json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  if (r.truncation) {
    j["truncation"] = {{"max_q", r.truncation->max_q}, {"max_t", r.truncation->max_t}};
    j["truncation"]["max_s"] = r.truncation->max_s ? json(*r.truncation->max_s) : json(nullptr);
  } else {
    j["truncation"] = nullptr;
  }
  j["status"] = r.passed ? "pass" : "fail";
  if (r.first_mismatch) {
    const Mismatch& m = *r.first_mismatch;
    j["first_mismatch"] = {{"location", m.location}, {"lhs", m.lhs}, {"rhs", m.rhs}};
    j["first_mismatch"]["monomial"] = m.monomial ? monomial_json(*m.monomial) : json(nullptr);
  } else {
    j["first_mismatch"] = nullptr;
  }
  j["wall_time_ms"] = r.wall_time_ms;
  j["term_counts"] = {{"lhs", r.lhs_terms}, {"rhs", r.rhs_terms}};
  j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  return j;
}

} // namespace

std::string to_json(const IdentityReport& report) { return to_json_value(report).dump(); }

namespace {

IdentityReport parse_report(const std::string& text) {
  const json j = json::parse(text);
  IdentityReport r(j.at("id").get<std::string>());
  for (const auto& [k, v] : j.at("params").items()) r.params[k] = v.get<std::string>();
  if (!j.at("truncation").is_null()) {
    const json& t = j.at("truncation");
    std::optional<int> s;
    if (!t.at("max_s").is_null()) s = t.at("max_s").get<int>();
    r.truncation = Truncation(t.at("max_q").get<int>(), t.at("max_t").get<int>(), s);
  }
  r.passed = j.at("status").get<std::string>() == "pass";
  if (!j.at("first_mismatch").is_null()) {
    const json& m = j.at("first_mismatch");
    Mismatch mm{m.at("location").get<std::string>(), std::nullopt, m.at("lhs").get<std::string>(),
                m.at("rhs").get<std::string>()};
    if (!m.at("monomial").is_null()) {
      const json& mono = m.at("monomial");
      mm.monomial = Monomial{mono.at("q").get<int>(), mono.at("t").get<int>(), mono.at("s").get<int>(),
                             mono.at("z").get<int>()};
    }
    r.first_mismatch = mm;
  }
  r.wall_time_ms = j.at("wall_time_ms").get<std::int64_t>();
  r.lhs_terms = j.at("term_counts").at("lhs").get<std::int64_t>();
  r.rhs_terms = j.at("term_counts").at("rhs").get<std::int64_t>();
  if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

} // namespace

IdentityReport report_from_json(const std::string& text) {
  try {
    return parse_report(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed report JSON: ") + e.what());
  }
}

std::string summary_line(const IdentityReport& r) {
  std::ostringstream out;
  out << (r.passed ? "PASS " : "FAIL ") << r.id;
  for (const auto& [k, v] : r.params) out << ' ' << k << '=' << v;
  if (r.truncation) out << " (" << to_string(*r.truncation) << ')';
  if (r.seed) out << " seed=" << *r.seed;
  out << " terms=" << r.lhs_terms << '/' << r.rhs_terms << " [" << r.wall_time_ms << " ms]";
  if (r.first_mismatch) {
    const Mismatch& m = *r.first_mismatch;
    out << "\n  first mismatch";
    if (!m.location.empty()) out << " at " << m.location;
    if (m.monomial) out << " [" << to_string(*m.monomial, true) << ']';
    out << ": lhs=" << m.lhs << " rhs=" << m.rhs;
  }
  return out.str();
}

} // namespace qb
