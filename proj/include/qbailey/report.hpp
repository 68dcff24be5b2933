#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "qbailey/series.hpp"

namespace qb {

struct Mismatch {
  // Where the identity failed, e.g. "n=3" or "l=2,n=1,point=#4".
  std::string location;
  // The differing monomial for series comparisons.
  std::optional<Monomial> monomial;
  std::string lhs;
  std::string rhs;

  friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

// Machine-readable verdict of one identity check.
struct IdentityReport {
  std::string id;
  std::map<std::string, std::string> params;
  std::optional<Truncation> truncation;
  bool passed = true;
  std::optional<Mismatch> first_mismatch;
  std::int64_t wall_time_ms = 0;
  std::int64_t lhs_terms = 0;
  std::int64_t rhs_terms = 0;
  std::optional<std::uint64_t> seed;

  explicit IdentityReport(std::string identity = {}) : id(std::move(identity)) {}

  IdentityReport& param(const std::string& key, const std::string& value) {
    params[key] = value;
    return *this;
  }
  IdentityReport& param(const std::string& key, long value) { return param(key, std::to_string(value)); }

  // Records lhs == rhs. The first failure wins; later ones are ignored so
  // the report pinpoints the earliest (location, monomial).
  bool compare(const Series& lhs, const Series& rhs, const std::string& location = {});
  bool compare(const Rational& lhs, const Rational& rhs, const std::string& location = {});
  // Marks the report failed with a free-form reason.
  void fail(const std::string& location, const std::string& lhs, const std::string& rhs);

  friend bool operator==(const IdentityReport&, const IdentityReport&) = default;
};

// Fills wall_time_ms when it goes out of scope.
class ReportTimer {
public:
  explicit ReportTimer(IdentityReport& report)
      : report_(report), start_(std::chrono::steady_clock::now()) {}
  ~ReportTimer() {
    report_.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start_)
                               .count();
  }
  ReportTimer(const ReportTimer&) = delete;
  ReportTimer& operator=(const ReportTimer&) = delete;

private:
  IdentityReport& report_;
  std::chrono::steady_clock::time_point start_;
};

std::string to_json(const IdentityReport& report);
IdentityReport report_from_json(const std::string& text);
// One human-readable line: "PASS id k=1 ... [12 ms]" plus the mismatch on failure.
std::string summary_line(const IdentityReport& report);

} // namespace qb
