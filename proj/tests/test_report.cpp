#include <doctest.h>

#include <cstdlib>

#include <json.hpp>

#include "qbailey/parallel.hpp"
#include "qbailey/qfunctions.hpp"
#include "qbailey/report.hpp"
#include "qbailey/verify.hpp"

using namespace qb;

TEST_CASE("compare records the first mismatch at the smallest monomial") {
  const Truncation tr(4, 4);
  IdentityReport report("probe");
  CHECK(report.compare(mono(tr, 1), mono(tr, 1), "n=0"));
  CHECK_FALSE(report.compare(mono(tr, 2) + mono(tr, 0, 3), mono(tr, 2) + mono(tr, 1, 1), "n=1"));
  CHECK_FALSE(report.compare(mono(tr, 0), mono(tr, 1), "n=2"));
  CHECK_FALSE(report.passed);
  REQUIRE(report.first_mismatch);
  CHECK(report.first_mismatch->location == "n=1");
  CHECK(report.first_mismatch->monomial == Monomial{0, 3, 0, 0});
  CHECK(report.first_mismatch->lhs == "1/1");
  CHECK(report.first_mismatch->rhs == "0/1");
}

TEST_CASE("JSON round trip is byte-identical") {
  const Truncation tr(3, 2, 1);
  IdentityReport failing("demo");
  failing.truncation = tr;
  failing.param("k", 2).param("rep", "bosonic");
  failing.seed = 42;
  failing.wall_time_ms = 17;
  failing.compare(mono(tr, 1, 0, 1, -2, Rational(-3, 4)), Series(tr), "l=1,n=0");
  IdentityReport passing("ok");
  passing.compare(Rational(2), Rational(2));
  for (const auto& report : {failing, passing}) {
    const std::string text = to_json(report);
    const IdentityReport back = report_from_json(text);
    CHECK(back == report);
    CHECK(to_json(back) == text);
    CHECK(nlohmann::json::parse(text).is_object());
  }
  const auto j = nlohmann::json::parse(to_json(failing));
  CHECK(j["status"] == "fail");
  CHECK(j["seed"] == 42);
  CHECK(j["id"] == "demo");
}

TEST_CASE("summary line") {
  IdentityReport report("thm-main");
  report.param("k", 1);
  CHECK(summary_line(report).rfind("PASS thm-main", 0) == 0);
  report.fail("n=3", "1", "2");
  CHECK(summary_line(report).rfind("FAIL thm-main", 0) == 0);
  CHECK(summary_line(report).find("n=3") != std::string::npos);
}

TEST_CASE("malformed JSON is rejected") {
  CHECK_THROWS_AS(report_from_json("{\"id\": 3"), UsageError);
  CHECK_THROWS_AS(report_from_json("[]"), UsageError);
}

TEST_CASE("parallel map keeps index order and propagates errors") {
  const Truncation tr(6, 0);
  setenv("QBAILEY_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  const auto results = parallel_map(20, [&](std::size_t i) { return mono(tr, static_cast<int>(i % 7)); });
  for (std::size_t i = 0; i < results.size(); ++i) CHECK(results[i] == mono(tr, static_cast<int>(i % 7)));
  Series serial(tr);
  for (std::size_t i = 0; i < 20; ++i) serial += poch(mono(tr, 1), static_cast<int>(i % 5));
  CHECK(parallel_sum(tr, 20, [&](std::size_t i) { return poch(mono(tr, 1), static_cast<int>(i % 5)); }) == serial);
  CHECK_THROWS_AS(parallel_map(8,
                               [&](std::size_t i) -> Series {
                                 if (i == 5) throw DomainError("boom");
                                 return Series(tr);
                               }),
                  DomainError);
  setenv("QBAILEY_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  unsetenv("QBAILEY_THREADS");
  CHECK(worker_count() >= 1);
}

TEST_CASE("results do not depend on the worker count") {
  VerifyOptions options;
  options.k = 2;
  options.nq = 6;
  options.nt = 4;
  setenv("QBAILEY_THREADS", "1", 1);
  auto one = run_verify("thm-main", options);
  setenv("QBAILEY_THREADS", "4", 1);
  auto four = run_verify("thm-main", options);
  unsetenv("QBAILEY_THREADS");
  REQUIRE(one.size() == 1);
  one[0].wall_time_ms = four[0].wall_time_ms = 0;
  CHECK(to_json(one[0]) == to_json(four[0]));
}

TEST_CASE("verify dispatch") {
  VerifyOptions options;
  options.nq = 5;
  options.nt = 4;
  for (const auto& id : verify_ids()) {
    if (id == "appx-c" || id == "lemma-b1") {
      options.points = 2;
      options.seed = 7;
      options.lmax = 3;
    }
    const auto reports = run_verify(id, options);
    REQUIRE_FALSE(reports.empty());
    for (const auto& r : reports) CHECK_MESSAGE(r.passed, summary_line(r));
  }
  CHECK_THROWS_AS(run_verify("no-such-id", options), UsageError);
  options.k = 0;
  CHECK_THROWS_AS(run_verify("thm-main", options), UsageError);
  options.k = 1;
  options.b = {Rational(1), Rational(2)};
  CHECK_THROWS_AS(run_verify("thm-general", options), UsageError);
}

TEST_CASE("rational suites record their seed and are reproducible") {
  const IdentityReport a = binomial_sum_suite(3, 3, 3, 11);
  const IdentityReport b = binomial_sum_suite(3, 3, 3, 11);
  CHECK(a.passed);
  CHECK(a.seed == std::optional<std::uint64_t>(11));
  IdentityReport a0 = a, b0 = b;
  a0.wall_time_ms = b0.wall_time_ms = 0;
  CHECK(to_json(a0) == to_json(b0));
}
