#include "test_util.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "matrad/verify.hpp"

using namespace matrad;

namespace {

std::vector<CheckResult> sample_results() {
  CheckResult a;
  a.check_id = "alpha-check";
  a.lhs = 1.0 / 3.0;
  a.rhs = 0.1 + 0.2;
  a.stderr_lhs = 1e-17;
  a.stderr_rhs = 0;
  a.score = 2.718281828459045;
  a.pass = true;
  a.wall_time_ms = 12;
  a.seed = 0xfedcba9876543210ULL;
  CheckResult b = a;
  b.check_id = "beta,with \"quotes\"";
  b.lhs = b.rhs = b.score = std::numeric_limits<double>::quiet_NaN();
  b.pass = false;
  b.lhs = -1.2345678901234567e-300;
  return {a, b};
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("check ids are unique and tagged") {
    std::set<std::string> ids;
    for (const auto& c : registry()) {
      CHECK(ids.insert(c.id).second);
      CHECK_FALSE(c.tags.empty());
    }
    CHECK(ids.size() >= 40);
  }

  TEST_CASE("filters") {
    CHECK_THROWS_AS(select_checks("", false), NoSuchCheck);
    CHECK_THROWS_AS(select_checks(" , ", false), NoSuchCheck);
    CHECK_THROWS_AS(select_checks("no-such-thing", false), NoSuchCheck);
    const auto spec = select_checks("specialfn", false);
    CHECK(spec.size() >= 6);
    for (const auto* c : select_checks("all", false)) CHECK_FALSE(c->slow);
    bool slow_seen = false;
    for (const auto* c : select_checks("all", true)) slow_seen = slow_seen || c->slow;
    CHECK(slow_seen);
  }

  TEST_CASE("per-check seeds depend only on the id") {
    CHECK(check_seed(1, "a") == check_seed(1, "a"));
    CHECK(check_seed(1, "a") != check_seed(1, "b"));
    CHECK(check_seed(1, "a") != check_seed(2, "a"));
  }

  TEST_CASE("special-function identities pass, ordered by id") {
    const auto res = run_suite("specialfn", SuiteConfig{});
    for (std::size_t i = 0; i < res.size(); ++i) {
      CHECK_MESSAGE(res[i].pass, res[i].check_id);
      if (i) CHECK(res[i - 1].check_id < res[i].check_id);
    }
  }

  TEST_CASE("same seed reproduces every field") {
    SuiteConfig cfg;
    cfg.samples = 20000;
    auto a = run_suite("matrix-gaussian-integral,zeta-gaussian-mc", cfg);
    auto b = run_suite("matrix-gaussian-integral,zeta-gaussian-mc", cfg);
    REQUIRE(a.size() == 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
      b[i].wall_time_ms = a[i].wall_time_ms;  // the only field allowed to move
      CHECK(same_fields(a[i], b[i]));
    }
    cfg.seed = 7;
    const auto c = run_suite("matrix-gaussian-integral", cfg);
    CHECK(c[0].lhs != a[0].lhs);
  }

  TEST_CASE("report round-trip, JSON and CSV") {
    const auto res = sample_results();
    for (auto fmt : {ReportFormat::Json, ReportFormat::Csv}) {
      const auto back = parse_report(emit_report(res, fmt), fmt);
      REQUIRE(back.size() == res.size());
      for (std::size_t i = 0; i < res.size(); ++i) CHECK(same_fields(back[i], res[i]));
    }
    const auto csv = emit_report(res, ReportFormat::Csv);
    CHECK(csv.rfind("check_id,lhs,rhs,stderr_lhs,stderr_rhs,score,pass,wall_time_ms,seed\n", 0) == 0);
    CHECK(parse_report(emit_report({}, ReportFormat::Json), ReportFormat::Json).empty());
  }

  TEST_CASE("JSON objects carry exactly the nine fields, 17 digits") {
    const auto text = emit_report({sample_results()[0]}, ReportFormat::Json);
    CHECK(text.find("0.33333333333333331") != std::string::npos);
    for (const char* key : {"check_id", "lhs", "rhs", "stderr_lhs", "stderr_rhs", "score", "pass", "wall_time_ms", "seed"})
      CHECK(text.find(std::string("\"") + key + "\"") != std::string::npos);
    CHECK(text.find("error") == std::string::npos);
  }

  TEST_CASE("a raising check becomes a failed result") {
    CheckSpec spec{"raises", {"x"}, "always raises", CheckKind::ExactIdentity, 1.0, 0, false,
                   [](const CheckContext&) -> Outcome { throw ExistenceViolation("nope"); }};
    const auto r = run_check(spec, SuiteConfig{});
    CHECK_FALSE(r.pass);
    CHECK(r.error == "ExistenceViolation");
    CHECK(std::isnan(r.score));
  }

  TEST_CASE("scoring rules") {
    CHECK(score_mc_exact({1.0, 0.1, 10}, 1.25).pass);
    CHECK_FALSE(score_mc_exact({1.0, 0.1, 10}, 1.35).pass);
    CHECK(score_mc_mc({1.0, 0.3, 10}, {2.0, 0.4, 10}).score == doctest::Approx(2.0));
    CHECK(score_exact(1.0 + 1e-11, 1.0, 1e-10).pass);
    const auto w = worst_of({score_exact(1, 1, 0.1), score_exact(2, 1, 0.1)}, 0.1);
    CHECK_FALSE(w.pass);
    CHECK(w.lhs == 2.0);
  }
}
