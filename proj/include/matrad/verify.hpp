#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "matrad/mcquad.hpp"

namespace matrad {

enum class CheckKind { ExactIdentity, MCvsExact, MCvsMC, GrowthSignature };

const char* kind_name(CheckKind k);

// What a check computes, before scoring. Compound checks (many random draws)
// report their worst item.
struct Outcome {
  double lhs = 0, rhs = 0;
  double stderr_lhs = 0, stderr_rhs = 0;
  double score = 0;  // z-score, relative error, or signature margin
  bool pass = false;
};

Outcome score_exact(double lhs, double rhs, double tol);
Outcome score_mc_exact(const MCEstimate& est, double target, double z_max = 3.0);
Outcome score_mc_mc(const MCEstimate& a, const MCEstimate& b, double z_max = 3.0);
// the item that is furthest from passing (largest score / threshold); pass iff all pass
Outcome worst_of(const std::vector<Outcome>& items, double threshold);

struct CheckContext {
  MCConfig cfg;          // seed already derived for this check
  std::uint64_t seed;    // per-check seed, also reported
};

struct CheckSpec {
  std::string id;
  std::vector<std::string> tags;
  std::string summary;
  CheckKind kind;
  double threshold;              // tol for ExactIdentity, z_max for MC kinds
  std::uint64_t default_samples; // 0 for closed-form checks
  bool slow = false;
  std::function<Outcome(const CheckContext&)> run;
};

struct CheckResult {
  std::string check_id;
  double lhs = 0, rhs = 0;
  double stderr_lhs = 0, stderr_rhs = 0;
  double score = 0;
  bool pass = false;
  std::int64_t wall_time_ms = 0;
  std::uint64_t seed = 0;
  // not part of the report schema: name of the error that aborted the check
  std::string error;
};

bool same_fields(const CheckResult& a, const CheckResult& b);

struct SuiteConfig {
  std::uint64_t seed = 0x5eedULL;
  std::uint64_t samples = 0;  // 0: per-check defaults
  bool include_slow = false;
  unsigned threads = 0;       // MC worker threads, 0 = hardware
};

const std::vector<CheckSpec>& registry();

// Per-check seed: stable hash of the id mixed with the global seed.
std::uint64_t check_seed(std::uint64_t global_seed, const std::string& id);

// Filter: comma-separated terms; a check is selected if any term equals one of
// its tags or is a substring of its id. Throws NoSuchCheck when nothing matches.
std::vector<const CheckSpec*> select_checks(const std::string& filter, bool include_slow);

CheckResult run_check(const CheckSpec& spec, const SuiteConfig& cfg);
// Results ordered by check_id.
std::vector<CheckResult> run_suite(const std::string& filter, const SuiteConfig& cfg);

enum class ReportFormat { Json, Csv };
std::string emit_report(const std::vector<CheckResult>& results, ReportFormat fmt);
std::vector<CheckResult> parse_report(const std::string& text, ReportFormat fmt);

}  // namespace matrad
