// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Optional arguments restrict the run to the listed criterion numbers.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "matrad/verify.hpp"

using namespace matrad;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> checks;
  double limit_s;  // wall-clock budget, 0 = none
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "special-function identities",
       {"gamma-m-factorization-split", "gamma-m-pochhammer-ratio", "bernstein-duplication-form",
        "bernstein-gamma-ratio", "cayley-laplace-product-symmetry", "fuglede-constant-rank-one"},
       1.0},
      {2, "cone gamma and beta integrals", {"cone-gamma-integral", "cone-beta-interval"}, 30.0},
      {3, "cone derivative", {"cone-derivative-det-power", "cone-derivative-exponential"}, 0},
      {4, "fractional integrals",
       {"minus-shifted-power-closed", "semigroup-gaussian-half-half", "semigroup-gaussian-one-one",
        "semigroup-gaussian-half-one", "plus-minus-interrelation", "half-integral-triangular-form"},
       120.0},
      {5, "plane integrals in closed form", {"radon-shifted-power-random-planes", "radon-gaussian-random-planes"},
       120.0},
      {6, "dual transforms in closed form", {"dual-power-random-points", "dual-product-power-random-points"}, 0},
      {7, "integral identities",
       {"plane-integral-identity-power-weight", "plane-integral-identity-shifted-weight",
        "dual-integral-identity-shifted-weight", "mass-identity-closed", "mass-identity-mc"},
       0},
      {8, "projection-slice", {"projection-slice-closed", "projection-slice-real-part", "projection-slice-imaginary-part"},
       0},
      {9, "dual of the Radon image vs Riesz potential", {"fuglede-gaussian-origin", "fuglede-power-chain"}, 0},
      {10, "mean-value inversion", {"mean-value-inversion-gaussian"}, 120.0},
      {11, "plane-wave inversion", {"plane-wave-gaussian-origin", "plane-wave-gaussian-random-point"}, 180.0},
      {12, "counterexample growth probe",
       {"probe-critical-fhat-growth", "probe-critical-norm-shells", "probe-subcritical-stabilizes"}, 180.0},
      {13, "existence guards", {"existence-guard-power-threshold", "existence-guard-lp-critical"}, 0},
  };
  return list;
}

const CheckSpec* find(const std::string& id) {
  for (const auto& c : registry())
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  const SuiteConfig cfg;
  int failed = 0;
  const auto t_all = std::chrono::steady_clock::now();
  for (const auto& crit : criteria()) {
    if (!only.empty() && !only.count(crit.number)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckResult> results;
    std::vector<std::string> notes;
    for (const auto& id : crit.checks) {
      const CheckSpec* spec = find(id);
      if (!spec) {
        notes.push_back(id + ": not registered");
        continue;
      }
      results.push_back(run_check(*spec, cfg));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = notes.empty();
    for (const auto& r : results) {
      if (r.pass) continue;
      ok = false;
      char buf[256];
      std::snprintf(buf, sizeof buf, "%s: lhs=%.10g rhs=%.10g score=%.4g%s%s", r.check_id.c_str(), r.lhs, r.rhs,
                    r.score, r.error.empty() ? "" : " error=", r.error.c_str());
      notes.push_back(buf);
    }
    if (crit.limit_s > 0 && secs > crit.limit_s) {
      ok = false;
      notes.push_back("over the time budget of " + std::to_string(crit.limit_s) + " s");
    }
    std::printf("criterion %2d %s  %-45s %zu checks  %.2f s\n", crit.number, ok ? "PASS" : "FAIL",
                crit.title.c_str(), results.size(), secs);
    for (const auto& n : notes) std::printf("    %s\n", n.c_str());
    for (const auto& r : results)
      std::printf("    . %-42s score=%-12.4g lhs=%-16.10g rhs=%-16.10g %lld ms\n", r.check_id.c_str(), r.score, r.lhs,
                  r.rhs, static_cast<long long>(r.wall_time_ms));
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  std::printf("%d criteria failed, %.1f s total\n", failed,
              std::chrono::duration<double>(std::chrono::steady_clock::now() - t_all).count());
  return failed == 0 ? 0 : 1;
}
