#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "matrad/radon.hpp"
#include "matrad/verify.hpp"

using namespace matrad;

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return s;
}

void print_probe(const GrowthReport& r) {
  std::printf("counterexample probe: p = %g, p0 = %g, (n, m, k) = (%d, %d, %d)\n", r.p, r.p0, r.n, r.m, r.k);
  std::printf("%10s %16s %12s %10s\n", "radius", "partial", "stderr", "ratio");
  for (std::size_t i = 0; i < r.fhat_radii.size(); ++i) {
    std::printf("%10g %16.8g %12.4g", r.fhat_radii[i], r.fhat_partial[i].value, r.fhat_partial[i].std_err);
    if (i > 0 && i - 1 < r.fhat_ratios.size()) std::printf(" %10.4f", r.fhat_ratios[i - 1]);
    std::printf("\n");
  }
  std::printf("growth signature: %s   stabilized: %s\n", r.divergence_signature ? "yes" : "no",
              r.stabilized ? "yes" : "no");
  std::printf("%10s %16s %12s %10s\n", "shell", "|F|^p mass", "stderr", "ratio");
  for (std::size_t i = 0; i < r.norm_shells.size(); ++i) {
    std::printf("%10g %16.8g %12.4g", r.norm_radii[i], r.norm_shells[i].value, r.norm_shells[i].std_err);
    if (i > 0 && i - 1 < r.norm_ratios.size()) std::printf(" %10.4f", r.norm_ratios[i - 1]);
    std::printf("\n");
  }
  std::printf("norm shells shrink: %s\n", r.norm_converges ? "yes" : "no");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matrad-verify: numerical checks for the matrix-space Radon transform"};
  app.require_subcommand(1);

  std::string filter = "all", format = "json", out_path;
  bool slow = false;
  std::uint64_t samples = 0, seed = 0x5eed;
  unsigned threads = 0;
  auto* verify = app.add_subcommand("verify", "run checks and write a report");
  verify->add_option("--filter", filter, "comma-separated tags or id substrings ('all' for everything)");
  verify->add_flag("--slow", slow, "include checks tagged slow");
  verify->add_option("--samples", samples, "override every check's sample count");
  verify->add_option("--seed", seed, "global seed");
  verify->add_option("--threads", threads, "MC worker threads (0 = all cores)");
  verify->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", out_path, "write the report here instead of stdout");

  auto* list = app.add_subcommand("list", "list registered checks");

  auto* probe = app.add_subcommand("probe", "growth reports");
  auto* cex = probe->add_subcommand("counterexample", "partial integrals of the L^p counterexample");
  probe->require_subcommand(1);
  double p = 2.0;
  int n = 5, m = 2, k = 2;
  std::uint64_t probe_samples = 50000;
  cex->add_option("--p", p, "exponent p")->required();
  cex->add_option("--n", n, "rows of x")->required();
  cex->add_option("--m", m, "columns of x")->required();
  cex->add_option("--k", k, "plane dimension")->required();
  cex->add_option("--samples", probe_samples, "MC samples per radius");
  cex->add_option("--seed", seed, "seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& c : registry())
        std::printf("%-42s %-12s %-22s %s%s\n", c.id.c_str(), kind_name(c.kind), join(c.tags).c_str(),
                    c.summary.c_str(), c.slow ? " [slow]" : "");
      return 0;
    }
    if (*cex) {
      MCConfig cfg;
      cfg.n_samples = probe_samples;
      cfg.seed = seed;
      print_probe(counterexample_b_probe(p, n, m, k, ProbeSchedule{}, cfg));
      return 0;
    }
    SuiteConfig cfg;
    cfg.seed = seed;
    cfg.samples = samples;
    cfg.include_slow = slow;
    cfg.threads = threads;
    const auto results = run_suite(filter, cfg);
    const auto text = emit_report(results, format == "csv" ? ReportFormat::Csv : ReportFormat::Json);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream(out_path) << text;
    }
    int failed = 0;
    for (const auto& r : results) {
      if (r.pass) continue;
      ++failed;
      std::fprintf(stderr, "FAILED %s%s%s\n", r.check_id.c_str(), r.error.empty() ? "" : ": ", r.error.c_str());
    }
    std::fprintf(stderr, "%zu checks, %d failed\n", results.size(), failed);
    return failed == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
}
