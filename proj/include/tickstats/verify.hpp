#pragma once

#include <string>
#include <vector>

namespace tickstats {

// One end-to-end check of the engine against the simulator's ground truth.
struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured numbers next to their bounds
};

struct VerifyOptions {
  // Shrinks the two 100-day scenarios (activity regression, seasonality) to
  // 40/30 days. Tolerances stay identical; every check still runs.
  bool quick = false;
  // Scratch root for the checks that go through files; created if missing,
  // per-check subdirectories are wiped before use.
  std::string work_dir;
};

struct VerifyReport {
  bool quick = false;
  std::vector<CheckResult> checks;  // all checks, in id order, never short-circuited

  bool all_passed() const {
    for (const CheckResult& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

// Runs the full acceptance battery: simulated ground truth in, estimator
// output out, pass/fail against tolerances pinned in the implementation.
// A check that throws is reported as failed with the exception text; the
// remaining checks still run.
VerifyReport run_acceptance_checks(const VerifyOptions& opt);

// Machine-readable verdict: {"quick","all_passed","checks":[...]}.
std::string verify_report_json(const VerifyReport& report);

}  // namespace tickstats
