// Command-line front end: analyze one symbol's event files, generate the
// configured scenario's dataset, or run the acceptance battery.
// Exit codes: 0 ok, 1 usage, 2 data/config error, 3 verification failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tickstats/analysis.hpp"
#include "tickstats/config.hpp"
#include "tickstats/parse.hpp"
#include "tickstats/report.hpp"
#include "tickstats/simulate.hpp"
#include "tickstats/verify.hpp"

namespace fs = std::filesystem;
using namespace tickstats;

namespace {

int cmd_analyze(const RunConfig& cfg, const std::string& symbol) {
  const AnalyzeResult res = analyze_symbol(cfg, symbol, cfg.output_dir);
  std::cout << symbol << ": " << res.days_kept << "/" << res.days_loaded
            << " days kept, " << res.report.n_trades << " orders, "
            << res.csv_files.size() << " csv files -> " << cfg.output_dir << "\n";
  std::cout << "null_consistent=" << (res.null_consistent ? "true" : "false")
            << " scatter_slope_ticks2_per_trade=" << format_double(res.scatter_slope)
            << "\n";
  return 0;
}

int cmd_simulate(const RunConfig& cfg) {
  if (!cfg.scenario)
    throw DataError("config has no scenario block; nothing to simulate");
  const SimScenario& s = *cfg.scenario;
  const std::vector<std::string> paths = simulate_to_dir(s, cfg.data_dir);
  write_text_file((fs::path(cfg.data_dir) / "scenario.json").string(),
                  scenario_to_json_text(s));
  for (int d = 0; d < s.n_days; ++d) {
    const SimulatedDay sim = simulate_day(s, d);
    std::cout << fs::path(paths[static_cast<std::size_t>(d)]).filename().string()
              << ": " << sim.day.n_trades() << " orders\n";
  }
  std::cout << s.n_days << " day files + scenario.json -> " << cfg.data_dir << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg, bool quick) {
  VerifyOptions opt;
  opt.quick = quick;
  opt.work_dir = (fs::path(cfg.output_dir) / "verify_scratch").string();
  const VerifyReport rep = run_acceptance_checks(opt);

  int n_passed = 0;
  for (const CheckResult& c : rep.checks) {
    std::cout << (c.passed ? "PASS" : "FAIL") << "  [" << (c.id < 10 ? " " : "")
              << c.id << "] " << c.name << ": " << c.detail << "\n";
    if (c.passed) ++n_passed;
  }
  fs::create_directories(cfg.output_dir);
  write_text_file((fs::path(cfg.output_dir) / "verdict.json").string(),
                  verify_report_json(rep));
  std::cout << "RESULT: " << n_passed << "/" << rep.checks.size()
            << " checks passed; verdict.json -> " << cfg.output_dir << "\n";
  return rep.all_passed() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tickstats: market-order analytics engine and trading-time simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string symbol;
  bool quick = false;

  CLI::App* analyze =
      app.add_subcommand("analyze", "Estimate the full curve bundle for one symbol");
  analyze->add_option("--config", config_path, "run configuration JSON")->required();
  analyze->add_option("--symbol", symbol, "instrument symbol from the config")->required();

  CLI::App* simulate =
      app.add_subcommand("simulate", "Write the configured scenario's event files");
  simulate->add_option("--config", config_path, "run configuration JSON")->required();

  CLI::App* verify = app.add_subcommand(
      "verify", "Run the acceptance battery and write a verdict JSON");
  verify->add_option("--config", config_path, "run configuration JSON")->required();
  verify->add_flag("--quick", quick,
                   "shrink the two 100-day scenarios (tolerances unchanged)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints help or the usage error
    return rc == 0 ? 0 : 1;
  }

  try {
    RunConfig cfg = load_run_config(config_path);
    if (const char* env = std::getenv("TICKSTATS_OUTPUT_DIR"); env != nullptr && *env != '\0')
      cfg.output_dir = env;
    if (analyze->parsed()) return cmd_analyze(cfg, symbol);
    if (simulate->parsed()) return cmd_simulate(cfg);
    return cmd_verify(cfg, quick);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
