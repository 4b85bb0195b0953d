#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tickstats/simulate.hpp"
#include "tickstats/types.hpp"

namespace tickstats {

struct InstrumentConfig {
  std::string symbol;
  double tick_value = 0.0;
  SessionBounds session{0, 0};
  std::int64_t min_trades = 5000;  // days at or below this are dropped
};

struct EstimatorConfig {
  int n_bins = 30;
  Ms dt0_ms = 300'000;  // clock window for the count-binned variance curve
  std::vector<std::int64_t> var_n0 = {1, 100};
  std::vector<std::int64_t> impact_n0 = {1, 200};
  std::vector<std::int64_t> spread_n0 = {100};
  // sample_ms: [0] intraday-profile squares, [1] daily realized variance
  Ms seasonality_sample_ms = 60'000;
  Ms scatter_sample_ms = 300'000;
};

struct RunConfig {
  // Relative paths are resolved against the config file's directory.
  std::string data_dir;
  std::string output_dir;
  std::vector<InstrumentConfig> instruments;
  EstimatorConfig estimators;
  std::optional<SimScenario> scenario;
};

// "HH:MM" (24h) -> milliseconds since midnight, and back.
Ms parse_hhmm(const std::string& hhmm);
std::string format_hhmm(Ms since_midnight);

// Loads and fully validates a JSON config file; any structural or range
// problem throws DataError naming the offending field.
RunConfig load_run_config(const std::string& path);

// Same, from in-memory text; `origin` names the source in error messages.
RunConfig run_config_from_text(const std::string& text, const std::string& origin);

const InstrumentConfig& find_instrument(const RunConfig& cfg, const std::string& symbol);

// Scenario <-> JSON text (the provenance echo written next to emitted data).
// Round-trips every field; parsing validates via SimScenario::validate().
std::string scenario_to_json_text(const SimScenario& s);
SimScenario scenario_from_json_text(const std::string& text, const std::string& origin);

}  // namespace tickstats
