#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tickstats/binning.hpp"
#include "tickstats/config.hpp"
#include "tickstats/tickmetrics.hpp"

namespace tickstats {

struct AnalyzeResult {
  TickSizeReport report;
  std::vector<std::string> csv_files;  // curve/stat CSV basenames, sorted
  bool null_consistent = false;        // trade-scale curves flat within 4 SE
  double scatter_slope = 0.0;          // ticks^2 per trade from daily activity
  std::int64_t days_loaded = 0;
  std::int64_t days_kept = 0;
};

// Sorted data files named SYMBOL_YYYYMMDD.csv under data_dir; other files are
// ignored. No match at all is an error naming the directory.
std::vector<std::string> list_day_files(const std::string& data_dir,
                                        const std::string& symbol);

// True when every reported (finite) bin lies within n_se standard errors of
// the curve's pooled value — the trading-time null signature.
bool curve_is_flat(const BinnedCurve& c, double n_se);

// Full pipeline for one symbol: load every day file, trim to session and
// drop thin days, append the tick-size row to output_dir/report.csv, then
// write one CSV (plus a .json sidecar) per configured estimator and a
// <symbol>_run.json summary. Outputs contain no filesystem paths, so equal
// inputs give byte-identical trees wherever they are written.
AnalyzeResult analyze_symbol(const RunConfig& cfg, const std::string& symbol,
                             const std::string& output_dir);

}  // namespace tickstats
