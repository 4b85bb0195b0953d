#include "tickstats/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "json.hpp"
#include "tickstats/condstats.hpp"
#include "tickstats/orderflow.hpp"
#include "tickstats/report.hpp"

namespace tickstats {

using nlohmann::json;

namespace {

constexpr Ms kProfileSlotMs = 900'000;  // 15-minute intraday slots

bool looks_like_day_file(const std::string& name, const std::string& symbol) {
  // SYMBOL_YYYYMMDD.csv
  const std::string prefix = symbol + "_";
  const std::string suffix = ".csv";
  if (name.size() != prefix.size() + 8 + suffix.size()) return false;
  if (name.compare(0, prefix.size(), prefix) != 0) return false;
  if (name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) return false;
  for (std::size_t i = prefix.size(); i < prefix.size() + 8; ++i) {
    if (name[i] < '0' || name[i] > '9') return false;
  }
  return true;
}

json diagnostics_json(const ParseDiagnostics& p, const BuildDiagnostics& b,
                      const FilterDiagnostics& f) {
  return json{{"lines", p.lines},
              {"trade_events", p.trade_events},
              {"quote_events", p.quote_events},
              {"crossed_quotes", p.crossed_quotes},
              {"zero_volume_trades", p.zero_volume_trades},
              {"nonmonotone_timestamps", p.nonmonotone_timestamps},
              {"fills", b.fills},
              {"orders", b.orders},
              {"trades_dropped_no_quote", b.trades_dropped_no_quote},
              {"trades_dropped_locked_book", b.trades_dropped_locked_book},
              {"out_of_session_orders", f.out_of_session_orders},
              {"days_dropped_min_trades", f.days_dropped_min_trades}};
}

json report_json(const TickSizeReport& r) {
  return json{{"symbol", r.symbol},
              {"tick_value", r.tick_value},
              {"n_days", r.n_days},
              {"n_trades", r.n_trades},
              {"pct_spread_one", r.pct_spread_one},
              {"pct_null_return", r.pct_null_return},
              {"eta", r.eta},
              {"perceived_tick", r.perceived},
              {"eta_days_used", r.eta_days_used},
              {"eta_days_skipped", r.eta_days_skipped}};
}

// Sidecar next to each CSV: what produced it and from which days.
void write_sidecar(const std::string& out_dir, const std::string& csv_name,
                   json meta, const std::string& symbol,
                   const std::vector<std::string>& day_ids, double tick_value) {
  meta["command"] = "analyze --symbol " + symbol;
  meta["symbol"] = symbol;
  meta["tick_value"] = tick_value;
  meta["day_ids"] = day_ids;
  meta["csv"] = csv_name;
  const std::string base = csv_name.substr(0, csv_name.size() - 4);  // drop .csv
  write_text_file((std::filesystem::path(out_dir) / (base + ".json")).string(),
                  meta.dump(2) + "\n");
}

json curve_meta(const BinnedCurve& c, int n_bins_configured) {
  json params = json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  return json{{"estimator", c.estimator},
              {"params", params},
              {"n_bins_configured", n_bins_configured},
              {"n_bins_reported", c.size()},
              {"pooled_value", c.pooled_value},
              {"total_count", c.total_count}};
}

}  // namespace

std::vector<std::string> list_day_files(const std::string& data_dir,
                                        const std::string& symbol) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(data_dir)) {
    throw DataError("data_dir does not exist: " + data_dir);
  }
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(data_dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (looks_like_day_file(name, symbol)) files.push_back(entry.path().string());
  }
  if (files.empty()) {
    throw DataError("no " + symbol + "_YYYYMMDD.csv event files under " + data_dir);
  }
  std::sort(files.begin(), files.end());
  return files;
}

bool curve_is_flat(const BinnedCurve& c, double n_se) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (std::isnan(c.value[i])) continue;
    if (std::fabs(c.value[i] - c.pooled_value) > n_se * c.se[i]) return false;
  }
  return true;
}

AnalyzeResult analyze_symbol(const RunConfig& cfg, const std::string& symbol,
                             const std::string& output_dir) {
  namespace fs = std::filesystem;
  const InstrumentConfig& inst = find_instrument(cfg, symbol);
  const EstimatorConfig& est = cfg.estimators;

  const std::vector<std::string> files = list_day_files(cfg.data_dir, symbol);

  ParseDiagnostics parse_diag;
  BuildDiagnostics build_diag;
  std::vector<TradingDay> days;
  for (const auto& path : files) {
    LoadedDay loaded = load_day_file(path, symbol, inst.tick_value, inst.session);
    parse_diag.lines += loaded.parse.lines;
    parse_diag.trade_events += loaded.parse.trade_events;
    parse_diag.quote_events += loaded.parse.quote_events;
    parse_diag.crossed_quotes += loaded.parse.crossed_quotes;
    parse_diag.zero_volume_trades += loaded.parse.zero_volume_trades;
    parse_diag.nonmonotone_timestamps += loaded.parse.nonmonotone_timestamps;
    build_diag.fills += loaded.build.fills;
    build_diag.orders += loaded.build.orders;
    build_diag.trades_dropped_no_quote += loaded.build.trades_dropped_no_quote;
    build_diag.trades_dropped_locked_book += loaded.build.trades_dropped_locked_book;
    days.push_back(std::move(loaded.day));
  }
  // File-system enumeration already sorts, but the estimate must not depend
  // on it: fix the day order once and for all.
  std::sort(days.begin(), days.end(),
            [](const TradingDay& a, const TradingDay& b) { return a.day_id < b.day_id; });

  FilterResult filtered = filter_days(std::move(days), inst.min_trades);
  const std::vector<TradingDay>& kept = filtered.days;

  AnalyzeResult result;
  result.days_loaded = static_cast<std::int64_t>(files.size());
  result.days_kept = filtered.diag.days_kept;
  result.report = tick_size_report(kept, symbol, inst.tick_value);

  std::vector<std::string> day_ids;
  for (const auto& d : kept) day_ids.push_back(d.day_id);

  // Estimators. The one-trade bundle is always computed: it feeds the
  // move-probability and amplitude files and the flatness flag.
  TradeScaleCurves bundle = var_prob_amp_n1(kept, est.n_bins);
  BinnedCurve impact1 = impact_cond(kept, 1, est.n_bins);
  result.null_consistent = curve_is_flat(bundle.v, 4.0) &&
                           curve_is_flat(bundle.p, 4.0) &&
                           curve_is_flat(bundle.a, 4.0) &&
                           curve_is_flat(impact1, 4.0);

  std::vector<BinnedCurve> curves;
  curves.push_back(bundle.p);
  curves.push_back(bundle.a);
  for (auto n0 : est.var_n0) {
    curves.push_back(n0 == 1 ? bundle.v : var_fixed_n(kept, n0, est.n_bins));
  }
  for (auto n0 : est.impact_n0) {
    curves.push_back(n0 == 1 ? impact1 : impact_cond(kept, n0, est.n_bins));
  }
  for (auto n0 : est.spread_n0) {
    curves.push_back(spread_cond(kept, n0, est.n_bins));
  }
  curves.push_back(var_fixed_dt(kept, est.dt0_ms, est.n_bins));

  const auto slots = seasonality(kept, kProfileSlotMs, est.seasonality_sample_ms);
  const DailyScatter scatter = daily_scatter(kept, est.scatter_sample_ms);
  result.scatter_slope = scatter.slope;

  // Emission.
  fs::create_directories(output_dir);
  append_report_row((fs::path(output_dir) / "report.csv").string(), result.report);

  for (const auto& c : curves) {
    const std::string name = curve_csv_name(symbol, c);
    write_text_file((fs::path(output_dir) / name).string(), curve_to_csv(c));
    write_sidecar(output_dir, name, curve_meta(c, est.n_bins), symbol, day_ids,
                  inst.tick_value);
    result.csv_files.push_back(name);
  }
  {
    const std::string name = symbol + "_seasonality.csv";
    write_text_file((fs::path(output_dir) / name).string(), seasonality_to_csv(slots));
    write_sidecar(output_dir, name,
                  json{{"estimator", "seasonality"},
                       {"params", json{{"slot_ms", kProfileSlotMs},
                                       {"sample_ms", est.seasonality_sample_ms}}},
                       {"n_slots", slots.size()}},
                  symbol, day_ids, inst.tick_value);
    result.csv_files.push_back(name);
  }
  {
    const std::string name = symbol + "_daily_scatter.csv";
    write_text_file((fs::path(output_dir) / name).string(), scatter_to_csv(scatter));
    write_sidecar(output_dir, name,
                  json{{"estimator", "daily_scatter"},
                       {"params", json{{"sample_ms", est.scatter_sample_ms}}},
                       {"slope_ticks2_per_trade", scatter.slope},
                       {"n_days", scatter.rows.size()}},
                  symbol, day_ids, inst.tick_value);
    result.csv_files.push_back(name);
  }
  std::sort(result.csv_files.begin(), result.csv_files.end());

  const json run{{"command", "analyze --symbol " + symbol},
                 {"symbol", symbol},
                 {"days_loaded", result.days_loaded},
                 {"days_kept", result.days_kept},
                 {"day_ids", day_ids},
                 {"diagnostics", diagnostics_json(parse_diag, build_diag, filtered.diag)},
                 {"estimators",
                  json{{"n_bins", est.n_bins},
                       {"dt0_ms", est.dt0_ms},
                       {"var_n0", est.var_n0},
                       {"impact_n0", est.impact_n0},
                       {"spread_n0", est.spread_n0},
                       {"sample_ms", {est.seasonality_sample_ms, est.scatter_sample_ms}}}},
                 {"null_consistent", result.null_consistent},
                 {"scatter_slope_ticks2_per_trade", result.scatter_slope},
                 {"report_row", report_json(result.report)},
                 {"csv_files", result.csv_files}};
  write_text_file((fs::path(output_dir) / (symbol + "_run.json")).string(),
                  run.dump(2) + "\n");

  return result;
}

}  // namespace tickstats
