#include "tickstats/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tickstats/analysis.hpp"
#include "tickstats/condstats.hpp"
#include "tickstats/config.hpp"
#include "tickstats/orderflow.hpp"
#include "tickstats/parse.hpp"
#include "tickstats/report.hpp"
#include "tickstats/simulate.hpp"
#include "tickstats/tickmetrics.hpp"

namespace fs = std::filesystem;

namespace tickstats {
namespace {

// ===== small utilities ======================================================

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

// Rank correlation; ties share the order they arrive in, which is fine for
// the strictly-monotone curves checked here.
double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
    std::vector<double> r(v.size());
    for (std::size_t k = 0; k < idx.size(); ++k) r[idx[k]] = static_cast<double>(k);
    return r;
  };
  const auto ra = ranks(a), rb = ranks(b);
  const double n = static_cast<double>(a.size());
  const double mean = (n - 1.0) / 2.0;
  double num = 0.0, da = 0.0, db = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (ra[i] - mean) * (rb[i] - mean);
    da += (ra[i] - mean) * (ra[i] - mean);
    db += (rb[i] - mean) * (rb[i] - mean);
  }
  return num / std::sqrt(da * db);
}

// Worst |value - pooled| / se over the reported finite bins.
double max_dev_se(const BinnedCurve& c) {
  double worst = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!std::isfinite(c.value[i]) || !std::isfinite(c.se[i]) || c.se[i] <= 0.0) continue;
    worst = std::max(worst, std::abs(c.value[i] - c.pooled_value) / c.se[i]);
  }
  return worst;
}

// Ground-truth days only; the per-day event streams are discarded as we go so
// the large scenarios stay within a day's worth of transient memory.
std::vector<TradingDay> make_days(const SimScenario& s) {
  std::vector<TradingDay> days;
  days.reserve(static_cast<std::size_t>(s.n_days));
  for (int d = 0; d < s.n_days; ++d) days.push_back(simulate_day(s, d).day);
  return days;
}

// Flat arrival rate tuned so a one-hour session carries 25k trades.
constexpr double kNullRatePerSec = 25'000.0 / 3'600.0;

SimScenario null_scenario(int n_days, std::uint64_t seed) {
  SimScenario s;
  s.symbol = "NUL";
  s.n_days = n_days;
  s.session = {32'400'000, 36'000'000};  // 09:00-10:00
  s.base_price = 10'000;
  s.tick_value = 0.5;
  s.seed = seed;
  s.rate.kind = RateModel::Kind::constant;
  s.rate.base_per_sec = kNullRatePerSec;
  s.volume = {1.0, 0.35};
  s.kernel.kind = KernelModel::Kind::permanent;
  s.kernel.g0 = 0.4;
  s.noise_std_ticks = 0.25;
  return s;
}

std::map<std::string, std::string> read_tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    out[fs::relative(entry.path(), root).generic_string()] =
        read_text_file(entry.path().string());
  }
  return out;
}

// ===== the checks ===========================================================

// 1: a memoryless scenario must produce flat conditional curves -- every bin
// of v/P/A/impact at the single-trade scale within 4 SE of the pooled value,
// and the 100-trade clock-window variance within 5% relative.
void check_null_flatness(CheckResult& r, std::vector<TradingDay>& null_days) {
  Stopwatch sw;
  null_days = make_days(null_scenario(20, 910'009));

  const TradeScaleCurves bundle = var_prob_amp_n1(null_days, 30);
  const BinnedCurve impact1 = impact_cond(null_days, 1, 30);
  const bool flat = curve_is_flat(bundle.v, 4.0) && curve_is_flat(bundle.p, 4.0) &&
                    curve_is_flat(bundle.a, 4.0) && curve_is_flat(impact1, 4.0);
  const double worst_se = std::max(
      std::max(max_dev_se(bundle.v), max_dev_se(bundle.p)),
      std::max(max_dev_se(bundle.a), max_dev_se(impact1)));

  // 14.4 s windows average 100 trades at the scenario's flat rate.
  const BinnedCurve v100 = var_fixed_dt(null_days, 14'400, 4);
  double worst_rel = 0.0;
  std::size_t n_bins = 0;
  for (std::size_t i = 0; i < v100.size(); ++i) {
    if (!std::isfinite(v100.value[i])) continue;
    worst_rel = std::max(worst_rel,
                         std::abs(v100.value[i] - v100.pooled_value) / v100.pooled_value);
    ++n_bins;
  }
  const double elapsed = sw.seconds();

  r.passed = flat && n_bins >= 3 && worst_rel <= 0.05 && elapsed < 60.0;
  r.detail = "trade-scale curves worst dev " + fmt(worst_se) +
             " se (<=4); 100-trade windows worst rel dev " + fmt(worst_rel) +
             " (<=0.05) over " + std::to_string(n_bins) + " bins; " + fmt(elapsed) +
             "s (<60)";
}

// 2: with every innovation inside theta=50ms doubled, the fastest duration
// bin of the per-trade variance must sit at 4x the slow plateau (+-10%).
void check_coupling_detection(CheckResult& r, std::vector<TradingDay>& coupled_days) {
  Stopwatch sw;
  SimScenario s = null_scenario(12, 920'002);
  s.kernel.g0 = 2.0;
  s.noise_std_ticks = 0.0;
  s.coupling = {true, 2.0, 50};
  coupled_days = make_days(s);

  const BinnedCurve v = var_fixed_n(coupled_days, 1, 30);
  const bool fast_bin_inside =
      v.size() > 0 && v.hi.front() <= 50.0 && std::isfinite(v.value.front());
  double plateau = 0.0;
  int n_plateau = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v.lo[i] >= 50.0 && std::isfinite(v.value[i])) {
      plateau += v.value[i];
      ++n_plateau;
    }
  }
  plateau /= std::max(n_plateau, 1);
  const double ratio = v.value.front() / plateau;
  const double elapsed = sw.seconds();

  r.passed = fast_bin_inside && n_plateau >= 5 && ratio >= 3.6 && ratio <= 4.4 &&
             elapsed < 60.0;
  r.detail = "fast-bin/plateau ratio " + fmt(ratio) + " (in [3.6,4.4]); fastest bin hi " +
             fmt(v.size() ? v.hi.front() : -1.0) + "ms (<=50); plateau bins " +
             std::to_string(n_plateau) + "; " + fmt(elapsed) + "s (<60)";
}

// 3: per shared duration bin, variance = P(move) * mean squared nonzero move
// down to float rounding, on both the null and the coupled datasets.
void check_variance_decomposition(CheckResult& r,
                                  const std::vector<TradingDay>& null_days,
                                  const std::vector<TradingDay>& coupled_days) {
  double worst = 0.0;
  int n_checked = 0;
  for (const std::vector<TradingDay>* days : {&null_days, &coupled_days}) {
    if (days->empty()) continue;
    const TradeScaleCurves b = var_prob_amp_n1(*days, 30);
    for (std::size_t i = 0; i < b.v.size(); ++i) {
      if (!std::isfinite(b.v.value[i]) || !std::isfinite(b.p.value[i]) ||
          !std::isfinite(b.a.value[i]) || b.v.value[i] <= 0.0)
        continue;
      worst = std::max(worst,
                       std::abs(b.v.value[i] - b.p.value[i] * b.a.value[i]) / b.v.value[i]);
      ++n_checked;
    }
  }
  r.passed = n_checked >= 20 && worst < 1e-12;
  r.detail = "worst |v - P*A|/v = " + fmt(worst) + " (<1e-12) over " +
             std::to_string(n_checked) + " bins across two datasets";
}

// 4: emitted event files parse and rebuild into the exact ground-truth order
// sequence, and fill volume is conserved order by order.
void check_order_round_trip(CheckResult& r, const fs::path& work) {
  SimScenario s;
  s.symbol = "RTT";
  s.n_days = 2;
  s.session = {32'400'000, 36'000'000};
  s.base_price = 1'000'000;  // 10000.00 at a 0.01 tick
  s.tick_value = 0.01;
  s.seed = 940'004;
  s.rate.kind = RateModel::Kind::burst;
  s.rate.low_per_sec = 1.0;
  s.rate.high_per_sec = 60.0;
  s.rate.dwell_ms = 3'000;
  s.signs.kind = SignModel::Kind::markov;
  s.signs.rho = 0.7;
  s.volume = {1.2, 0.8};
  s.kernel.kind = KernelModel::Kind::power_law;
  s.kernel.g0 = 0.8;
  s.kernel.gamma = 1.2;
  s.kernel.cutoff = 50;
  s.noise_std_ticks = 0.4;
  s.coupling = {true, 2.0, 40};
  s.spread.kind = SpreadModel::Kind::rate_linked;
  s.spread.fast_ticks = 3;
  s.spread.slow_ticks = 1;
  s.spread.theta_ms = 40;

  const fs::path dir = work / "roundtrip";
  fs::remove_all(dir);
  const std::vector<std::string> paths = simulate_to_dir(s, dir.string());

  std::int64_t n_orders = 0, mismatched = 0;
  Volume fill_volume = 0, order_volume = 0;
  bool sizes_match = true;
  for (int d = 0; d < s.n_days; ++d) {
    const SimulatedDay truth = simulate_day(s, d);
    const LoadedDay got =
        load_day_file(paths[static_cast<std::size_t>(d)], s.symbol, s.tick_value, s.session);
    if (got.day.orders.size() != truth.day.orders.size()) {
      sizes_match = false;
    } else {
      for (std::size_t i = 0; i < got.day.orders.size(); ++i)
        if (!(got.day.orders[i] == truth.day.orders[i])) ++mismatched;
    }
    n_orders += truth.day.n_trades();

    ParseDiagnostics pd;
    for (const RawEvent& ev : parse_event_file(paths[static_cast<std::size_t>(d)], pd))
      if (ev.kind == EventKind::Trade) fill_volume += ev.volume;
    for (const MarketOrder& o : truth.day.orders) order_volume += o.volume;
  }

  r.passed = sizes_match && mismatched == 0 && fill_volume == order_volume && n_orders > 1'000;
  r.detail = std::to_string(n_orders) + " orders reconstructed, " +
             std::to_string(mismatched) + " field mismatches (=0), fill volume " +
             std::to_string(fill_volume) + " vs order volume " + std::to_string(order_volume) +
             " (equal)";
}

// 5: the hand-counted twelve-event day reproduces its tick-coarseness numbers
// exactly, and a strictly monotone price path puts the reversal share at 0.
void check_tick_metric_fixtures(CheckResult& r) {
  std::istringstream in(
      "ts_ms,kind,price,volume,bid,ask\n"
      "1000,Q,,,50,50.5\n"
      "1100,T,50.5,5,,\n"
      "1200,T,50,3,,\n"
      "1300,Q,,,50.5,51\n"
      "1400,T,51,2,,\n"
      "1500,T,50.5,1,,\n"
      "1600,Q,,,50,50.5\n"
      "1700,T,50,4,,\n"
      "1800,T,50.5,2,,\n"
      "1900,Q,,,50,51.5\n"
      "2000,T,51.5,1,,\n"
      "2100,T,50,6,,\n");
  ParseDiagnostics pd;
  const auto events = parse_event_stream(in, pd);
  OrderBuildResult built = build_orders(events, 0.5);
  assign_signs(built.orders);

  TradingDay day;
  day.day_id = "20240102";
  day.tick_value = 0.5;
  day.session = {0, 86'400'000};
  day.orders = std::move(built.orders);
  compute_returns(day.orders);
  const TickSizeReport rep = tick_size_report({day}, "FIX", 0.5);

  const bool fixture_ok = day.n_trades() == 8 && rep.pct_spread_one == 0.75 &&
                          rep.pct_null_return == 0.5 && rep.eta == 1.0 &&
                          rep.perceived == -0.5;

  TradingDay mono;
  mono.day_id = "20240103";
  mono.tick_value = 0.5;
  mono.session = {0, 86'400'000};
  for (int i = 0; i < 5; ++i) {
    MarketOrder o;
    o.t = 1'000 + 100 * i;
    o.price = 100 + i;
    o.volume = 1;
    o.bid = o.price;
    o.ask = o.price + 1;
    o.sign = 1;
    mono.orders.push_back(o);
  }
  compute_returns(mono.orders);
  const auto eb = eta_day(mono);
  const bool mono_ok = eb.has_value() && eb->eta == 0.0 && eb->n_alternations == 0 &&
                       eb->n_continuations == 3 && (0.5 - eb->eta) == 0.5;

  r.passed = fixture_ok && mono_ok;
  r.detail = "twelve-event day: spread-one " + fmt(rep.pct_spread_one) +
             " (=0.75), null-return " + fmt(rep.pct_null_return) + " (=0.5), reversal " +
             fmt(rep.eta) + " (=1); monotone day reversal " +
             (eb ? fmt(eb->eta) : std::string("undefined")) + " (=0, perceived 0.5)";
}

// 6: across days of fluctuating activity, realized variance grows through the
// origin as (variance per trade) * (trade count). The scenario pins that
// slope at 1.0 tick^2 per trade: unit volume lnV * g0 = 1 and no level noise.
void check_activity_regression(CheckResult& r, bool quick) {
  SimScenario s;
  s.symbol = "ZIR";
  s.n_days = quick ? 40 : 100;
  s.session = {28'800'000, 43'200'000};  // 08:00-12:00
  s.base_price = 10'000;
  s.tick_value = 0.5;
  s.seed = 960'008;
  s.rate.kind = RateModel::Kind::burst;
  s.rate.low_per_sec = 2.0;
  s.rate.high_per_sec = 8.0;
  s.rate.dwell_ms = 600'000;
  s.volume = {std::log(3.0), 0.0};            // every order carries volume 3
  s.kernel.kind = KernelModel::Kind::permanent;
  s.kernel.g0 = 1.0 / std::log(3.0);          // so each trade moves the mid 1 tick
  s.noise_std_ticks = 0.0;

  // One-minute squares: with k squares per day the chi-squared noise of a
  // day's realized variance scales as N*sqrt(2/k), so narrow squares keep the
  // cross-day regression tight.
  double num = 0.0, den = 0.0;
  std::int64_t n_min = std::numeric_limits<std::int64_t>::max(), n_max = 0;
  for (int d = 0; d < s.n_days; ++d) {
    const TradingDay day = simulate_day(s, d).day;
    const double n = static_cast<double>(day.n_trades());
    const double rv = clock_rv(day, 60'000);
    num += n * rv;
    den += n * n;
    n_min = std::min(n_min, day.n_trades());
    n_max = std::max(n_max, day.n_trades());
  }
  const double slope = num / den;
  const double activity_span =
      static_cast<double>(n_max) / static_cast<double>(std::max<std::int64_t>(n_min, 1));

  r.passed = slope >= 0.95 && slope <= 1.05 && activity_span >= 1.2;
  r.detail = "through-origin slope " + fmt(slope) + " ticks^2/trade (in [0.95,1.05]) over " +
             std::to_string(s.n_days) + " days; day sizes " + std::to_string(n_min) + ".." +
             std::to_string(n_max);
}

// 7: the 15-minute activity profile recovers a sinusoidal design intensity
// within 5% RMS relative error.
void check_seasonality_recovery(CheckResult& r, bool quick) {
  SimScenario s;
  s.symbol = "SEA";
  s.n_days = quick ? 30 : 100;
  s.session = {28'800'000, 36'000'000};  // 08:00-10:00, one sine cycle
  s.base_price = 10'000;
  s.tick_value = 0.5;
  s.seed = 970'007;
  s.rate.kind = RateModel::Kind::sinusoidal;
  s.rate.base_per_sec = 2.5;
  s.rate.amplitude = 0.6;
  s.volume = {1.0, 0.35};
  s.kernel.kind = KernelModel::Kind::permanent;
  s.kernel.g0 = 0.4;
  s.noise_std_ticks = 0.25;

  const std::vector<TradingDay> days = make_days(s);
  const std::vector<SeasonalitySlot> slots = seasonality(days, 900'000, 60'000);

  const double span = static_cast<double>(s.session.close - s.session.open);
  const double two_pi = 2.0 * std::numbers::pi;
  double sum_sq = 0.0;
  bool coverage_ok = slots.size() == 8;
  for (const SeasonalitySlot& slot : slots) {
    const double a = static_cast<double>(slot.offset_ms) / span;
    const double b = static_cast<double>(slot.offset_ms + 900'000) / span;
    const double mean_sin = (std::cos(two_pi * a) - std::cos(two_pi * b)) / (two_pi * (b - a));
    const double expected = s.rate.base_per_sec * (1.0 + s.rate.amplitude * mean_sin);
    const double rel = (slot.mean_trades_per_sec - expected) / expected;
    sum_sq += rel * rel;
    coverage_ok = coverage_ok && slot.n_days == s.n_days;
  }
  const double rms = slots.empty() ? 1.0 : std::sqrt(sum_sq / static_cast<double>(slots.size()));

  r.passed = coverage_ok && rms < 0.05;
  r.detail = "rate profile RMS rel error " + fmt(rms) + " (<0.05) over " +
             std::to_string(slots.size()) + " slots x " + std::to_string(s.n_days) + " days";
}

// 8: when the quoted spread is tied to trading speed, mean spread against
// duration per trade must fall monotonically (strong negative rank
// correlation), fast end above slow end.
void check_spread_duration_link(CheckResult& r) {
  SimScenario s;
  s.symbol = "SPD";
  s.n_days = 6;
  s.session = {32'400'000, 36'000'000};
  s.base_price = 10'000;
  s.tick_value = 0.5;
  s.seed = 980'008;
  s.rate.kind = RateModel::Kind::burst;
  s.rate.low_per_sec = 0.5;
  s.rate.high_per_sec = 40.0;
  s.rate.dwell_ms = 1'200;
  s.volume = {1.0, 0.35};
  s.kernel.kind = KernelModel::Kind::permanent;
  s.kernel.g0 = 0.4;
  s.noise_std_ticks = 0.25;
  s.spread.kind = SpreadModel::Kind::rate_linked;
  s.spread.fast_ticks = 3;
  s.spread.slow_ticks = 1;
  s.spread.theta_ms = 50;

  const std::vector<TradingDay> days = make_days(s);
  const BinnedCurve curve = spread_cond(days, 100, 30);

  std::vector<double> centers, values;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (!std::isfinite(curve.value[i])) continue;
    centers.push_back(curve.center[i]);
    values.push_back(curve.value[i]);
  }
  const double rho = centers.size() >= 2 ? spearman(centers, values) : 0.0;
  const bool ends_ordered = values.size() >= 2 && values.front() > values.back();

  r.passed = centers.size() >= 20 && rho < -0.8 && ends_ordered;
  r.detail = "rank correlation " + fmt(rho) + " (<-0.8) over " +
             std::to_string(centers.size()) + " bins; fastest bin " +
             fmt(values.empty() ? 0.0 : values.front()) + " ticks vs slowest " +
             fmt(values.empty() ? 0.0 : values.back());
}

// 9: the full simulate -> analyze pipeline, run twice with the same seed into
// two different directories, must leave byte-identical trees.
void check_determinism(CheckResult& r, const fs::path& work) {
  SimScenario s;
  s.symbol = "DET";
  s.n_days = 2;
  s.session = {28'800'000, 32'400'000};
  s.base_price = 40'000;
  s.tick_value = 0.25;
  s.seed = 990'009;
  s.rate.kind = RateModel::Kind::burst;
  s.rate.low_per_sec = 1.0;
  s.rate.high_per_sec = 8.0;
  s.rate.dwell_ms = 20'000;
  s.signs.kind = SignModel::Kind::markov;
  s.signs.rho = 0.6;
  s.volume = {1.0, 0.35};
  s.kernel.kind = KernelModel::Kind::power_law;
  s.kernel.g0 = 0.6;
  s.kernel.gamma = 1.4;
  s.kernel.cutoff = 100;
  s.noise_std_ticks = 0.3;
  s.coupling = {true, 1.5, 80};
  s.spread.kind = SpreadModel::Kind::rate_linked;
  s.spread.fast_ticks = 3;
  s.spread.slow_ticks = 1;
  s.spread.theta_ms = 80;

  auto run_once = [&s](const fs::path& root) {
    fs::remove_all(root);
    const fs::path data = root / "data";
    const fs::path out = root / "out";
    simulate_to_dir(s, data.string());
    write_text_file((data / "scenario.json").string(), scenario_to_json_text(s));

    RunConfig cfg;
    cfg.data_dir = data.string();
    cfg.output_dir = out.string();
    InstrumentConfig inst;
    inst.symbol = s.symbol;
    inst.tick_value = s.tick_value;
    inst.session = s.session;
    inst.min_trades = 1'000;
    cfg.instruments = {inst};
    cfg.estimators.dt0_ms = 60'000;
    analyze_symbol(cfg, s.symbol, out.string());
    return read_tree(root);
  };

  const auto tree1 = run_once(work / "determinism" / "run_1");
  const auto tree2 = run_once(work / "determinism" / "run_2");

  std::size_t diffs = 0;
  if (tree1.size() == tree2.size()) {
    auto it1 = tree1.begin();
    auto it2 = tree2.begin();
    for (; it1 != tree1.end(); ++it1, ++it2)
      if (it1->first != it2->first || it1->second != it2->second) ++diffs;
  } else {
    diffs = tree1.size() + tree2.size();
  }

  r.passed = tree1.size() >= 20 && diffs == 0;
  r.detail = std::to_string(tree1.size()) + " files vs " + std::to_string(tree2.size()) +
             " in the twin runs, " + std::to_string(diffs) + " differing (=0)";
}

// 10: a >=1M-line dataset parses and analyzes end to end in under 10 seconds
// on a single thread.
void check_throughput(CheckResult& r, const fs::path& work) {
  SimScenario s;
  s.symbol = "PRF";
  s.n_days = 19;
  s.session = {32'400'000, 36'000'000};
  s.base_price = 10'000;
  s.tick_value = 0.5;
  s.seed = 101'010;
  s.rate.kind = RateModel::Kind::constant;
  s.rate.base_per_sec = kNullRatePerSec;
  s.volume = {1.0, 0.35};
  s.kernel.kind = KernelModel::Kind::permanent;
  s.kernel.g0 = 0.4;
  s.noise_std_ticks = 0.25;

  const fs::path root = work / "throughput";
  fs::remove_all(root);
  const fs::path data = root / "data";
  const fs::path out = root / "out";
  simulate_to_dir(s, data.string());  // dataset generation is not part of the timed path

  RunConfig cfg;
  cfg.data_dir = data.string();
  cfg.output_dir = out.string();
  InstrumentConfig inst;
  inst.symbol = s.symbol;
  inst.tick_value = s.tick_value;
  inst.session = s.session;
  cfg.instruments = {inst};

  Stopwatch sw;
  const AnalyzeResult res = analyze_symbol(cfg, s.symbol, out.string());
  const double elapsed = sw.seconds();

  const auto run_json =
      nlohmann::json::parse(read_text_file((out / (s.symbol + "_run.json")).string()));
  const std::int64_t lines = run_json.at("diagnostics").at("lines").get<std::int64_t>();

  r.passed = lines >= 1'000'000 && elapsed < 10.0 && res.days_kept == s.n_days;
  r.detail = std::to_string(lines) + " event lines parsed + analyzed in " + fmt(elapsed) +
             "s (<10, single-threaded), " + std::to_string(res.days_kept) + " days kept";
}

}  // namespace

VerifyReport run_acceptance_checks(const VerifyOptions& opt) {
  VerifyReport rep;
  rep.quick = opt.quick;
  const fs::path work = opt.work_dir.empty()
                            ? fs::temp_directory_path() / "tickstats_verify"
                            : fs::path(opt.work_dir);
  fs::create_directories(work);

  auto guard = [&rep](int id, const char* name, auto&& body) {
    CheckResult r;
    r.id = id;
    r.name = name;
    try {
      body(r);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    rep.checks.push_back(std::move(r));
  };

  std::vector<TradingDay> null_days, coupled_days;
  guard(1, "null-flatness", [&](CheckResult& r) { check_null_flatness(r, null_days); });
  guard(2, "coupling-detection",
        [&](CheckResult& r) { check_coupling_detection(r, coupled_days); });
  guard(3, "variance-decomposition",
        [&](CheckResult& r) { check_variance_decomposition(r, null_days, coupled_days); });
  null_days.clear();
  null_days.shrink_to_fit();
  coupled_days.clear();
  coupled_days.shrink_to_fit();
  guard(4, "order-round-trip", [&](CheckResult& r) { check_order_round_trip(r, work); });
  guard(5, "tick-metric-fixtures", [&](CheckResult& r) { check_tick_metric_fixtures(r); });
  guard(6, "activity-regression",
        [&](CheckResult& r) { check_activity_regression(r, opt.quick); });
  guard(7, "seasonality-recovery",
        [&](CheckResult& r) { check_seasonality_recovery(r, opt.quick); });
  guard(8, "spread-duration-link", [&](CheckResult& r) { check_spread_duration_link(r); });
  guard(9, "determinism", [&](CheckResult& r) { check_determinism(r, work); });
  guard(10, "throughput", [&](CheckResult& r) { check_throughput(r, work); });
  return rep;
}

std::string verify_report_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back({{"id", c.id},
                      {"name", c.name},
                      {"passed", c.passed},
                      {"detail", c.detail}});
  }
  nlohmann::json j{{"quick", report.quick},
                   {"all_passed", report.all_passed()},
                   {"checks", checks}};
  return j.dump(2) + "\n";
}

}  // namespace tickstats
