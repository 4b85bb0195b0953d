#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tickstats/binning.hpp"
#include "tickstats/types.hpp"

namespace tickstats {

// Rank share trimmed from each end of a conditioning sample before bin edges
// are placed (terms outside the trimmed range fall out of every bin).
inline constexpr double kCondTrimFrac = 0.001;

// Bins (or amplitude supports) below this count are not reported.
inline constexpr std::int64_t kMinBinCount = 2;

// Variance per trade over an n0-trade horizon, conditioned on the duration of
// the n0-trade window that ends one trade earlier (so the conditioning is
// fully observable before the horizon closes). Value is ticks^2 per trade;
// abscissa is the window duration in ms.
BinnedCurve var_fixed_n(const std::vector<TradingDay>& days, std::int64_t n0,
                        int n_bins);

// One-trade-horizon decomposition sharing a single set of duration bins:
//   v — variance per trade (== var_fixed_n at n0 = 1, bit for bit)
//   p — probability that the midpoint moved at all
//   a — mean squared move among the nonzero moves (ticks^2)
// Zero moves contribute zero to v's numerator, so v = p * a holds exactly
// per bin up to the final divisions.
struct TradeScaleCurves {
  BinnedCurve v, p, a;
};
TradeScaleCurves var_prob_amp_n1(const std::vector<TradingDay>& days, int n_bins);

// Signed midpoint move (ticks) over an n0-trade horizon in the direction of
// the trade opening the horizon, conditioned like var_fixed_n.
BinnedCurve impact_cond(const std::vector<TradingDay>& days, std::int64_t n0,
                        int n_bins);

// Mean spread (ticks) across the n0 trades opening an n0-trade window,
// conditioned on that window's own duration; abscissa is duration per trade
// (ms), i.e. the window duration divided by n0.
BinnedCurve spread_cond(const std::vector<TradingDay>& days, std::int64_t n0,
                        int n_bins);

// Variance per trade measured on fixed clock windows of window_ms, aligned to
// the session open. Windows are binned by their trade count n; each bin
// reports (sum of squared window moves)/(4 * sum n) in ticks^2 per trade
// against the abscissa window_ms/mean(n). Midpoints are sampled
// previous-tick (last pre-trade midpoint at or before the boundary); windows
// before the first trade or with n = 0 are excluded.
BinnedCurve var_fixed_dt(const std::vector<TradingDay>& days, Ms window_ms,
                         int n_bins);

// Realized variance of one day (ticks^2): squared previous-tick midpoint
// moves summed over the full width_ms squares of the session. Squares before
// the first trade are skipped; squares without trades still count.
double clock_rv(const TradingDay& day, Ms width_ms);

// Intraday activity profile. Slots are the full slot_ms stretches of the
// session; for each, the trade arrival rate and the realized variance per
// rv_ms square are averaged across days. mean_rv averages over the n_days
// days that have at least one defined square in the slot.
struct SeasonalitySlot {
  Ms offset_ms = 0;  // slot start relative to the session open
  double mean_trades_per_sec = 0.0;
  double mean_rv = 0.0;  // ticks^2 per rv_ms square
  std::int64_t n_days = 0;
};
std::vector<SeasonalitySlot> seasonality(const std::vector<TradingDay>& days,
                                         Ms slot_ms, Ms rv_ms);

// Day-resolution scatter of realized variance against trade count, plus the
// through-origin regression slope sum(N*RV)/sum(N^2) — the variance per trade
// implied by cross-day activity fluctuations.
struct DailyActivityRow {
  std::string day_id;
  std::int64_t n_trades = 0;
  double rv = 0.0;
};
struct DailyScatter {
  std::vector<DailyActivityRow> rows;
  double slope = 0.0;
};
DailyScatter daily_scatter(const std::vector<TradingDay>& days, Ms width_ms);

}  // namespace tickstats
