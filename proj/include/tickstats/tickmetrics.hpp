#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tickstats/types.hpp"

namespace tickstats {

// Trades executed at the minimal one-tick spread.
std::int64_t count_spread_one(const TradingDay& day);
double pct_spread_one(const TradingDay& day);

// Trades whose forward midpoint return is exactly zero. The share uses the
// trade count as denominator (the final trade of a day, which has no forward
// return, still counts in the denominator).
std::int64_t count_null_return(const TradingDay& day);
double pct_null_return(const TradingDay& day);

// Reversal share of the traded-price path: collapse consecutive duplicate
// trade prices, take the signs of the remaining jumps, and compare adjacent
// pairs. eta = (#opposite-sign pairs) / (2 * #same-sign pairs). Undefined
// (nullopt) when the path never continues in the same direction twice, or has
// fewer than two jumps.
struct EtaBreakdown {
  double eta = 0.0;
  std::int64_t n_continuations = 0;  // adjacent jump pairs, same sign
  std::int64_t n_alternations = 0;   // adjacent jump pairs, opposite sign
};
std::optional<EtaBreakdown> eta_day(const TradingDay& day);

// Pooled tick-coarseness summary for one instrument. Count shares pool as
// sum/sum across days; eta averages (unweighted) over the days where it is
// defined and is NaN when no day defines it.
struct TickSizeReport {
  std::string symbol;
  double tick_value = 0.0;
  std::int64_t n_days = 0;
  std::int64_t n_trades = 0;
  double pct_spread_one = 0.0;
  double pct_null_return = 0.0;
  double eta = 0.0;
  double perceived = 0.0;  // 1/2 - eta
  std::int64_t eta_days_used = 0;
  std::int64_t eta_days_skipped = 0;
};

TickSizeReport tick_size_report(const std::vector<TradingDay>& days,
                                const std::string& symbol, double tick_value);

}  // namespace tickstats
