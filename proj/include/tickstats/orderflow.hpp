#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tickstats/types.hpp"

namespace tickstats {

class TickGridError : public DataError {
 public:
  using DataError::DataError;
};

class NoUsableDaysError : public DataError {
 public:
  using DataError::DataError;
};

// Converts a currency price to integer ticks; anything further than 1e-9
// (relative) from the grid is corrupt input, not noise.
Ticks price_to_ticks(double price, double tick_value);

struct OrderBuildResult {
  std::vector<MarketOrder> orders;
  BuildDiagnostics diag;
};

// Collapses maximal runs of consecutive same-millisecond, same-side fills
// into market orders: volume summed, price of the last fill, book state from
// right before the run's first fill. Signs and returns stay unset here.
OrderBuildResult build_orders(std::span<const RawEvent> events, double tick_value);

// Aggressor side of one order: quote rule first (at/through ask = buy,
// at/through bid = sell), tick test inside the spread, then carry-forward,
// then +1 when there is no history at all.
int infer_sign(const MarketOrder& order, std::optional<Ticks> prev_trade_price,
               std::optional<int> last_sign);

// Applies infer_sign along the day's order sequence.
void assign_signs(std::vector<MarketOrder>& orders);

// ret = next order's mid - this order's mid, in half-ticks; the day's last
// order has none (returns never span two days).
void compute_returns(std::vector<MarketOrder>& orders);

struct FilterResult {
  std::vector<TradingDay> days;
  FilterDiagnostics diag;
};

// Trims each day to its session bounds (inclusive), recomputes returns on the
// trimmed sequence, then drops days with n_trades <= min_trades. An empty
// result is an error: there is nothing to estimate on.
FilterResult filter_days(std::vector<TradingDay> days, std::int64_t min_trades);

// "SYMBOL_YYYYMMDD.csv" -> "YYYYMMDD"; anything else is a data error.
std::string day_id_from_filename(const std::string& path, const std::string& symbol);

struct LoadedDay {
  TradingDay day;
  ParseDiagnostics parse;
  BuildDiagnostics build;
};

// parse -> build -> sign one file; returns/filtering happen at the set level.
LoadedDay load_day_file(const std::string& path, const std::string& symbol, double tick_value,
                        SessionBounds session);

}  // namespace tickstats
