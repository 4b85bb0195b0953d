#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tickstats {

using Ms = std::int64_t;         // milliseconds since the trading day's midnight
using Ticks = std::int64_t;      // prices as integer tick counts
using HalfTicks = std::int64_t;  // midpoints and returns as integer half-tick counts
using Volume = std::int64_t;

// Anything wrong with input data, configuration, or generated state.
// The CLI maps this family to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EventKind : unsigned char { Trade, Quote };

// One line of a level-1 event stream. Prices in currency units.
struct RawEvent {
  Ms ts = 0;
  EventKind kind = EventKind::Trade;
  double price = 0.0;  // trades only
  Volume volume = 0;   // trades only
  double bid = 0.0;    // quotes only
  double ask = 0.0;    // quotes only

  friend bool operator==(const RawEvent&, const RawEvent&) = default;
};

// An aggregated market order (all same-millisecond, same-side fills merged)
// plus the book state prevailing right before its first fill.
struct MarketOrder {
  Ms t = 0;
  Ticks price = 0;    // last fill's price
  Volume volume = 0;  // summed over fills
  Ticks bid = 0;
  Ticks ask = 0;
  int sign = 0;  // +1 buyer-initiated, -1 seller-initiated, 0 not yet assigned
  std::optional<HalfTicks> ret_ht;  // next mid - this mid; absent for the day's last order

  // Midpoint (bid+ask)/2 in ticks is a half-integer; bid+ask counts it in
  // exact half-ticks so null-return and jump tests never touch floats.
  HalfTicks mid_ht() const { return bid + ask; }
  Ticks spread() const { return ask - bid; }
  double mid() const { return 0.5 * static_cast<double>(mid_ht()); }
  double ret() const { return 0.5 * static_cast<double>(ret_ht.value()); }  // ticks

  friend bool operator==(const MarketOrder&, const MarketOrder&) = default;
};

struct SessionBounds {
  Ms open = 0;
  Ms close = 0;
};

struct TradingDay {
  std::string day_id;  // "YYYYMMDD"
  double tick_value = 0.0;
  SessionBounds session;
  std::vector<MarketOrder> orders;

  std::int64_t n_trades() const { return static_cast<std::int64_t>(orders.size()); }
};

struct ParseDiagnostics {
  std::int64_t lines = 0;
  std::int64_t trade_events = 0;
  std::int64_t quote_events = 0;
  std::int64_t crossed_quotes = 0;         // skipped lines with ask < bid
  std::int64_t zero_volume_trades = 0;     // skipped trade lines with volume 0
  std::int64_t nonmonotone_timestamps = 0; // kept, but worth a warning
};

struct BuildDiagnostics {
  std::int64_t fills = 0;
  std::int64_t orders = 0;
  std::int64_t trades_dropped_no_quote = 0;     // trade seen before any quote
  std::int64_t trades_dropped_locked_book = 0;  // trade on an ask == bid book
};

struct FilterDiagnostics {
  std::int64_t out_of_session_orders = 0;
  std::int64_t days_dropped_min_trades = 0;
  std::int64_t days_kept = 0;
};

}  // namespace tickstats
