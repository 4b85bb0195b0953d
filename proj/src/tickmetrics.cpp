#include "tickstats/tickmetrics.hpp"

#include <limits>

namespace tickstats {

namespace {

double ratio_or_throw(std::int64_t num, std::int64_t denom, const char* what) {
  if (denom <= 0) throw DataError(std::string(what) + ": day has no trades");
  return static_cast<double>(num) / static_cast<double>(denom);
}

}  // namespace

std::int64_t count_spread_one(const TradingDay& day) {
  std::int64_t n = 0;
  for (const MarketOrder& o : day.orders) {
    if (o.spread() == 1) ++n;
  }
  return n;
}

double pct_spread_one(const TradingDay& day) {
  return ratio_or_throw(count_spread_one(day), day.n_trades(), "pct_spread_one");
}

std::int64_t count_null_return(const TradingDay& day) {
  std::int64_t n = 0;
  for (const MarketOrder& o : day.orders) {
    if (o.ret_ht.has_value() && *o.ret_ht == 0) ++n;
  }
  return n;
}

double pct_null_return(const TradingDay& day) {
  return ratio_or_throw(count_null_return(day), day.n_trades(), "pct_null_return");
}

std::optional<EtaBreakdown> eta_day(const TradingDay& day) {
  // Jump signs of the duplicate-collapsed traded-price path.
  std::vector<int> jumps;
  Ticks prev = 0;
  bool have_prev = false;
  for (const MarketOrder& o : day.orders) {
    if (have_prev && o.price != prev) {
      jumps.push_back(o.price > prev ? 1 : -1);
    }
    prev = o.price;
    have_prev = true;
  }
  if (jumps.size() < 2) return std::nullopt;

  EtaBreakdown out;
  for (std::size_t i = 1; i < jumps.size(); ++i) {
    if (jumps[i] == jumps[i - 1]) {
      ++out.n_continuations;
    } else {
      ++out.n_alternations;
    }
  }
  if (out.n_continuations == 0) return std::nullopt;
  out.eta = static_cast<double>(out.n_alternations) /
            (2.0 * static_cast<double>(out.n_continuations));
  return out;
}

TickSizeReport tick_size_report(const std::vector<TradingDay>& days,
                                const std::string& symbol, double tick_value) {
  TickSizeReport rep;
  rep.symbol = symbol;
  rep.tick_value = tick_value;
  rep.n_days = static_cast<std::int64_t>(days.size());

  std::int64_t spread_one = 0;
  std::int64_t null_ret = 0;
  double eta_sum = 0.0;
  for (const TradingDay& day : days) {
    rep.n_trades += day.n_trades();
    spread_one += count_spread_one(day);
    null_ret += count_null_return(day);
    if (auto eta = eta_day(day)) {
      eta_sum += eta->eta;
      ++rep.eta_days_used;
    } else {
      ++rep.eta_days_skipped;
    }
  }

  rep.pct_spread_one = ratio_or_throw(spread_one, rep.n_trades, "tick_size_report");
  rep.pct_null_return = ratio_or_throw(null_ret, rep.n_trades, "tick_size_report");
  if (rep.eta_days_used > 0) {
    rep.eta = eta_sum / static_cast<double>(rep.eta_days_used);
  } else {
    rep.eta = std::numeric_limits<double>::quiet_NaN();
  }
  rep.perceived = 0.5 - rep.eta;
  return rep;
}

}  // namespace tickstats
