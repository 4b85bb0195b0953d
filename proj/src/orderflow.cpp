#include "tickstats/orderflow.hpp"

#include <cmath>
#include <filesystem>

#include "tickstats/parse.hpp"

namespace tickstats {

Ticks price_to_ticks(double price, double tick_value) {
  if (!(tick_value > 0.0)) throw DataError("tick_value must be > 0");
  const double x = price / tick_value;
  const double n = std::nearbyint(x);
  if (std::abs(x - n) > 1e-9 * std::max(1.0, std::abs(x))) {
    throw TickGridError("price " + format_double(price) + " is not on the tick grid (tick " +
                        format_double(tick_value) + ")");
  }
  return static_cast<Ticks>(n);
}

namespace {

// Shared classifier for raw fills and aggregated orders.
int classify_side(Ticks price, Ticks bid, Ticks ask, std::optional<Ticks> prev_price,
                  std::optional<int> last_sign) {
  if (price >= ask) return 1;
  if (price <= bid) return -1;
  if (prev_price && *prev_price != price) return price > *prev_price ? 1 : -1;
  if (last_sign) return *last_sign;
  return 1;
}

}  // namespace

OrderBuildResult build_orders(std::span<const RawEvent> events, double tick_value) {
  OrderBuildResult res;

  bool have_quote = false;
  Ticks bid = 0;
  Ticks ask = 0;
  std::optional<Ticks> prev_fill_price;
  std::optional<int> last_fill_side;

  bool run_open = false;
  Ms run_ts = 0;
  int run_side = 0;
  MarketOrder run;

  auto flush = [&] {
    if (run_open) {
      res.orders.push_back(run);
      ++res.diag.orders;
      run_open = false;
    }
  };

  for (const RawEvent& ev : events) {
    if (ev.kind == EventKind::Quote) {
      bid = price_to_ticks(ev.bid, tick_value);
      ask = price_to_ticks(ev.ask, tick_value);
      have_quote = true;
      continue;
    }
    ++res.diag.fills;
    if (!have_quote) {
      ++res.diag.trades_dropped_no_quote;
      continue;
    }
    if (ask == bid) {
      ++res.diag.trades_dropped_locked_book;
      continue;
    }
    const Ticks price = price_to_ticks(ev.price, tick_value);
    const int side = classify_side(price, bid, ask, prev_fill_price, last_fill_side);
    prev_fill_price = price;
    last_fill_side = side;

    if (run_open && run_ts == ev.ts && run_side == side) {
      run.volume += ev.volume;
      run.price = price;  // last traded price wins
    } else {
      flush();
      run_open = true;
      run_ts = ev.ts;
      run_side = side;
      run = MarketOrder{};
      run.t = ev.ts;
      run.price = price;
      run.volume = ev.volume;
      run.bid = bid;  // book right before this first fill
      run.ask = ask;
    }
  }
  flush();
  return res;
}

int infer_sign(const MarketOrder& order, std::optional<Ticks> prev_trade_price,
               std::optional<int> last_sign) {
  return classify_side(order.price, order.bid, order.ask, prev_trade_price, last_sign);
}

void assign_signs(std::vector<MarketOrder>& orders) {
  std::optional<Ticks> prev_price;
  std::optional<int> last_sign;
  for (MarketOrder& o : orders) {
    o.sign = infer_sign(o, prev_price, last_sign);
    prev_price = o.price;
    last_sign = o.sign;
  }
}

void compute_returns(std::vector<MarketOrder>& orders) {
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i + 1 < orders.size()) {
      orders[i].ret_ht = orders[i + 1].mid_ht() - orders[i].mid_ht();
    } else {
      orders[i].ret_ht.reset();
    }
  }
}

FilterResult filter_days(std::vector<TradingDay> days, std::int64_t min_trades) {
  FilterResult res;
  for (TradingDay& day : days) {
    std::vector<MarketOrder> kept;
    kept.reserve(day.orders.size());
    for (MarketOrder& o : day.orders) {
      if (o.t >= day.session.open && o.t <= day.session.close) {
        kept.push_back(o);
      } else {
        ++res.diag.out_of_session_orders;
      }
    }
    day.orders = std::move(kept);
    if (day.n_trades() <= min_trades) {
      ++res.diag.days_dropped_min_trades;
      continue;
    }
    compute_returns(day.orders);
    ++res.diag.days_kept;
    res.days.push_back(std::move(day));
  }
  if (res.days.empty()) {
    throw NoUsableDaysError("no usable days after session trim and min-trades filter");
  }
  return res;
}

std::string day_id_from_filename(const std::string& path, const std::string& symbol) {
  const std::string name = std::filesystem::path(path).filename().string();
  const std::string prefix = symbol + "_";
  const std::string suffix = ".csv";
  const std::size_t want = prefix.size() + 8 + suffix.size();
  if (name.size() != want || name.compare(0, prefix.size(), prefix) != 0 ||
      name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) {
    throw DataError("file name '" + name + "' does not match " + symbol + "_YYYYMMDD.csv");
  }
  const std::string digits = name.substr(prefix.size(), 8);
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw DataError("file name '" + name + "' does not match " + symbol + "_YYYYMMDD.csv");
    }
  }
  return digits;
}

LoadedDay load_day_file(const std::string& path, const std::string& symbol, double tick_value,
                        SessionBounds session) {
  LoadedDay out;
  auto events = parse_event_file(path, out.parse);
  auto built = build_orders(events, tick_value);
  assign_signs(built.orders);
  out.build = built.diag;
  out.day.day_id = day_id_from_filename(path, symbol);
  out.day.tick_value = tick_value;
  out.day.session = session;
  out.day.orders = std::move(built.orders);
  return out;
}

}  // namespace tickstats
