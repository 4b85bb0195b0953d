#include "tickstats/condstats.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>

namespace tickstats {

namespace {

BinSpec edges_for(std::vector<double> pooled, int n_bins, const char* what) {
  if (pooled.empty()) throw DataError(std::string(what) + ": no usable terms");
  return equal_count_bins(trim_extremes(std::move(pooled), kCondTrimFrac), n_bins);
}

// Walks a day's orders once and yields the previous-tick midpoint at a
// non-decreasing sequence of probe times.
class PrevTickSampler {
 public:
  explicit PrevTickSampler(const std::vector<MarketOrder>& orders)
      : orders_(orders) {}

  std::optional<HalfTicks> at(Ms tau) {
    while (i_ < orders_.size() && orders_[i_].t <= tau) {
      last_ = orders_[i_].mid_ht();
      have_ = true;
      ++i_;
    }
    if (!have_) return std::nullopt;
    return last_;
  }

 private:
  const std::vector<MarketOrder>& orders_;
  std::size_t i_ = 0;
  bool have_ = false;
  HalfTicks last_ = 0;
};

// Fixed clock windows aligned to the session open: trade count and squared
// previous-tick midpoint move (half-ticks^2) for every window whose opening
// midpoint is defined.
struct WindowTerm {
  std::int64_t n = 0;
  std::int64_t sq = 0;
};

std::vector<WindowTerm> window_terms(const TradingDay& day, Ms width_ms) {
  std::vector<WindowTerm> out;
  const auto& orders = day.orders;
  PrevTickSampler sampler(orders);
  std::size_t lo = 0;
  std::optional<HalfTicks> m_start = sampler.at(day.session.open);
  for (Ms start = day.session.open; start + width_ms <= day.session.close;
       start += width_ms) {
    const Ms end = start + width_ms;
    while (lo < orders.size() && orders[lo].t < start) ++lo;
    std::size_t hi = lo;
    while (hi < orders.size() && orders[hi].t < end) ++hi;
    std::optional<HalfTicks> m_end = sampler.at(end);
    if (m_start.has_value()) {
      const std::int64_t d = *m_end - *m_start;
      out.push_back({static_cast<std::int64_t>(hi - lo), d * d});
    }
    m_start = m_end;
    lo = hi;
  }
  return out;
}

}  // namespace

BinnedCurve var_fixed_n(const std::vector<TradingDay>& days, std::int64_t n0,
                        int n_bins) {
  if (n0 < 1) throw DataError("var_fixed_n: horizon must be >= 1");
  std::vector<double> pooled;
  for (const TradingDay& day : days) {
    const auto n = static_cast<std::int64_t>(day.orders.size());
    for (std::int64_t i = 1; i + n0 <= n - 1; ++i) {
      pooled.push_back(
          static_cast<double>(day.orders[i - 1 + n0].t - day.orders[i - 1].t));
    }
  }
  BinSpec spec = edges_for(std::move(pooled), n_bins, "var_fixed_n");

  CurveAccumulator acc(static_cast<std::size_t>(spec.n_bins()));
  for (const TradingDay& day : days) {
    const auto& o = day.orders;
    const auto n = static_cast<std::int64_t>(o.size());
    for (std::int64_t i = 1; i + n0 <= n - 1; ++i) {
      const std::int64_t d = o[i - 1 + n0].t - o[i - 1].t;
      const int bin = find_bin(spec, static_cast<double>(d));
      if (bin < 0) continue;
      const std::int64_t dht = o[i + n0].mid_ht() - o[i].mid_ht();
      acc.add(bin, d, dht * dht);
    }
  }
  return acc.finalize(spec, 4.0 * static_cast<double>(n0), kMinBinCount,
                      "var_fixed_n", {{"n0", static_cast<double>(n0)}});
}

TradeScaleCurves var_prob_amp_n1(const std::vector<TradingDay>& days, int n_bins) {
  std::vector<double> pooled;
  for (const TradingDay& day : days) {
    const auto n = static_cast<std::int64_t>(day.orders.size());
    for (std::int64_t i = 1; i <= n - 2; ++i) {
      pooled.push_back(static_cast<double>(day.orders[i].t - day.orders[i - 1].t));
    }
  }
  BinSpec spec = edges_for(std::move(pooled), n_bins, "var_prob_amp_n1");
  const auto nb = static_cast<std::size_t>(spec.n_bins());

  CurveAccumulator av(nb), ap(nb), aa(nb);
  for (const TradingDay& day : days) {
    const auto& o = day.orders;
    const auto n = static_cast<std::int64_t>(o.size());
    for (std::int64_t i = 1; i <= n - 2; ++i) {
      const std::int64_t d = o[i].t - o[i - 1].t;
      const int bin = find_bin(spec, static_cast<double>(d));
      if (bin < 0) continue;
      const std::int64_t dht = o[i + 1].mid_ht() - o[i].mid_ht();
      av.add(bin, d, dht * dht);
      ap.add(bin, d, dht != 0 ? 1 : 0);
      if (dht != 0) {
        aa.add(bin, d, dht * dht);
      } else {
        aa.add_observation_only(bin, d);
      }
    }
  }
  TradeScaleCurves out;
  out.v = av.finalize(spec, 4.0, kMinBinCount, "var_fixed_n", {{"n0", 1.0}});
  out.p = ap.finalize(spec, 1.0, kMinBinCount, "prob_nonzero", {{"n0", 1.0}});
  out.a = aa.finalize(spec, 4.0, kMinBinCount, "amp_nonzero", {{"n0", 1.0}});
  return out;
}

BinnedCurve impact_cond(const std::vector<TradingDay>& days, std::int64_t n0,
                        int n_bins) {
  if (n0 < 1) throw DataError("impact_cond: horizon must be >= 1");
  std::vector<double> pooled;
  for (const TradingDay& day : days) {
    const auto n = static_cast<std::int64_t>(day.orders.size());
    for (std::int64_t i = 1; i + n0 <= n - 1; ++i) {
      pooled.push_back(
          static_cast<double>(day.orders[i - 1 + n0].t - day.orders[i - 1].t));
    }
  }
  BinSpec spec = edges_for(std::move(pooled), n_bins, "impact_cond");

  CurveAccumulator acc(static_cast<std::size_t>(spec.n_bins()));
  for (const TradingDay& day : days) {
    const auto& o = day.orders;
    const auto n = static_cast<std::int64_t>(o.size());
    for (std::int64_t i = 1; i + n0 <= n - 1; ++i) {
      if (o[i].sign == 0) {
        throw DataError("impact_cond: orders are missing trade signs");
      }
      const std::int64_t d = o[i - 1 + n0].t - o[i - 1].t;
      const int bin = find_bin(spec, static_cast<double>(d));
      if (bin < 0) continue;
      const std::int64_t dht = o[i + n0].mid_ht() - o[i].mid_ht();
      acc.add(bin, d, o[i].sign * dht);
    }
  }
  return acc.finalize(spec, 2.0, kMinBinCount, "impact_cond",
                      {{"n0", static_cast<double>(n0)}});
}

BinnedCurve spread_cond(const std::vector<TradingDay>& days, std::int64_t n0,
                        int n_bins) {
  if (n0 < 1) throw DataError("spread_cond: horizon must be >= 1");
  std::vector<double> pooled;
  for (const TradingDay& day : days) {
    const auto n = static_cast<std::int64_t>(day.orders.size());
    for (std::int64_t i = 0; i + n0 <= n - 1; ++i) {
      pooled.push_back(static_cast<double>(day.orders[i + n0].t - day.orders[i].t));
    }
  }
  BinSpec spec = edges_for(std::move(pooled), n_bins, "spread_cond");

  CurveAccumulator acc(static_cast<std::size_t>(spec.n_bins()));
  for (const TradingDay& day : days) {
    const auto& o = day.orders;
    const auto n = static_cast<std::int64_t>(o.size());
    std::vector<std::int64_t> pref(o.size() + 1, 0);
    for (std::size_t j = 0; j < o.size(); ++j) pref[j + 1] = pref[j] + o[j].spread();
    for (std::int64_t i = 0; i + n0 <= n - 1; ++i) {
      const std::int64_t d = o[i + n0].t - o[i].t;
      const int bin = find_bin(spec, static_cast<double>(d));
      if (bin < 0) continue;
      acc.add(bin, d, pref[i + n0] - pref[i]);
    }
  }
  BinnedCurve curve =
      acc.finalize(spec, static_cast<double>(n0), kMinBinCount, "spread_cond",
                   {{"n0", static_cast<double>(n0)}});
  const double scale = 1.0 / static_cast<double>(n0);
  for (double& x : curve.lo) x *= scale;
  for (double& x : curve.hi) x *= scale;
  for (double& x : curve.center) x *= scale;
  return curve;
}

BinnedCurve var_fixed_dt(const std::vector<TradingDay>& days, Ms window_ms,
                         int n_bins) {
  if (window_ms < 1) throw DataError("var_fixed_dt: window must be >= 1 ms");
  std::vector<std::vector<WindowTerm>> terms;
  terms.reserve(days.size());
  std::vector<double> pooled;
  for (const TradingDay& day : days) {
    terms.push_back(window_terms(day, window_ms));
    for (const WindowTerm& w : terms.back()) {
      if (w.n > 0) pooled.push_back(static_cast<double>(w.n));
    }
  }
  BinSpec spec = edges_for(std::move(pooled), n_bins, "var_fixed_dt");

  CurveAccumulator acc(static_cast<std::size_t>(spec.n_bins()));
  for (const auto& day_terms : terms) {
    for (const WindowTerm& w : day_terms) {
      if (w.n <= 0) continue;
      const int bin = find_bin(spec, static_cast<double>(w.n));
      if (bin < 0) continue;
      acc.add(bin, w.n, w.sq);
    }
  }
  return acc.finalize_window_ratio(spec, static_cast<double>(window_ms), 4.0,
                                   kMinBinCount, "var_fixed_dt",
                                   {{"window_ms", static_cast<double>(window_ms)}});
}

double clock_rv(const TradingDay& day, Ms width_ms) {
  std::int64_t sum_sq = 0;
  for (const WindowTerm& w : window_terms(day, width_ms)) sum_sq += w.sq;
  return static_cast<double>(sum_sq) / 4.0;
}

std::vector<SeasonalitySlot> seasonality(const std::vector<TradingDay>& days,
                                         Ms slot_ms, Ms rv_ms) {
  if (slot_ms < 1 || rv_ms < 1 || rv_ms > slot_ms) {
    throw DataError("seasonality: invalid slot or square width");
  }
  struct Agg {
    double rate_sum = 0.0;
    std::int64_t rate_days = 0;
    double rv_sum = 0.0;
    std::int64_t rv_days = 0;
  };
  std::map<Ms, Agg> slots;

  for (const TradingDay& day : days) {
    const auto& orders = day.orders;
    PrevTickSampler sampler(orders);
    std::optional<HalfTicks> m_prev = sampler.at(day.session.open);
    std::size_t lo = 0;
    for (Ms start = day.session.open; start + slot_ms <= day.session.close;
         start += slot_ms) {
      const Ms end = start + slot_ms;
      Agg& agg = slots[start - day.session.open];

      while (lo < orders.size() && orders[lo].t < start) ++lo;
      std::size_t hi = lo;
      while (hi < orders.size() && orders[hi].t < end) ++hi;
      agg.rate_sum += static_cast<double>(hi - lo) /
                      (static_cast<double>(slot_ms) / 1000.0);
      ++agg.rate_days;
      lo = hi;

      std::int64_t sq_sum = 0;
      std::int64_t sq_n = 0;
      for (Ms sq_start = start; sq_start + rv_ms <= end; sq_start += rv_ms) {
        std::optional<HalfTicks> m_end = sampler.at(sq_start + rv_ms);
        if (m_prev.has_value()) {
          const std::int64_t d = *m_end - *m_prev;
          sq_sum += d * d;
          ++sq_n;
        }
        m_prev = m_end;
      }
      if (sq_n > 0) {
        agg.rv_sum += static_cast<double>(sq_sum) / 4.0 / static_cast<double>(sq_n);
        ++agg.rv_days;
      }
    }
  }

  std::vector<SeasonalitySlot> out;
  for (const auto& [offset, agg] : slots) {
    SeasonalitySlot slot;
    slot.offset_ms = offset;
    slot.mean_trades_per_sec =
        agg.rate_days > 0 ? agg.rate_sum / static_cast<double>(agg.rate_days)
                          : std::numeric_limits<double>::quiet_NaN();
    slot.mean_rv = agg.rv_days > 0
                       ? agg.rv_sum / static_cast<double>(agg.rv_days)
                       : std::numeric_limits<double>::quiet_NaN();
    slot.n_days = agg.rv_days;
    out.push_back(slot);
  }
  return out;
}

DailyScatter daily_scatter(const std::vector<TradingDay>& days, Ms width_ms) {
  DailyScatter out;
  double num = 0.0;
  double den = 0.0;
  for (const TradingDay& day : days) {
    DailyActivityRow row;
    row.day_id = day.day_id;
    row.n_trades = day.n_trades();
    row.rv = clock_rv(day, width_ms);
    num += static_cast<double>(row.n_trades) * row.rv;
    den += static_cast<double>(row.n_trades) * static_cast<double>(row.n_trades);
    out.rows.push_back(std::move(row));
  }
  out.slope = den > 0 ? num / den : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace tickstats
