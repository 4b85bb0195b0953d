#include "tickstats/condstats.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "tickstats/orderflow.hpp"

using namespace tickstats;

namespace {

// Order with a given pre-trade midpoint (half-ticks) and spread (ticks).
// ht and spread must have the same parity so bid/ask land on the tick grid.
MarketOrder ht_order(Ms t, HalfTicks ht, int sign = 1, Ticks spread = 2) {
  MarketOrder o;
  o.t = t;
  o.bid = (ht - spread) / 2;
  o.ask = (ht + spread) / 2;
  o.price = sign > 0 ? o.ask : o.bid;
  o.volume = 1;
  o.sign = sign;
  return o;
}

TradingDay make_day(std::vector<MarketOrder> orders, Ms close = 86'400'000,
                    std::string day_id = "20240102") {
  TradingDay day;
  day.day_id = std::move(day_id);
  day.tick_value = 0.5;
  day.session = {0, close};
  day.orders = std::move(orders);
  compute_returns(day.orders);
  return day;
}

// Timing: three 10ms gaps then three ~1000ms gaps. The midpoint move that
// FOLLOWS a gap has magnitude 2 half-ticks after fast gaps and 6 after slow
// ones, so conditioning on the trailing gap must separate variance 1.0 from
// 9.0 ticks^2 exactly. A forward-gap (non-causal) implementation misassigns
// term i=3 and fails the frozen counts below.
std::vector<MarketOrder> gap_coupled_orders(const std::vector<int>& signs) {
  const std::vector<Ms> ts = {0, 10, 20, 30, 1000, 2000, 3000, 4000};
  const std::vector<HalfTicks> dht = {0, +2, -2, +2, +6, +6, -6};  // ht[i+1]-ht[i]
  std::vector<MarketOrder> orders;
  HalfTicks ht = 200;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i > 0) ht += dht[i - 1];
    orders.push_back(ht_order(ts[i], ht, signs[i]));
  }
  return orders;
}

}  // namespace

// ===== variance per trade, fixed trade horizon ==============================

TEST(VarFixedN, TrailingGapConditioningSeparatesRegimes) {
  TradingDay day = make_day(gap_coupled_orders({1, 1, 1, 1, 1, 1, 1, 1}));
  BinnedCurve c = var_fixed_n({day}, 1, 2);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.estimator, "var_fixed_n");
  EXPECT_DOUBLE_EQ(c.params.at("n0"), 1.0);

  EXPECT_EQ(c.count[0], 3);
  EXPECT_DOUBLE_EQ(c.center[0], 10.0);
  EXPECT_DOUBLE_EQ(c.value[0], 1.0);  // (4+4+4)/3 half-ticks^2 -> /4 ticks^2
  EXPECT_DOUBLE_EQ(c.se[0], 0.0);

  EXPECT_EQ(c.count[1], 3);
  EXPECT_DOUBLE_EQ(c.center[1], 990.0);  // mean{970,1000,1000}
  EXPECT_DOUBLE_EQ(c.value[1], 9.0);
  EXPECT_DOUBLE_EQ(c.se[1], 0.0);
}

TEST(VarFixedN, HorizonTwoUsesCausalWindowDuration) {
  // ts = 0,100,300,600,1000 ; ht = 200,202,206,200,210
  // terms i in [1, 2]: d = t[i+1]-t[i-1], sq = (ht[i+2]-ht[i])^2
  //   i=1: d=300,  sq=(200-202)^2=4
  //   i=2: d=500,  sq=(210-206)^2=16
  TradingDay day = make_day({
      ht_order(0, 200),
      ht_order(100, 202),
      ht_order(300, 206),
      ht_order(600, 200),
      ht_order(1000, 210),
  });
  BinnedCurve c = var_fixed_n({day}, 2, 1);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.count[0], 2);
  EXPECT_DOUBLE_EQ(c.center[0], 400.0);
  // mean(4,16)/ (4*N0) = 10/8
  EXPECT_DOUBLE_EQ(c.value[0], 1.25);
}

TEST(VarFixedN, ThrowsWhenNoDayIsLongEnough) {
  TradingDay day = make_day({ht_order(0, 200), ht_order(10, 202)});
  EXPECT_THROW(var_fixed_n({day}, 5, 2), DataError);
}

// ===== split into zero-move probability and nonzero amplitude ===============

TEST(VarProbAmp, SharedBinsAndExactFactorization) {
  // Fast gaps: moves {0,+2,-2}; slow gaps: moves {+6,0,-6}.
  const std::vector<Ms> ts = {0, 10, 20, 30, 1000, 2000, 3000, 4000};
  const std::vector<HalfTicks> dht = {0, 0, +2, -2, +6, 0, -6};
  std::vector<MarketOrder> orders;
  HalfTicks ht = 200;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i > 0) ht += dht[i - 1];
    orders.push_back(ht_order(ts[i], ht));
  }
  TradingDay day = make_day(std::move(orders));

  TradeScaleCurves curves = var_prob_amp_n1({day}, 2);
  ASSERT_EQ(curves.v.size(), 2u);
  ASSERT_EQ(curves.p.size(), 2u);
  ASSERT_EQ(curves.a.size(), 2u);

  // Identical conditioning: same edges, same centers.
  EXPECT_EQ(curves.v.lo, curves.p.lo);
  EXPECT_EQ(curves.v.lo, curves.a.lo);
  EXPECT_EQ(curves.v.center, curves.p.center);

  EXPECT_DOUBLE_EQ(curves.p.value[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(curves.a.value[0], 1.0);
  EXPECT_DOUBLE_EQ(curves.v.value[0], 2.0 / 3.0);

  EXPECT_DOUBLE_EQ(curves.p.value[1], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(curves.a.value[1], 9.0);
  EXPECT_DOUBLE_EQ(curves.v.value[1], 6.0);

  // v = P * A holds bin by bin (integer sums make it exact up to division).
  for (std::size_t i = 0; i < curves.v.size(); ++i) {
    EXPECT_NEAR(curves.v.value[i], curves.p.value[i] * curves.a.value[i], 1e-15);
  }
  // Amplitude counts only the nonzero moves.
  EXPECT_EQ(curves.a.count[0], 2);
  EXPECT_EQ(curves.a.count[1], 2);
  EXPECT_EQ(curves.p.count[0], 3);

  // The v leg of the bundle and the standalone estimator agree bit for bit.
  BinnedCurve standalone = var_fixed_n({day}, 1, 2);
  ASSERT_EQ(standalone.size(), curves.v.size());
  for (std::size_t i = 0; i < standalone.size(); ++i) {
    EXPECT_EQ(standalone.value[i], curves.v.value[i]);
    EXPECT_EQ(standalone.se[i], curves.v.se[i]);
    EXPECT_EQ(standalone.center[i], curves.v.center[i]);
  }
}

TEST(VarProbAmp, AmplitudeBinWithOneNonzeroMoveIsReportedEmpty) {
  TradingDay day = make_day({
      ht_order(0, 200),
      ht_order(10, 200),
      ht_order(20, 200),
      ht_order(30, 202),
      ht_order(40, 202),
  });
  // Terms i=1..3: moves {0,+2,0} -> one nonzero in the single bin.
  TradeScaleCurves curves = var_prob_amp_n1({day}, 1);
  ASSERT_EQ(curves.a.size(), 1u);
  EXPECT_EQ(curves.a.count[0], 1);
  EXPECT_TRUE(std::isnan(curves.a.value[0]));
  EXPECT_DOUBLE_EQ(curves.p.value[0], 1.0 / 3.0);
}

// ===== signed impact ========================================================

TEST(ImpactCond, SignedMoveInTicksPerRegime) {
  // Fast terms: (sign, dht) = (+,+2)(-,-2)(+,+2) -> +1 tick each.
  // Slow terms: (+,+6)(+,+6)(-,-6) -> +3 ticks each.
  const std::vector<Ms> ts = {0, 10, 20, 30, 1000, 2000, 3000, 4000};
  const std::vector<HalfTicks> dht = {0, +2, -2, +2, +6, +6, -6};
  const std::vector<int> signs = {1, 1, -1, 1, 1, 1, -1, 1};
  std::vector<MarketOrder> orders;
  HalfTicks ht = 200;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i > 0) ht += dht[i - 1];
    orders.push_back(ht_order(ts[i], ht, signs[i]));
  }
  TradingDay day = make_day(std::move(orders));

  BinnedCurve c = impact_cond({day}, 1, 2);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_DOUBLE_EQ(c.value[0], 1.0);
  EXPECT_DOUBLE_EQ(c.value[1], 3.0);
  EXPECT_DOUBLE_EQ(c.se[0], 0.0);
  EXPECT_EQ(c.count[0], 3);
}

TEST(ImpactCond, RejectsUnsignedOrders) {
  std::vector<MarketOrder> orders = gap_coupled_orders({1, 1, 1, 1, 1, 1, 1, 1});
  orders[3].sign = 0;
  TradingDay day = make_day(std::move(orders));
  EXPECT_THROW(impact_cond({day}, 1, 2), DataError);
}

// ===== spread conditioned on forward window duration ========================

TEST(SpreadCond, MeanSpreadPerTradeAndPerTradeAbscissa) {
  TradingDay day = make_day({
      ht_order(0, 200, 1, 2),
      ht_order(100, 200, 1, 2),
      ht_order(200, 200, 1, 4),
      ht_order(1000, 200, 1, 4),
      ht_order(2000, 200, 1, 6),
  });
  // Terms i=0..2, window [i, i+2]:
  //   i=0: d=200,  spreads 2+2 -> mean 2
  //   i=1: d=900,  spreads 2+4 -> mean 3
  //   i=2: d=1800, spreads 4+4 -> mean 4
  BinnedCurve c = spread_cond({day}, 2, 1);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.count[0], 3);
  EXPECT_DOUBLE_EQ(c.value[0], 3.0);
  // Abscissa is duration per trade: d/N0.
  EXPECT_DOUBLE_EQ(c.center[0], (200.0 + 900.0 + 1800.0) / 3.0 / 2.0);
  EXPECT_DOUBLE_EQ(c.lo[0], 100.0);
  EXPECT_DOUBLE_EQ(c.hi[0], 900.0);
}

// ===== variance per trade, fixed clock windows ==============================

TEST(VarFixedDt, WindowCountsAndRatioOfSums) {
  // 1000ms windows on [0, 6000]:
  //   [0,1000):    no sampled start midpoint -> skipped
  //   [1000,2000): n=1, jump 204->210, sq=36
  //   [2000,3000): n=2, jump 210->216, sq=36
  //   [3000,4000): n=1, jump 216->220, sq=16
  //   [4000,5000): n=2, jump 220->228, sq=64
  //   [5000,6000): n=0 -> excluded
  TradingDay day = make_day(
      {
          ht_order(100, 200),
          ht_order(600, 204),
          ht_order(1500, 210),
          ht_order(2200, 210),
          ht_order(2300, 216),
          ht_order(3500, 220),
          ht_order(4200, 226),
          ht_order(4300, 228),
      },
      6000);

  BinnedCurve c = var_fixed_dt({day}, 1000, 2);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.estimator, "var_fixed_dt");

  // Rows ascend in window_ms / mean(n): the busy bin comes first.
  EXPECT_EQ(c.count[0], 2);
  EXPECT_DOUBLE_EQ(c.center[0], 500.0);          // 1000 / mean n of {2,2}
  EXPECT_DOUBLE_EQ(c.value[0], 100.0 / 16.0);    // (36+64)/(4*(2+2))
  EXPECT_EQ(c.count[1], 2);
  EXPECT_DOUBLE_EQ(c.center[1], 1000.0);         // 1000 / mean n of {1,1}
  EXPECT_DOUBLE_EQ(c.value[1], 52.0 / 8.0);      // (36+16)/(4*(1+1))
  EXPECT_LT(c.lo[0], c.hi[0]);
  EXPECT_LE(c.hi[0], c.lo[1] + 1e-12);
}

// ===== clock realized variance, daily scatter, seasonality ==================

TEST(ClockRv, SumsSquaredJumpsOverDefinedSquares) {
  TradingDay day = make_day(
      {
          ht_order(100, 200),
          ht_order(600, 204),
          ht_order(1500, 210),
          ht_order(2200, 214),
      },
      3000);
  // Squares [0,1000] skipped (no midpoint yet), then 36 and 16 half-ticks^2.
  EXPECT_DOUBLE_EQ(clock_rv(day, 1000), 13.0);
}

TEST(DailyScatter, ThroughOriginSlope) {
  TradingDay d1 = make_day(
      {
          ht_order(100, 200),
          ht_order(600, 204),
          ht_order(1500, 210),
          ht_order(2200, 214),
      },
      3000, "20240102");
  TradingDay d2 = make_day(
      {
          ht_order(500, 200),
          ht_order(1500, 208),
      },
      3000, "20240103");

  DailyScatter sc = daily_scatter({d1, d2}, 1000);
  ASSERT_EQ(sc.rows.size(), 2u);
  EXPECT_EQ(sc.rows[0].day_id, "20240102");
  EXPECT_EQ(sc.rows[0].n_trades, 4);
  EXPECT_DOUBLE_EQ(sc.rows[0].rv, 13.0);
  EXPECT_DOUBLE_EQ(sc.rows[1].rv, 16.0);
  // slope = sum(N*RV)/sum(N^2) = (4*13 + 2*16)/(16+4)
  EXPECT_DOUBLE_EQ(sc.slope, 4.2);
}

TEST(Seasonality, PerSlotActivityAndVarianceAveragedAcrossDays) {
  TradingDay d1 = make_day(
      {
          ht_order(200, 200),
          ht_order(700, 202),
          ht_order(1200, 206),
          ht_order(1800, 208),
          ht_order(2600, 212),
      },
      3000, "20240102");
  TradingDay d2 = make_day(
      {
          ht_order(200, 200),
          ht_order(2600, 204),
      },
      3000, "20240103");

  auto slots = seasonality({d1, d2}, 1000, 500);
  ASSERT_EQ(slots.size(), 3u);

  EXPECT_EQ(slots[0].offset_ms, 0);
  EXPECT_DOUBLE_EQ(slots[0].mean_trades_per_sec, 1.5);  // (2 + 1)/2 trades over 1s
  EXPECT_DOUBLE_EQ(slots[0].mean_rv, 0.5);              // (1.0 + 0.0)/2
  EXPECT_EQ(slots[0].n_days, 2);

  EXPECT_EQ(slots[1].offset_ms, 1000);
  EXPECT_DOUBLE_EQ(slots[1].mean_trades_per_sec, 1.0);
  EXPECT_DOUBLE_EQ(slots[1].mean_rv, 1.25);  // (2.5 + 0.0)/2

  EXPECT_EQ(slots[2].offset_ms, 2000);
  EXPECT_DOUBLE_EQ(slots[2].mean_trades_per_sec, 1.0);
  EXPECT_DOUBLE_EQ(slots[2].mean_rv, 2.0);
}

TEST(Seasonality, PartialTrailingSlotIsDropped) {
  TradingDay d1 = make_day({ht_order(200, 200), ht_order(2600, 204)}, 2800);
  auto slots = seasonality({d1}, 1000, 500);
  EXPECT_EQ(slots.size(), 2u);  // [2000,3000] sticks out past the close
}

// ===== day-order invariance =================================================

TEST(CondStats, DayOrderDoesNotChangeAnyBit) {
  auto lcg_day = [](std::uint64_t salt, std::string id) {
    std::uint64_t x = salt;
    std::vector<MarketOrder> orders;
    Ms t = 0;
    HalfTicks ht = 20000;
    for (int i = 0; i < 400; ++i) {
      x = x * 6364136223846793005ULL + 1442695040888963407ULL;
      t += 1 + static_cast<Ms>(x % 200);
      ht += 2 * (static_cast<HalfTicks>((x >> 32) % 5) - 2);
      orders.push_back(ht_order(t, ht, (x >> 17) % 2 == 0 ? 1 : -1));
    }
    return make_day(std::move(orders), 86'400'000, std::move(id));
  };

  std::vector<TradingDay> days = {lcg_day(11, "20240102"), lcg_day(22, "20240103"),
                                  lcg_day(33, "20240104")};
  std::vector<TradingDay> reversed = {days[2], days[0], days[1]};

  auto check = [](const BinnedCurve& a, const BinnedCurve& b) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a.value[i], b.value[i]);
      EXPECT_EQ(a.se[i], b.se[i]);
      EXPECT_EQ(a.center[i], b.center[i]);
      EXPECT_EQ(a.count[i], b.count[i]);
    }
    EXPECT_EQ(a.pooled_value, b.pooled_value);
  };

  check(var_fixed_n(days, 1, 5), var_fixed_n(reversed, 1, 5));
  check(var_fixed_n(days, 10, 5), var_fixed_n(reversed, 10, 5));
  check(impact_cond(days, 1, 5), impact_cond(reversed, 1, 5));
  check(spread_cond(days, 10, 5), spread_cond(reversed, 10, 5));
  check(var_fixed_dt(days, 5000, 4), var_fixed_dt(reversed, 5000, 4));
}
