#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "tickstats/types.hpp"

namespace tickstats {

// Trade arrival intensity over the session clock (rates in events/second).
struct RateModel {
  enum class Kind { constant, sinusoidal, burst };
  Kind kind = Kind::constant;

  double base_per_sec = 1.0;  // constant & sinusoidal

  // sinusoidal: lambda(t) = base * (1 + amplitude * sin(2*pi*(t-open)/period))
  double amplitude = 0.0;  // in [0, 1)
  Ms period_ms = 0;        // 0 = one full cycle per session

  // burst: two-state Markov rate flipping between low and high, with
  // exponentially distributed dwell times of the given mean in each state
  double low_per_sec = 0.0;
  double high_per_sec = 0.0;
  Ms dwell_ms = 0;
};

// Trade signs: independent fair coin, or a first-order chain that repeats the
// previous sign with probability rho (lag-1 autocorrelation 2*rho - 1).
struct SignModel {
  enum class Kind { iid, markov };
  Kind kind = Kind::iid;
  double rho = 0.5;
};

// Volumes: V = max(1, round(exp(N(mu_log, sigma_log^2)))).
struct VolumeModel {
  double mu_log = 1.0;
  double sigma_log = 0.35;
};

// Lag weights applied to past order innovations. "permanent" keeps every
// order's push forever (weight g0 at all lags); "power_law" decays as
// g0 * (1 + k)^(-gamma) up to the cutoff lag and stays frozen at the cutoff
// value beyond it, so each new trade touches at most `cutoff` past orders.
struct KernelModel {
  enum class Kind { permanent, power_law };
  Kind kind = Kind::permanent;
  double g0 = 1.0;
  double gamma = 1.5;        // power_law only
  std::int64_t cutoff = 1000;  // power_law only
};

// Optional feedback from trading speed to innovation size: an order arriving
// within theta_ms of its predecessor has its innovation scaled by multiplier.
struct DurationCoupling {
  bool enabled = false;
  double multiplier = 1.0;
  Ms theta_ms = 0;
};

// Quoted spread: fixed, or linked to trading speed (an order arriving within
// theta_ms of its predecessor sees fast_ticks, otherwise slow_ticks).
struct SpreadModel {
  enum class Kind { fixed, rate_linked };
  Kind kind = Kind::fixed;
  Ticks spread_ticks = 1;
  Ticks fast_ticks = 3;
  Ticks slow_ticks = 1;
  Ms theta_ms = 0;
};

struct SimScenario {
  std::string symbol = "SIM";
  std::string start_date = "20240102";  // YYYYMMDD; days advance the calendar
  int n_days = 1;
  SessionBounds session{0, 3'600'000};
  Ticks base_price = 10000;  // opening midpoint, ticks
  double tick_value = 0.5;
  std::uint64_t seed = 1;

  RateModel rate;
  SignModel signs;
  VolumeModel volume;
  KernelModel kernel;
  double noise_std_ticks = 0.0;  // iid level noise added to each pre-trade mid
  DurationCoupling coupling;
  SpreadModel spread;

  void validate() const;  // throws DataError on nonsense
};

// ===== building blocks (deterministic given the rng state) =================

// Arrival timestamps in [open, close), ms resolution, non-decreasing;
// same-millisecond arrivals are kept.
std::vector<Ms> gen_arrival_times(const RateModel& rate, SessionBounds session,
                                  std::mt19937_64& rng);

std::vector<int> gen_signs(const SignModel& model, std::size_t n,
                           std::mt19937_64& rng);

std::vector<Volume> gen_volumes(const VolumeModel& model, std::size_t n,
                                std::mt19937_64& rng);

// Pre-trade mid offsets p_n (ticks, relative to the base price, no noise):
// p_n = sum_{i<n} W(n-1-i) * x_i. Output has xs.size() entries.
std::vector<double> simulate_midpath(const KernelModel& kernel,
                                     std::span<const double> xs);

// Lag weights W(0..upto), frozen beyond the cutoff for power_law.
std::vector<double> kernel_weights(const KernelModel& kernel, std::int64_t upto);

// "YYYYMMDD" plus a number of calendar days.
std::string date_plus_days(const std::string& yyyymmdd, int days);

// ===== full day ============================================================

struct SimulatedDay {
  std::string day_id;
  std::vector<RawEvent> events;  // initial quote, then quote-on-change + fills
  TradingDay day;                // ground truth: aggregated orders with signs
};

SimulatedDay simulate_day(const SimScenario& scenario, int day_index);
std::vector<SimulatedDay> simulate_all(const SimScenario& scenario);

// Serializes one day's events (header + one line per event).
std::string events_to_csv(const std::vector<RawEvent>& events);

// Writes SYMBOL_YYYYMMDD.csv per day under out_dir (created if missing);
// returns the file paths in day order.
std::vector<std::string> simulate_to_dir(const SimScenario& scenario,
                                         const std::string& out_dir);

}  // namespace tickstats
