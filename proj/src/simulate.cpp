#include "tickstats/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "tickstats/parse.hpp"

namespace tickstats {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Decorrelates per-day generator seeds derived from one scenario seed.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void require(bool ok, const char* msg) {
  if (!ok) throw DataError(std::string("scenario: ") + msg);
}

}  // namespace

void SimScenario::validate() const {
  require(!symbol.empty(), "symbol must not be empty");
  for (char c : symbol) {
    require((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'),
            "symbol must be upper-case alphanumeric");
  }
  date_plus_days(start_date, 0);  // throws on bad dates
  require(n_days >= 1, "n_days must be >= 1");
  require(session.open >= 0 && session.close > session.open,
          "session must satisfy 0 <= open < close");
  require(std::isfinite(tick_value) && tick_value > 0, "tick_value must be > 0");
  require(base_price >= 10, "base_price must be >= 10 ticks");

  switch (rate.kind) {
    case RateModel::Kind::constant:
      require(rate.base_per_sec > 0, "constant rate must be > 0");
      break;
    case RateModel::Kind::sinusoidal:
      require(rate.base_per_sec > 0, "sinusoidal base rate must be > 0");
      require(rate.amplitude >= 0 && rate.amplitude < 1,
              "sinusoidal amplitude must lie in [0, 1)");
      require(rate.period_ms >= 0, "sinusoidal period must be >= 0");
      break;
    case RateModel::Kind::burst:
      require(rate.low_per_sec >= 0, "burst low rate must be >= 0");
      require(rate.high_per_sec > 0 && rate.high_per_sec >= rate.low_per_sec,
              "burst high rate must be > 0 and >= low");
      require(rate.dwell_ms >= 1, "burst dwell must be >= 1 ms");
      break;
  }
  require(signs.rho >= 0 && signs.rho <= 1, "sign persistence must lie in [0, 1]");
  require(volume.sigma_log >= 0 && volume.sigma_log <= 3,
          "volume sigma_log must lie in [0, 3]");
  require(std::abs(volume.mu_log) <= 20, "volume mu_log must lie in [-20, 20]");
  require(std::isfinite(kernel.g0) && kernel.g0 >= 0, "kernel g0 must be >= 0");
  if (kernel.kind == KernelModel::Kind::power_law) {
    require(kernel.gamma > 0, "kernel gamma must be > 0");
    require(kernel.cutoff >= 1, "kernel cutoff must be >= 1");
  }
  require(noise_std_ticks >= 0 && noise_std_ticks <= 1000,
          "noise_std_ticks must lie in [0, 1000]");
  if (coupling.enabled) {
    require(coupling.multiplier > 0 && coupling.multiplier <= 100,
            "coupling multiplier must lie in (0, 100]");
    require(coupling.theta_ms >= 0, "coupling theta must be >= 0");
  }
  require(spread.spread_ticks >= 1 && spread.fast_ticks >= 1 && spread.slow_ticks >= 1,
          "spreads must be >= 1 tick");
  if (spread.kind == SpreadModel::Kind::rate_linked) {
    require(spread.theta_ms >= 0, "spread theta must be >= 0");
  }
}

std::vector<Ms> gen_arrival_times(const RateModel& rate, SessionBounds session,
                                  std::mt19937_64& rng) {
  std::vector<Ms> out;
  const double open = static_cast<double>(session.open);
  const double close = static_cast<double>(session.close);

  double lambda_max_per_ms = 0.0;
  switch (rate.kind) {
    case RateModel::Kind::constant:
      lambda_max_per_ms = rate.base_per_sec / 1000.0;
      break;
    case RateModel::Kind::sinusoidal:
      lambda_max_per_ms = rate.base_per_sec * (1.0 + rate.amplitude) / 1000.0;
      break;
    case RateModel::Kind::burst:
      lambda_max_per_ms = rate.high_per_sec / 1000.0;
      break;
  }
  std::exponential_distribution<double> gap(lambda_max_per_ms);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const double period =
      rate.period_ms > 0 ? static_cast<double>(rate.period_ms) : close - open;

  // Burst regime trajectory, advanced lazily as candidates cross switch times.
  bool high_state = false;
  double next_switch = std::numeric_limits<double>::infinity();
  std::exponential_distribution<double> dwell(
      rate.kind == RateModel::Kind::burst
          ? 1.0 / static_cast<double>(rate.dwell_ms)
          : 1.0);
  if (rate.kind == RateModel::Kind::burst) {
    high_state = unif(rng) < 0.5;
    next_switch = open + dwell(rng);
  }

  double t = open;
  while (true) {
    t += gap(rng);
    if (t >= close) break;
    double accept = 1.0;
    switch (rate.kind) {
      case RateModel::Kind::constant:
        break;
      case RateModel::Kind::sinusoidal: {
        const double lam = rate.base_per_sec *
                           (1.0 + rate.amplitude *
                                      std::sin(2.0 * kPi * (t - open) / period));
        accept = lam / (rate.base_per_sec * (1.0 + rate.amplitude));
        break;
      }
      case RateModel::Kind::burst: {
        while (t >= next_switch) {
          high_state = !high_state;
          next_switch += dwell(rng);
        }
        accept = high_state ? 1.0 : rate.low_per_sec / rate.high_per_sec;
        break;
      }
    }
    if (rate.kind != RateModel::Kind::constant && unif(rng) >= accept) continue;
    const Ms ts = llround(t);
    if (ts >= session.close) continue;
    out.push_back(ts);
  }
  return out;
}

std::vector<int> gen_signs(const SignModel& model, std::size_t n,
                           std::mt19937_64& rng) {
  std::vector<int> out;
  out.reserve(n);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || model.kind == SignModel::Kind::iid) {
      out.push_back(unif(rng) < 0.5 ? 1 : -1);
    } else {
      const bool keep = unif(rng) < model.rho;
      out.push_back(keep ? out.back() : -out.back());
    }
  }
  return out;
}

std::vector<Volume> gen_volumes(const VolumeModel& model, std::size_t n,
                                std::mt19937_64& rng) {
  std::vector<Volume> out;
  out.reserve(n);
  std::normal_distribution<double> normal(model.mu_log, model.sigma_log);
  for (std::size_t i = 0; i < n; ++i) {
    double z = model.sigma_log > 0 ? normal(rng) : model.mu_log;
    z = std::min(z, 42.0);  // keep exp(z) inside int64 range
    out.push_back(std::max<Volume>(1, llround(std::exp(z))));
  }
  return out;
}

std::vector<double> kernel_weights(const KernelModel& kernel, std::int64_t upto) {
  std::vector<double> w(static_cast<std::size_t>(upto) + 1, kernel.g0);
  if (kernel.kind == KernelModel::Kind::power_law) {
    for (std::int64_t k = 0; k <= upto; ++k) {
      const auto lag = static_cast<double>(std::min(k, kernel.cutoff));
      w[static_cast<std::size_t>(k)] =
          kernel.g0 * std::pow(1.0 + lag, -kernel.gamma);
    }
  }
  return w;
}

std::vector<double> simulate_midpath(const KernelModel& kernel,
                                     std::span<const double> xs) {
  const auto n = static_cast<std::int64_t>(xs.size());
  std::vector<double> p(xs.size(), 0.0);
  if (n == 0) return p;

  if (kernel.kind == KernelModel::Kind::permanent) {
    double acc = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
      p[static_cast<std::size_t>(i)] = acc;
      acc += kernel.g0 * xs[static_cast<std::size_t>(i)];
    }
    return p;
  }

  // Decaying weights: advance the path by each new order's full weight plus
  // the aging of the weights already applied to the trailing window.
  const std::vector<double> w = kernel_weights(kernel, kernel.cutoff);
  std::vector<double> dw(w.size(), 0.0);
  for (std::size_t j = 1; j < w.size(); ++j) dw[j] = w[j] - w[j - 1];

  double cur = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    p[static_cast<std::size_t>(i)] = cur;
    cur += w[0] * xs[static_cast<std::size_t>(i)];
    const std::int64_t reach = std::min<std::int64_t>(kernel.cutoff, i);
    for (std::int64_t j = 1; j <= reach; ++j) {
      cur += dw[static_cast<std::size_t>(j)] * xs[static_cast<std::size_t>(i - j)];
    }
  }
  return p;
}

std::string date_plus_days(const std::string& yyyymmdd, int days) {
  if (yyyymmdd.size() != 8 ||
      !std::all_of(yyyymmdd.begin(), yyyymmdd.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw DataError("bad date (want YYYYMMDD): " + yyyymmdd);
  }
  const int y = std::stoi(yyyymmdd.substr(0, 4));
  const int m = std::stoi(yyyymmdd.substr(4, 2));
  const int d = std::stoi(yyyymmdd.substr(6, 2));
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) throw DataError("bad date (not a calendar day): " + yyyymmdd);
  const std::chrono::sys_days moved =
      std::chrono::sys_days{ymd} + std::chrono::days{days};
  const std::chrono::year_month_day out{moved};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d%02u%02u", static_cast<int>(out.year()),
                static_cast<unsigned>(out.month()), static_cast<unsigned>(out.day()));
  return buf;
}

namespace {

struct QuoteTicks {
  Ticks bid = 0;
  Ticks ask = 0;
};

// Midpoint to a bid/ask pair: round to the half-tick grid, then nudge the
// midpoint up one half-tick whenever its parity prevents bid and ask from
// landing on whole ticks for the requested spread.
QuoteTicks quote_from_mid(double mid_ticks, Ticks spread) {
  HalfTicks mid_ht = llround(2.0 * mid_ticks);
  if (((mid_ht - spread) % 2 + 2) % 2 != 0) ++mid_ht;
  QuoteTicks q;
  q.bid = (mid_ht - spread) / 2;
  q.ask = (mid_ht + spread) / 2;
  if (q.bid < 1 || q.ask > 2'000'000'000) {
    throw DataError("simulate: price path left the valid range; rescale the scenario");
  }
  return q;
}

}  // namespace

SimulatedDay simulate_day(const SimScenario& s, int day_index) {
  s.validate();
  std::mt19937_64 rng(splitmix64(
      s.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(day_index + 1)));

  const std::vector<Ms> arrivals = gen_arrival_times(s.rate, s.session, rng);
  const std::vector<int> arrival_signs = gen_signs(s.signs, arrivals.size(), rng);

  // Same-millisecond arrivals on the same side act as one market order.
  std::vector<Ms> t;
  std::vector<int> sign;
  for (std::size_t i = 0; i < arrivals.size(); ++i) {
    if (!t.empty() && t.back() == arrivals[i] && sign.back() == arrival_signs[i]) {
      continue;
    }
    t.push_back(arrivals[i]);
    sign.push_back(arrival_signs[i]);
  }
  const std::size_t n = t.size();

  const std::vector<Volume> volumes = gen_volumes(s.volume, n, rng);

  std::vector<double> noise(n, 0.0);
  if (s.noise_std_ticks > 0) {
    std::normal_distribution<double> nd(0.0, s.noise_std_ticks);
    for (double& x : noise) x = nd(rng);
  }

  std::vector<double> xs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double m = 1.0;
    if (s.coupling.enabled && i > 0 && t[i] - t[i - 1] < s.coupling.theta_ms) {
      m = s.coupling.multiplier;
    }
    xs[i] = static_cast<double>(sign[i]) *
            std::log(static_cast<double>(volumes[i])) * m;
  }
  const std::vector<double> path = simulate_midpath(s.kernel, xs);

  SimulatedDay out;
  out.day_id = date_plus_days(s.start_date, day_index);
  out.day.day_id = out.day_id;
  out.day.tick_value = s.tick_value;
  out.day.session = s.session;

  auto spread_for = [&](std::size_t i) -> Ticks {
    if (s.spread.kind == SpreadModel::Kind::fixed) return s.spread.spread_ticks;
    if (i > 0 && t[i] - t[i - 1] < s.spread.theta_ms) return s.spread.fast_ticks;
    return s.spread.slow_ticks;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const double mid = static_cast<double>(s.base_price) + path[i] + noise[i];
    const QuoteTicks q = quote_from_mid(mid, spread_for(i));
    MarketOrder o;
    o.t = t[i];
    o.bid = q.bid;
    o.ask = q.ask;
    o.sign = sign[i];
    o.price = sign[i] > 0 ? q.ask : q.bid;
    o.volume = volumes[i];
    out.day.orders.push_back(o);
  }

  // Event stream: an opening quote, then per order a quote refresh when the
  // book moved plus one to three same-millisecond fills at the touch.
  QuoteTicks cur;
  if (n > 0) {
    cur = {out.day.orders[0].bid, out.day.orders[0].ask};
  } else {
    cur = quote_from_mid(static_cast<double>(s.base_price),
                         s.spread.kind == SpreadModel::Kind::fixed
                             ? s.spread.spread_ticks
                             : s.spread.slow_ticks);
  }
  auto push_quote = [&](Ms ts, QuoteTicks q) {
    RawEvent ev;
    ev.ts = ts;
    ev.kind = EventKind::Quote;
    ev.bid = static_cast<double>(q.bid) * s.tick_value;
    ev.ask = static_cast<double>(q.ask) * s.tick_value;
    out.events.push_back(ev);
  };
  push_quote(s.session.open, cur);

  for (std::size_t i = 0; i < n; ++i) {
    const MarketOrder& o = out.day.orders[i];
    if (o.bid != cur.bid || o.ask != cur.ask) {
      cur = {o.bid, o.ask};
      push_quote(o.t, cur);
    }
    std::uniform_int_distribution<int> parts_dist(1, 3);
    auto parts = static_cast<Volume>(parts_dist(rng));
    parts = std::min(parts, o.volume);
    Volume remaining = o.volume;
    for (Volume j = 0; j < parts; ++j) {
      Volume v = remaining - (parts - 1 - j);  // leave one unit per later fill
      if (j + 1 < parts) {
        std::uniform_int_distribution<Volume> cut(1, v);
        v = cut(rng);
      }
      remaining -= v;
      RawEvent ev;
      ev.ts = o.t;
      ev.kind = EventKind::Trade;
      ev.price = static_cast<double>(o.price) * s.tick_value;
      ev.volume = v;
      out.events.push_back(ev);
    }
  }
  return out;
}

std::vector<SimulatedDay> simulate_all(const SimScenario& s) {
  s.validate();
  std::vector<SimulatedDay> out;
  out.reserve(static_cast<std::size_t>(s.n_days));
  for (int d = 0; d < s.n_days; ++d) out.push_back(simulate_day(s, d));
  return out;
}

std::string events_to_csv(const std::vector<RawEvent>& events) {
  std::string out(kEventCsvHeader);
  out.push_back('\n');
  for (const RawEvent& ev : events) {
    out += to_csv_line(ev);
    out.push_back('\n');
  }
  return out;
}

std::vector<std::string> simulate_to_dir(const SimScenario& s,
                                         const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::vector<std::string> paths;
  for (const SimulatedDay& day : simulate_all(s)) {
    fs::path path = fs::path(out_dir) / (s.symbol + "_" + day.day_id + ".csv");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write " + path.string());
    f << events_to_csv(day.events);
    if (!f.good()) throw DataError("write failed: " + path.string());
    paths.push_back(path.string());
  }
  return paths;
}

}  // namespace tickstats
