#include "tickstats/config.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tickstats {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw DataError("config " + origin + ": " + what);
}

// json.at with a context-carrying error message.
const json& field(const json& j, const char* key, const std::string& origin) {
  auto it = j.find(key);
  if (it == j.end()) fail(origin, std::string("missing field '") + key + "'");
  return *it;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->get<T>();
}

SessionBounds parse_session(const json& j, const std::string& origin) {
  SessionBounds s;
  s.open = parse_hhmm(field(j, "open", origin).get<std::string>());
  s.close = parse_hhmm(field(j, "close", origin).get<std::string>());
  if (s.open >= s.close) fail(origin, "session open must precede close");
  return s;
}

json session_to_json(SessionBounds s) {
  return json{{"open", format_hhmm(s.open)}, {"close", format_hhmm(s.close)}};
}

RateModel rate_from_json(const json& j, const std::string& origin) {
  RateModel r;
  const auto kind = field(j, "kind", origin).get<std::string>();
  if (kind == "constant") {
    r.kind = RateModel::Kind::constant;
    r.base_per_sec = field(j, "base_per_sec", origin).get<double>();
  } else if (kind == "sinusoidal") {
    r.kind = RateModel::Kind::sinusoidal;
    r.base_per_sec = field(j, "base_per_sec", origin).get<double>();
    r.amplitude = field(j, "amplitude", origin).get<double>();
    r.period_ms = get_or<Ms>(j, "period_ms", 0);
  } else if (kind == "burst") {
    r.kind = RateModel::Kind::burst;
    r.low_per_sec = field(j, "low_per_sec", origin).get<double>();
    r.high_per_sec = field(j, "high_per_sec", origin).get<double>();
    r.dwell_ms = field(j, "dwell_ms", origin).get<Ms>();
  } else {
    fail(origin, "unknown rate kind '" + kind + "'");
  }
  return r;
}

json rate_to_json(const RateModel& r) {
  switch (r.kind) {
    case RateModel::Kind::constant:
      return json{{"kind", "constant"}, {"base_per_sec", r.base_per_sec}};
    case RateModel::Kind::sinusoidal:
      return json{{"kind", "sinusoidal"},
                  {"base_per_sec", r.base_per_sec},
                  {"amplitude", r.amplitude},
                  {"period_ms", r.period_ms}};
    case RateModel::Kind::burst:
      return json{{"kind", "burst"},
                  {"low_per_sec", r.low_per_sec},
                  {"high_per_sec", r.high_per_sec},
                  {"dwell_ms", r.dwell_ms}};
  }
  throw DataError("unreachable rate kind");
}

SimScenario scenario_from_json(const json& j, const std::string& origin) {
  SimScenario s;
  s.symbol = field(j, "symbol", origin).get<std::string>();
  s.start_date = field(j, "start_date", origin).get<std::string>();
  s.n_days = field(j, "n_days", origin).get<int>();
  s.session = parse_session(field(j, "session", origin), origin);
  s.base_price = get_or<Ticks>(j, "base_price", s.base_price);
  s.tick_value = field(j, "tick_value", origin).get<double>();
  s.seed = field(j, "seed", origin).get<std::uint64_t>();
  s.rate = rate_from_json(field(j, "rate", origin), origin);

  if (auto it = j.find("signs"); it != j.end()) {
    const auto kind = field(*it, "kind", origin).get<std::string>();
    if (kind == "iid") {
      s.signs.kind = SignModel::Kind::iid;
    } else if (kind == "markov") {
      s.signs.kind = SignModel::Kind::markov;
      s.signs.rho = field(*it, "rho", origin).get<double>();
    } else {
      fail(origin, "unknown signs kind '" + kind + "'");
    }
  }
  if (auto it = j.find("volume"); it != j.end()) {
    s.volume.mu_log = field(*it, "mu_log", origin).get<double>();
    s.volume.sigma_log = field(*it, "sigma_log", origin).get<double>();
  }
  if (auto it = j.find("kernel"); it != j.end()) {
    const auto kind = field(*it, "kind", origin).get<std::string>();
    if (kind == "permanent") {
      s.kernel.kind = KernelModel::Kind::permanent;
      s.kernel.g0 = field(*it, "g0", origin).get<double>();
    } else if (kind == "power_law") {
      s.kernel.kind = KernelModel::Kind::power_law;
      s.kernel.g0 = field(*it, "g0", origin).get<double>();
      s.kernel.gamma = field(*it, "gamma", origin).get<double>();
      s.kernel.cutoff = get_or<std::int64_t>(*it, "cutoff", s.kernel.cutoff);
    } else {
      fail(origin, "unknown kernel kind '" + kind + "'");
    }
  }
  s.noise_std_ticks = get_or<double>(j, "noise_std_ticks", 0.0);
  if (auto it = j.find("coupling"); it != j.end()) {
    s.coupling.enabled = get_or<bool>(*it, "enabled", true);
    s.coupling.multiplier = field(*it, "multiplier", origin).get<double>();
    s.coupling.theta_ms = field(*it, "theta_ms", origin).get<Ms>();
  }
  if (auto it = j.find("spread"); it != j.end()) {
    const auto kind = field(*it, "kind", origin).get<std::string>();
    if (kind == "fixed") {
      s.spread.kind = SpreadModel::Kind::fixed;
      s.spread.spread_ticks = field(*it, "spread_ticks", origin).get<Ticks>();
    } else if (kind == "rate_linked") {
      s.spread.kind = SpreadModel::Kind::rate_linked;
      s.spread.fast_ticks = field(*it, "fast_ticks", origin).get<Ticks>();
      s.spread.slow_ticks = field(*it, "slow_ticks", origin).get<Ticks>();
      s.spread.theta_ms = field(*it, "theta_ms", origin).get<Ms>();
    } else {
      fail(origin, "unknown spread kind '" + kind + "'");
    }
  }
  s.validate();
  return s;
}

json scenario_to_json_obj(const SimScenario& s) {
  json j{{"symbol", s.symbol},
         {"start_date", s.start_date},
         {"n_days", s.n_days},
         {"session", session_to_json(s.session)},
         {"base_price", s.base_price},
         {"tick_value", s.tick_value},
         {"seed", s.seed},
         {"rate", rate_to_json(s.rate)},
         {"volume", json{{"mu_log", s.volume.mu_log}, {"sigma_log", s.volume.sigma_log}}},
         {"noise_std_ticks", s.noise_std_ticks}};
  if (s.signs.kind == SignModel::Kind::iid) {
    j["signs"] = json{{"kind", "iid"}};
  } else {
    j["signs"] = json{{"kind", "markov"}, {"rho", s.signs.rho}};
  }
  if (s.kernel.kind == KernelModel::Kind::permanent) {
    j["kernel"] = json{{"kind", "permanent"}, {"g0", s.kernel.g0}};
  } else {
    j["kernel"] = json{{"kind", "power_law"},
                       {"g0", s.kernel.g0},
                       {"gamma", s.kernel.gamma},
                       {"cutoff", s.kernel.cutoff}};
  }
  if (s.coupling.enabled) {
    j["coupling"] = json{{"enabled", true},
                         {"multiplier", s.coupling.multiplier},
                         {"theta_ms", s.coupling.theta_ms}};
  }
  if (s.spread.kind == SpreadModel::Kind::fixed) {
    j["spread"] = json{{"kind", "fixed"}, {"spread_ticks", s.spread.spread_ticks}};
  } else {
    j["spread"] = json{{"kind", "rate_linked"},
                       {"fast_ticks", s.spread.fast_ticks},
                       {"slow_ticks", s.spread.slow_ticks},
                       {"theta_ms", s.spread.theta_ms}};
  }
  return j;
}

std::string resolve_path(const std::string& raw, const std::filesystem::path& base) {
  std::filesystem::path p(raw);
  if (p.is_absolute()) return p.lexically_normal().string();
  return (base / p).lexically_normal().string();
}

}  // namespace

Ms parse_hhmm(const std::string& hhmm) {
  int h = -1, m = -1;
  if (hhmm.size() == 5 && hhmm[2] == ':') {
    std::from_chars(hhmm.data(), hhmm.data() + 2, h);
    std::from_chars(hhmm.data() + 3, hhmm.data() + 5, m);
  }
  if (h < 0 || h > 23 || m < 0 || m > 59) {
    throw DataError("bad session time (want HH:MM): '" + hhmm + "'");
  }
  return (static_cast<Ms>(h) * 60 + m) * 60'000;
}

std::string format_hhmm(Ms since_midnight) {
  if (since_midnight < 0 || since_midnight >= 24LL * 3'600'000 ||
      since_midnight % 60'000 != 0) {
    throw DataError("session time not on a whole minute: " +
                    std::to_string(since_midnight) + " ms");
  }
  const long long minutes = since_midnight / 60'000;
  char buf[6];
  std::snprintf(buf, sizeof buf, "%02lld:%02lld", minutes / 60, minutes % 60);
  return buf;
}

RunConfig run_config_from_text(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(origin, std::string("not valid JSON: ") + e.what());
  }

  RunConfig cfg;
  cfg.data_dir = field(j, "data_dir", origin).get<std::string>();
  cfg.output_dir = field(j, "output_dir", origin).get<std::string>();

  for (const json& ji : get_or<json>(j, "instruments", json::array())) {
    InstrumentConfig ic;
    ic.symbol = field(ji, "symbol", origin).get<std::string>();
    ic.tick_value = field(ji, "tick_value", origin).get<double>();
    ic.session = parse_session(field(ji, "session", origin), origin);
    ic.min_trades = get_or<std::int64_t>(ji, "min_trades", ic.min_trades);
    if (ic.symbol.empty()) fail(origin, "instrument symbol must be non-empty");
    if (!(ic.tick_value > 0)) {
      fail(origin, "instrument " + ic.symbol + ": tick_value must be > 0");
    }
    if (ic.min_trades < 0) {
      fail(origin, "instrument " + ic.symbol + ": min_trades must be >= 0");
    }
    cfg.instruments.push_back(std::move(ic));
  }

  if (auto it = j.find("estimators"); it != j.end()) {
    EstimatorConfig& e = cfg.estimators;
    e.n_bins = get_or<int>(*it, "n_bins", e.n_bins);
    e.dt0_ms = get_or<Ms>(*it, "dt0_ms", e.dt0_ms);
    e.var_n0 = get_or<std::vector<std::int64_t>>(*it, "var_n0", e.var_n0);
    e.impact_n0 = get_or<std::vector<std::int64_t>>(*it, "impact_n0", e.impact_n0);
    e.spread_n0 = get_or<std::vector<std::int64_t>>(*it, "spread_n0", e.spread_n0);
    if (auto s = it->find("sample_ms"); s != it->end()) {
      const auto v = s->get<std::vector<Ms>>();
      if (v.size() != 2) {
        fail(origin, "sample_ms must hold exactly two entries "
                     "(profile squares, daily realized variance)");
      }
      e.seasonality_sample_ms = v[0];
      e.scatter_sample_ms = v[1];
    }
    if (e.n_bins < 1 || e.n_bins > 1000) fail(origin, "n_bins must lie in [1, 1000]");
    if (e.dt0_ms < 1) fail(origin, "dt0_ms must be >= 1");
    if (e.seasonality_sample_ms < 1 || e.scatter_sample_ms < 1) {
      fail(origin, "sample_ms entries must be >= 1");
    }
    for (const auto* lst : {&e.var_n0, &e.impact_n0, &e.spread_n0}) {
      if (lst->empty()) fail(origin, "horizon lists must be non-empty");
      for (auto n0 : *lst) {
        if (n0 < 1) fail(origin, "horizons must be >= 1 trade");
      }
    }
  }

  if (auto it = j.find("scenario"); it != j.end()) {
    cfg.scenario = scenario_from_json(*it, origin);
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  RunConfig cfg = run_config_from_text(ss.str(), path);
  const auto base = std::filesystem::path(path).parent_path();
  cfg.data_dir = resolve_path(cfg.data_dir, base);
  cfg.output_dir = resolve_path(cfg.output_dir, base);
  return cfg;
}

const InstrumentConfig& find_instrument(const RunConfig& cfg, const std::string& symbol) {
  for (const auto& ic : cfg.instruments) {
    if (ic.symbol == symbol) return ic;
  }
  throw DataError("symbol not in config: " + symbol);
}

std::string scenario_to_json_text(const SimScenario& s) {
  return scenario_to_json_obj(s).dump(2) + "\n";
}

SimScenario scenario_from_json_text(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(origin, std::string("not valid JSON: ") + e.what());
  }
  return scenario_from_json(j, origin);
}

}  // namespace tickstats
