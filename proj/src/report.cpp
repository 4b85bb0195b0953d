#include "tickstats/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tickstats/parse.hpp"

namespace tickstats {

std::string csv_field(double v) {
  return std::isnan(v) ? std::string() : format_double(v);
}

std::string curve_to_csv(const BinnedCurve& c) {
  std::ostringstream out;
  out << "bin_lo,bin_hi,bin_center,count,value,stderr\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    out << csv_field(c.lo[i]) << ',' << csv_field(c.hi[i]) << ','
        << csv_field(c.center[i]) << ',' << c.count[i] << ','
        << csv_field(c.value[i]) << ',' << csv_field(c.se[i]) << '\n';
  }
  return out.str();
}

std::string seasonality_to_csv(const std::vector<SeasonalitySlot>& slots) {
  std::ostringstream out;
  out << "slot_start_ms,trades_per_sec,mean_rv,n_days\n";
  for (const auto& s : slots) {
    out << s.offset_ms << ',' << csv_field(s.mean_trades_per_sec) << ','
        << csv_field(s.mean_rv) << ',' << s.n_days << '\n';
  }
  return out.str();
}

std::string scatter_to_csv(const DailyScatter& sc) {
  std::ostringstream out;
  out << "day_id,n_trades,rv\n";
  for (const auto& r : sc.rows) {
    out << r.day_id << ',' << r.n_trades << ',' << csv_field(r.rv) << '\n';
  }
  return out.str();
}

std::string report_csv_header() {
  return "symbol,tick_value,n_days,n_trades,pct_spread_one,pct_null_return,"
         "eta,perceived_tick,eta_days_used,eta_days_skipped\n";
}

std::string report_csv_row(const TickSizeReport& r) {
  std::ostringstream out;
  out << r.symbol << ',' << csv_field(r.tick_value) << ',' << r.n_days << ','
      << r.n_trades << ',' << csv_field(r.pct_spread_one) << ','
      << csv_field(r.pct_null_return) << ',' << csv_field(r.eta) << ','
      << csv_field(r.perceived) << ',' << r.eta_days_used << ','
      << r.eta_days_skipped << '\n';
  return out.str();
}

void append_report_row(const std::string& path, const TickSizeReport& r) {
  const bool fresh = !std::filesystem::exists(path) ||
                     std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw DataError("cannot open for append: " + path);
  if (fresh) out << report_csv_header();
  out << report_csv_row(r);
  if (!out) throw DataError("write failed: " + path);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open for write: " + path);
  out << content;
  if (!out) throw DataError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string curve_csv_name(const std::string& symbol, const BinnedCurve& c) {
  std::string name = symbol + "_" + c.estimator;
  for (const auto& [key, value] : c.params) {
    (void)key;  // params is ordered by key; values identify the variant
    name += "_" + format_double(value);
  }
  return name + ".csv";
}

}  // namespace tickstats
