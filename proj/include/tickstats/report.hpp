#pragma once

#include <string>
#include <vector>

#include "tickstats/binning.hpp"
#include "tickstats/condstats.hpp"
#include "tickstats/tickmetrics.hpp"

namespace tickstats {

// All writers print floats through format_double (12 significant digits) and
// leave the field empty for NaN, so identical state always produces
// identical bytes and spreadsheet tools see blanks, not "nan".

std::string csv_field(double v);  // format_double, or "" for NaN

// bin_lo,bin_hi,bin_center,count,value,stderr  (one row per bin)
std::string curve_to_csv(const BinnedCurve& c);

// slot_start_ms,trades_per_sec,mean_rv,n_days
std::string seasonality_to_csv(const std::vector<SeasonalitySlot>& slots);

// day_id,n_trades,rv
std::string scatter_to_csv(const DailyScatter& sc);

std::string report_csv_header();
std::string report_csv_row(const TickSizeReport& r);

// Appends the row, writing the header first when the file is new or empty.
void append_report_row(const std::string& path, const TickSizeReport& r);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// "SYMBOL_estimator[_param...].csv" — parameter values in key order.
std::string curve_csv_name(const std::string& symbol, const BinnedCurve& c);

}  // namespace tickstats
