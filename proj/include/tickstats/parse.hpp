#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tickstats/types.hpp"

namespace tickstats {

inline constexpr std::string_view kEventCsvHeader = "ts_ms,kind,price,volume,bid,ask";

class ParseError : public DataError {
 public:
  enum class Reason { bad_line, crossed_quote, zero_volume };

  ParseError(Reason reason, std::size_t line_no, const std::string& detail);

  Reason reason() const { return reason_; }
  std::size_t line_no() const { return line_no_; }

 private:
  Reason reason_;
  std::size_t line_no_;
};

// Parses one non-header CSV line. Throws ParseError; crossed_quote and
// zero_volume are recoverable reasons the stream parser skips and counts.
RawEvent parse_line(std::string_view line, std::size_t line_no);

// Parses a whole stream (header required). Crossed quotes and zero-volume
// trades are skipped and counted in diag; any other fault is fatal.
std::vector<RawEvent> parse_event_stream(std::istream& in, ParseDiagnostics& diag);

std::vector<RawEvent> parse_event_file(const std::string& path, ParseDiagnostics& diag);

// Inverse of parse_line, without trailing newline. Floats at 12 significant
// digits so identical state always serializes to identical bytes.
std::string to_csv_line(const RawEvent& ev);

std::string format_double(double v);  // %.12g, shared by every writer

}  // namespace tickstats
