#include "tickstats/parse.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>

namespace tickstats {

namespace {

[[noreturn]] void fail(ParseError::Reason reason, std::size_t line_no, const std::string& what) {
  throw ParseError(reason, line_no, what);
}

// Splits into exactly 6 comma-separated fields; no quoting in this format.
std::array<std::string_view, 6> split_fields(std::string_view line, std::size_t line_no) {
  std::array<std::string_view, 6> out;
  std::size_t field = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      if (field >= out.size()) fail(ParseError::Reason::bad_line, line_no, "too many fields");
      out[field++] = line.substr(start, i - start);
      start = i + 1;
    }
  }
  if (field != out.size()) fail(ParseError::Reason::bad_line, line_no, "expected 6 fields");
  return out;
}

std::int64_t parse_int(std::string_view s, std::size_t line_no, const char* name) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(ParseError::Reason::bad_line, line_no, std::string("bad integer in ") + name);
  }
  return v;
}

double parse_num(std::string_view s, std::size_t line_no, const char* name) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    fail(ParseError::Reason::bad_line, line_no, std::string("bad number in ") + name);
  }
  return v;
}

void require_empty(std::string_view s, std::size_t line_no, const char* name) {
  if (!s.empty()) {
    fail(ParseError::Reason::bad_line, line_no,
         std::string(name) + " must be empty for this event kind");
  }
}

}  // namespace

ParseError::ParseError(Reason reason, std::size_t line_no, const std::string& detail)
    : DataError("parse error at line " + std::to_string(line_no) + ": " + detail),
      reason_(reason),
      line_no_(line_no) {}

RawEvent parse_line(std::string_view line, std::size_t line_no) {
  const auto f = split_fields(line, line_no);

  RawEvent ev;
  ev.ts = parse_int(f[0], line_no, "ts_ms");
  if (ev.ts < 0) fail(ParseError::Reason::bad_line, line_no, "negative timestamp");

  if (f[1] == "T") {
    ev.kind = EventKind::Trade;
    ev.price = parse_num(f[2], line_no, "price");
    if (ev.price <= 0.0) fail(ParseError::Reason::bad_line, line_no, "trade price must be > 0");
    ev.volume = parse_int(f[3], line_no, "volume");
    if (ev.volume < 0) fail(ParseError::Reason::bad_line, line_no, "negative volume");
    require_empty(f[4], line_no, "bid");
    require_empty(f[5], line_no, "ask");
    if (ev.volume == 0) fail(ParseError::Reason::zero_volume, line_no, "zero-volume trade");
  } else if (f[1] == "Q") {
    ev.kind = EventKind::Quote;
    require_empty(f[2], line_no, "price");
    require_empty(f[3], line_no, "volume");
    ev.bid = parse_num(f[4], line_no, "bid");
    ev.ask = parse_num(f[5], line_no, "ask");
    if (ev.bid <= 0.0) fail(ParseError::Reason::bad_line, line_no, "bid must be > 0");
    if (ev.ask < ev.bid) {
      fail(ParseError::Reason::crossed_quote, line_no, "crossed quote (ask < bid)");
    }
  } else {
    fail(ParseError::Reason::bad_line, line_no, "unknown event kind");
  }
  return ev;
}

std::vector<RawEvent> parse_event_stream(std::istream& in, ParseDiagnostics& diag) {
  std::string line;
  if (!std::getline(in, line)) {
    fail(ParseError::Reason::bad_line, 1, "empty file, header expected");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kEventCsvHeader) {
    fail(ParseError::Reason::bad_line, 1, "missing or wrong header");
  }

  std::vector<RawEvent> events;
  std::size_t line_no = 1;
  Ms prev_ts = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++diag.lines;
    try {
      RawEvent ev = parse_line(line, line_no);
      if (ev.ts < prev_ts) ++diag.nonmonotone_timestamps;
      prev_ts = ev.ts;
      if (ev.kind == EventKind::Trade) {
        ++diag.trade_events;
      } else {
        ++diag.quote_events;
      }
      events.push_back(ev);
    } catch (const ParseError& e) {
      if (e.reason() == ParseError::Reason::crossed_quote) {
        ++diag.crossed_quotes;
      } else if (e.reason() == ParseError::Reason::zero_volume) {
        ++diag.zero_volume_trades;
      } else {
        throw;
      }
    }
  }
  return events;
}

std::vector<RawEvent> parse_event_file(const std::string& path, ParseDiagnostics& diag) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return parse_event_stream(in, diag);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string to_csv_line(const RawEvent& ev) {
  std::string out = std::to_string(ev.ts);
  if (ev.kind == EventKind::Trade) {
    out += ",T,";
    out += format_double(ev.price);
    out += ',';
    out += std::to_string(ev.volume);
    out += ",,";
  } else {
    out += ",Q,,,";
    out += format_double(ev.bid);
    out += ',';
    out += format_double(ev.ask);
  }
  return out;
}

}  // namespace tickstats
