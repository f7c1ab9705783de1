/*
 * Copyright 2026 the fspc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fspc/errors.hpp"
#include "fspc/event_log.hpp"

namespace fspc {

/// Names of the columns holding the five required event roles, plus the
/// field delimiter. Any column not named here lands in Event::extras.
struct CsvSchema {
  std::string event_id = "event_id";
  std::string case_id = "case_id";
  std::string activity = "activity";
  std::string timestamp = "timestamp";
  std::string diag_code = "diag_code";
  char delimiter = ',';
};

struct RowError {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string reason;
};

struct CsvParseResult {
  std::vector<Event> events;
  std::vector<RowError> errors;
};

namespace detail {

// One RFC 4180 record: quoted fields may contain the delimiter, doubled
// quotes, and line breaks. Returns false at end of input.
inline bool read_csv_record(std::istream& in, char delimiter, std::vector<std::string>& fields,
                            std::size_t& line, std::string* error) {
  fields.clear();
  int c = in.get();
  if (c == EOF) return false;
  ++line;
  std::string field;
  bool quoted = false;
  for (;;) {
    if (c == EOF) {
      if (quoted && error) *error = "unterminated quoted field";
      fields.push_back(std::move(field));
      return true;
    }
    const char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        const int peek = in.peek();
        if (peek == '"') {
          field.push_back('"');
          in.get();
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
    } else if (ch == '"' && field.empty()) {
      quoted = true;
    } else if (ch == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\r') {
      // swallow; the following '\n' ends the record
    } else if (ch == '\n') {
      fields.push_back(std::move(field));
      return true;
    } else {
      field.push_back(ch);
    }
    c = in.get();
  }
}

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

inline int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace detail

/// Parses an ISO-8601 date ("2018-10-22") or datetime ("2018-10-22T09:30:00",
/// 'T' or space separator, optional ".mmm" and trailing "Z") into epoch
/// milliseconds. Throws std::invalid_argument on anything else.
inline std::int64_t parse_timestamp_ms(std::string_view text) {
  using namespace std::chrono;
  const auto fail = [&]() -> std::int64_t {
    throw std::invalid_argument("unparseable timestamp: " + std::string(text));
  };
  if (text.size() < 10) return fail();
  if (text[4] != '-' || text[7] != '-') return fail();
  const auto ys = text.substr(0, 4), ms = text.substr(5, 2), ds = text.substr(8, 2);
  if (!detail::all_digits(ys) || !detail::all_digits(ms) || !detail::all_digits(ds)) return fail();
  const year_month_day ymd{year(detail::to_int(ys)), month(static_cast<unsigned>(detail::to_int(ms))),
                           day(static_cast<unsigned>(detail::to_int(ds)))};
  if (!ymd.ok()) return fail();
  std::int64_t msecs =
      duration_cast<milliseconds>(sys_days(ymd).time_since_epoch()).count();

  std::string_view rest = text.substr(10);
  if (rest.empty()) return msecs;
  if (rest[0] != 'T' && rest[0] != ' ') return fail();
  rest.remove_prefix(1);
  if (rest.size() < 8 || rest[2] != ':' || rest[5] != ':') return fail();
  const auto hs = rest.substr(0, 2), mins = rest.substr(3, 2), ss = rest.substr(6, 2);
  if (!detail::all_digits(hs) || !detail::all_digits(mins) || !detail::all_digits(ss)) return fail();
  const int h = detail::to_int(hs), mi = detail::to_int(mins), s = detail::to_int(ss);
  if (h > 23 || mi > 59 || s > 59) return fail();
  msecs += (h * 3600LL + mi * 60LL + s) * 1000;
  rest.remove_prefix(8);
  if (!rest.empty() && rest[0] == '.') {
    if (rest.size() < 4 || !detail::all_digits(rest.substr(1, 3))) return fail();
    msecs += detail::to_int(rest.substr(1, 3));
    rest.remove_prefix(4);
  }
  if (!rest.empty() && rest != "Z") return fail();
  return msecs;
}

inline int timestamp_year(std::int64_t msecs) {
  using namespace std::chrono;
  const year_month_day ymd{sys_days(floor<std::chrono::days>(milliseconds(msecs)))};
  return static_cast<int>(ymd.year());
}

inline std::string format_timestamp(std::int64_t msecs) {
  using namespace std::chrono;
  const sys_days days{floor<std::chrono::days>(milliseconds(msecs))};
  const year_month_day ymd{days};
  std::int64_t rem = msecs - duration_cast<milliseconds>(days.time_since_epoch()).count();
  char buf[32];
  if (rem == 0) {
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  } else {
    const int h = static_cast<int>(rem / 3600000), mi = static_cast<int>(rem / 60000 % 60),
              s = static_cast<int>(rem / 1000 % 60);
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02d", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), h, mi, s);
  }
  return buf;
}

/// Reads delimited text with a header row into events. Rows that cannot be
/// parsed are reported with their line number and excluded, never silently
/// dropped. A missing required column is a SchemaError.
inline CsvParseResult parse_event_csv(std::istream& in, const CsvSchema& schema = {}) {
  CsvParseResult result;
  std::vector<std::string> fields;
  std::size_t line = 0;

  std::string record_error;
  if (!detail::read_csv_record(in, schema.delimiter, fields, line, &record_error)) {
    throw SchemaError("empty input: no header row");
  }
  const auto column_of = [&](const std::string& name) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (fields[i] == name) return i;
    }
    throw SchemaError("required column '" + name + "' not found in header");
  };
  const std::size_t col_event = column_of(schema.event_id);
  const std::size_t col_case = column_of(schema.case_id);
  const std::size_t col_act = column_of(schema.activity);
  const std::size_t col_time = column_of(schema.timestamp);
  const std::size_t col_diag = column_of(schema.diag_code);
  const std::vector<std::string> header = fields;
  const std::array<std::size_t, 5> mapped = {col_event, col_case, col_act, col_time, col_diag};

  while (true) {
    record_error.clear();
    const std::size_t record_line = line + 1;
    if (!detail::read_csv_record(in, schema.delimiter, fields, line, &record_error)) break;
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (!record_error.empty()) {
      result.errors.push_back({record_line, record_error});
      continue;
    }
    if (fields.size() != header.size()) {
      result.errors.push_back({record_line, "expected " + std::to_string(header.size()) +
                                                " fields, got " + std::to_string(fields.size())});
      continue;
    }
    Event e;
    e.event_id = fields[col_event];
    e.case_id = fields[col_case];
    e.activity = fields[col_act];
    if (e.activity.empty()) {
      result.errors.push_back({record_line, "empty activity"});
      continue;
    }
    try {
      e.timestamp_ms = parse_timestamp_ms(fields[col_time]);
    } catch (const std::invalid_argument& ex) {
      result.errors.push_back({record_line, ex.what()});
      continue;
    }
    if (!fields[col_diag].empty()) e.diag_code = fields[col_diag];
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (std::find(mapped.begin(), mapped.end(), i) == mapped.end()) {
        e.extras.emplace_back(header[i], fields[i]);
      }
    }
    result.events.push_back(std::move(e));
  }
  return result;
}

inline CsvParseResult parse_event_csv_file(const std::filesystem::path& path,
                                           const CsvSchema& schema = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return parse_event_csv(in, schema);
}

inline void write_error_report(std::ostream& out, const std::vector<RowError>& errors) {
  for (const auto& e : errors) out << "line " << e.line << ": " << e.reason << "\n";
}

namespace detail {
inline void write_csv_field(std::ostream& out, const std::string& value, char delimiter) {
  const bool needs_quotes = value.find_first_of("\"\r\n") != std::string::npos ||
                            value.find(delimiter) != std::string::npos;
  if (!needs_quotes) {
    out << value;
    return;
  }
  out << '"';
  for (char c : value) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}
}  // namespace detail

/// Writes a log back out in the same format parse_event_csv reads, traces in
/// case-id order and events in trace order.
inline void write_event_csv(std::ostream& out, const EventLog& log, const CsvSchema& schema = {}) {
  const char d = schema.delimiter;
  out << schema.event_id << d << schema.case_id << d << schema.activity << d << schema.timestamp
      << d << schema.diag_code << "\n";
  for (const auto& t : log.traces) {
    for (const auto& e : t.events) {
      detail::write_csv_field(out, e.event_id, d);
      out << d;
      detail::write_csv_field(out, e.case_id, d);
      out << d;
      detail::write_csv_field(out, e.activity, d);
      out << d;
      out << format_timestamp(e.timestamp_ms) << d;
      if (e.diag_code) detail::write_csv_field(out, *e.diag_code, d);
      out << "\n";
    }
  }
}

}  // namespace fspc
