// Copyright 2026 The Chronoret Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chronoret/date.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

#include "chronoret/error.hpp"

namespace chronoret {
namespace {

int read_digits(std::string_view s, std::size_t pos, std::size_t len,
                const char* field) {
  int value = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    const char c = s[i];
    if (c < '0' || c > '9') {
      throw ParseError("invalid " + std::string(field) + " in date '" +
                       std::string(s) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

bool is_valid_date(int year, int month, int day) {
  const std::chrono::year_month_day ymd{std::chrono::year{year},
                                        std::chrono::month{static_cast<unsigned>(month)},
                                        std::chrono::day{static_cast<unsigned>(day)}};
  return month >= 1 && month <= 12 && day >= 1 && ymd.ok();
}

DateStamp parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '/' || s[7] != '/') {
    throw ParseError("malformed date '" + std::string(s) +
                     "': expected yyyy/mm/dd");
  }
  DateStamp d;
  d.year = read_digits(s, 0, 4, "year");
  d.month = read_digits(s, 5, 2, "month");
  d.day = read_digits(s, 8, 2, "day");
  if (d.month < 1 || d.month > 12) {
    throw ParseError("invalid month in date '" + std::string(s) + "'");
  }
  if (!is_valid_date(d.year, d.month, d.day)) {
    throw ParseError("invalid day in date '" + std::string(s) + "'");
  }
  return d;
}

std::string format_date(const DateStamp& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d/%02d/%02d", d.year, d.month, d.day);
  return buf;
}

int64_t to_days(const DateStamp& d) {
  const std::chrono::year_month_day ymd{std::chrono::year{d.year},
                                        std::chrono::month{static_cast<unsigned>(d.month)},
                                        std::chrono::day{static_cast<unsigned>(d.day)}};
  return std::chrono::sys_days{ymd}.time_since_epoch().count();
}

DateStamp from_days(int64_t days) {
  const std::chrono::year_month_day ymd{
      std::chrono::sys_days{std::chrono::days{days}}};
  return DateStamp{static_cast<int>(ymd.year()),
                   static_cast<int>(static_cast<unsigned>(ymd.month())),
                   static_cast<int>(static_cast<unsigned>(ymd.day()))};
}

DateStamp from_epoch_seconds(int64_t seconds) {
  int64_t days = seconds / 86400;
  if (seconds % 86400 < 0) --days;
  return from_days(days);
}

DateStamp parse_date_or_epoch(std::string_view s) {
  if (s.find('/') != std::string_view::npos) return parse_date(s);
  int64_t seconds = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seconds);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("timestamp '" + std::string(s) +
                     "' is neither yyyy/mm/dd nor epoch seconds");
  }
  return from_epoch_seconds(seconds);
}

DateStamp add_days(const DateStamp& d, int64_t n) { return from_days(to_days(d) + n); }

}  // namespace chronoret
