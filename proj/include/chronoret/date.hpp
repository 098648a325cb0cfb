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

#ifndef CHRONORET_DATE_HPP_
#define CHRONORET_DATE_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace chronoret {

// Calendar date rendered as "yyyy/mm/dd".
struct DateStamp {
  int year = 1970;
  int month = 1;
  int day = 1;

  friend constexpr auto operator<=>(const DateStamp&, const DateStamp&) = default;
};

bool is_valid_date(int year, int month, int day);

// Exactly ten characters "dddd/dd/dd"; throws ParseError naming the field.
DateStamp parse_date(std::string_view s);
std::string format_date(const DateStamp& d);

// Days since 1970/01/01 and back.
int64_t to_days(const DateStamp& d);
DateStamp from_days(int64_t days);

// UTC calendar date of a Unix timestamp.
DateStamp from_epoch_seconds(int64_t seconds);

// Accepts either a "yyyy/mm/dd" string or a decimal epoch-seconds string.
DateStamp parse_date_or_epoch(std::string_view s);

DateStamp add_days(const DateStamp& d, int64_t n);

}  // namespace chronoret

#endif  // CHRONORET_DATE_HPP_
