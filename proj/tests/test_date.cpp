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

#include "chronoret/error.hpp"
#include "doctest.h"

namespace chronoret {
namespace {

TEST_CASE("parse_date round-trips through format_date") {
  const DateStamp d = parse_date("2019/02/28");
  CHECK(d.year == 2019);
  CHECK(d.month == 2);
  CHECK(d.day == 28);
  CHECK(format_date(d) == "2019/02/28");
}

TEST_CASE("parse_date rejects impossible and malformed dates") {
  CHECK_THROWS_AS(parse_date("2019/02/29"), ParseError);
  CHECK_THROWS_AS(parse_date("2019/13/01"), ParseError);
  CHECK_THROWS_AS(parse_date("2019-01-01"), ParseError);
  CHECK_THROWS_AS(parse_date("2019/1/01"), ParseError);
  CHECK_THROWS_AS(parse_date(""), ParseError);
  CHECK_NOTHROW(parse_date("2020/02/29"));
}

TEST_CASE("leap years follow the Gregorian rule") {
  CHECK(is_valid_date(2000, 2, 29));
  CHECK_FALSE(is_valid_date(1900, 2, 29));
  CHECK(is_valid_date(2024, 2, 29));
  CHECK_FALSE(is_valid_date(2023, 4, 31));
}

TEST_CASE("day counts invert") {
  CHECK(to_days({1970, 1, 1}) == 0);
  CHECK(to_days({1970, 1, 2}) == 1);
  for (int64_t n : {-1000, -1, 0, 1, 59, 365, 10957, 18000}) {
    CHECK(to_days(from_days(n)) == n);
  }
  CHECK(add_days({2019, 12, 31}, 1) == DateStamp{2020, 1, 1});
  CHECK(add_days({2020, 3, 1}, -1) == DateStamp{2020, 2, 29});
}

TEST_CASE("epoch seconds map to UTC calendar dates") {
  CHECK(from_epoch_seconds(0) == DateStamp{1970, 1, 1});
  CHECK(from_epoch_seconds(86399) == DateStamp{1970, 1, 1});
  CHECK(from_epoch_seconds(86400) == DateStamp{1970, 1, 2});
  CHECK(from_epoch_seconds(-1) == DateStamp{1969, 12, 31});
  CHECK(parse_date_or_epoch("1546300800") == DateStamp{2019, 1, 1});
  CHECK(parse_date_or_epoch("2019/01/01") == DateStamp{2019, 1, 1});
  CHECK_THROWS_AS(parse_date_or_epoch("soon"), ParseError);
}

TEST_CASE("dates order chronologically") {
  CHECK(DateStamp{2019, 1, 31} < DateStamp{2019, 2, 1});
  CHECK(DateStamp{2018, 12, 31} < DateStamp{2019, 1, 1});
}

}  // namespace
}  // namespace chronoret
