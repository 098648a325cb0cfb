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

#include <algorithm>
#include <numeric>

#include "chronoret/error.hpp"
#include "chronoret/metrics.hpp"
#include "chronoret/rng.hpp"
#include "doctest.h"

namespace chronoret {
namespace {

using Ranks = std::vector<std::size_t>;

TEST_CASE("pessimistic ranks") {
  CHECK(rank_of_label(std::vector<double>{0.9, 0.1, 0.5}, 0) == 1);
  CHECK(rank_of_label(std::vector<double>{0.5, 0.5}, 0) == 2);
  CHECK(rank_of_label(std::vector<double>{0.1, 0.2, 0.9, 0.4}, 3) == 2);
  CHECK(rank_of_label(std::vector<double>{0.1, 0.2, 0.9, 0.4}, 0) == 4);
  CHECK(rank_of_label(std::vector<double>(7, 1.0), 3) == 7);
  CHECK_THROWS_AS(rank_of_label(std::vector<double>{1.0}, 1), ConfigError);
}

TEST_CASE("recall at one") {
  CHECK(recall_at_1(Ranks{1, 1, 2, 5}) == 0.5);
  CHECK(recall_at_1(Ranks{1, 1, 1}) == 1.0);
  CHECK(recall_at_1(Ranks{2, 3}) == 0.0);
  CHECK_THROWS_AS(recall_at_1(Ranks{}), ConfigError);
  CHECK_THROWS_AS(recall_at_1(Ranks{0}), ConfigError);
}

TEST_CASE("mean reciprocal rank") {
  CHECK(mean_reciprocal_rank(Ranks{1, 2}) == 0.75);
  CHECK(mean_reciprocal_rank(Ranks{4}) == 0.25);
  CHECK(mean_reciprocal_rank(Ranks{1, 1, 1}) == 1.0);
  CHECK_THROWS_AS(mean_reciprocal_rank(Ranks{}), ConfigError);
}

// Full sort with the label placed after every equal-scoring distractor.
std::size_t rank_by_sorting(const std::vector<double>& s, std::size_t label) {
  std::vector<std::size_t> idx(s.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (s[a] != s[b]) return s[a] > s[b];
    if ((a == label) != (b == label)) return b == label;
    return a < b;
  });
  return static_cast<std::size_t>(std::find(idx.begin(), idx.end(), label) - idx.begin()) + 1;
}

TEST_CASE("rank counting agrees with a full sort") {
  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n_inst = 1 + rng.index(10);
    Ranks fast, slow;
    for (std::size_t i = 0; i < n_inst; ++i) {
      const std::size_t c = 1 + rng.index(20);
      std::vector<double> s(c);
      // Coarse values so ties are common.
      for (double& x : s) x = static_cast<double>(rng.uniform_int(0, 5));
      const std::size_t label = rng.index(c);
      fast.push_back(rank_of_label(s, label));
      slow.push_back(rank_by_sorting(s, label));
    }
    CHECK(fast == slow);
    CHECK(recall_at_1(fast) == recall_at_1(slow));
    CHECK(mean_reciprocal_rank(fast) == mean_reciprocal_rank(slow));
    CHECK(recall_at_1(fast) <= mean_reciprocal_rank(fast));
    CHECK(mean_reciprocal_rank(fast) <= 1.0);
  }
}

TEST_CASE("raising a distractor to the label's score never helps") {
  Rng rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t c = 2 + rng.index(15);
    std::vector<double> s(c);
    for (double& x : s) x = rng.uniform(0, 1);
    const std::size_t label = rng.index(c);
    const std::size_t before = rank_of_label(s, label);
    std::size_t j = rng.index(c);
    if (j == label) j = (j + 1) % c;
    s[j] = s[label];
    CHECK(rank_of_label(s, label) >= before);
  }
}

}  // namespace
}  // namespace chronoret
