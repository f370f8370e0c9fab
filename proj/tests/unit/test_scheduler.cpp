// Copyright 2026 The nmsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nmsim/scheduler.hpp"
#include "nmsim/workload.hpp"

using namespace nmsim;

namespace {

BitVector bits(std::vector<int> v) {
  BitVector b(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) b.set(i, v[i] != 0);
  return b;
}

}  // namespace

TEST_CASE("advance clears the old row then moves the index") {
  // Two rows of two axons, as drawn for a ring of depth two.
  SchedulerSram s({bits({1, 0}), bits({0, 1})}, 0);
  s.advance();
  CHECK(s.curr_word_index() == 1);
  CHECK(s.row(0) == bits({0, 0}));
  CHECK(s.row(1) == bits({0, 1}));
}

TEST_CASE("advance wraps the index") {
  SchedulerSram s(5, 3);
  for (int i = 0; i < 4; ++i) s.advance();
  CHECK(s.curr_word_index() == 4);
  s.advance();
  CHECK(s.curr_word_index() == 0);
}

TEST_CASE("advance on an empty ring only moves the index") {
  SchedulerSram s(3, 4);
  s.advance();
  CHECK(s.empty());
  CHECK(s.curr_word_index() == 1);
}

TEST_CASE("deliver writes tick_offset rows ahead") {
  SUBCASE("from index 0") {
    SchedulerSram s(2, 8);
    s.deliver(3, 1);
    CHECK(s.row(1).test(3));
    CHECK(s.row(1).count() == 1);
    CHECK(s.row(0).none());
  }
  SUBCASE("wrapping from index 1") {
    SchedulerSram s(2, 8);
    s.advance();
    s.deliver(3, 1);
    CHECK(s.row(0).test(3));
    CHECK(s.row(1).none());
  }
  SUBCASE("duplicate delivery is idempotent") {
    SchedulerSram once(4, 8), twice(4, 8);
    once.deliver(5, 2);
    twice.deliver(5, 2);
    twice.deliver(5, 2);
    CHECK(once == twice);
  }
}

TEST_CASE("deliver rejects bad offsets and axons") {
  SchedulerSram s = SchedulerSram::for_config([] {
    GridConfig c;
    c.axons_per_core = 4;
    c.max_tick_offset = 3;
    return c;
  }());
  CHECK(s.depth() == 4);
  CHECK_THROWS_AS(s.deliver(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(s.deliver(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(s.deliver(-1, 1), std::invalid_argument);
  CHECK_THROWS_AS(s.deliver(4, 1), std::invalid_argument);
  CHECK_NOTHROW(s.deliver(3, 3));
}

TEST_CASE("current_spikes reads the current row") {
  SchedulerSram s(3, 4);
  CHECK(s.current_spikes().none());
  s.deliver(2, 1);
  s.advance();
  CHECK(s.current_spikes() == bits({0, 0, 1, 0}));
  CHECK(s.current_spikes() == s.current_spikes());
}

TEST_CASE("a spike at offset k shows up after exactly k advances") {
  for (int max_offset = 1; max_offset <= 16; ++max_offset) {
    for (int k = 1; k <= max_offset; ++k) {
      for (int start = 0; start <= max_offset; ++start) {
        SchedulerSram s(max_offset + 1, 3);
        for (int i = 0; i < start; ++i) s.advance();
        s.deliver(1, k);
        for (int step = 1; step <= max_offset + 2; ++step) {
          s.advance();
          CHECK(s.current_spikes().test(1) == (step == k));
        }
      }
    }
  }
}

TEST_CASE("delivery order does not matter") {
  WorkloadRng rng(3);
  std::mt19937_64 shuffle_rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int depth = static_cast<int>(rng.between(2, 9));
    const int axons = static_cast<int>(rng.between(1, 80));
    std::vector<std::pair<int, int>> writes;
    for (int i = 0; i < 40; ++i)
      writes.emplace_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(axons))),
                          static_cast<int>(rng.between(1, depth - 1)));
    SchedulerSram a(depth, axons), b(depth, axons);
    for (auto [axon, off] : writes) a.deliver(axon, off);
    std::shuffle(writes.begin(), writes.end(), shuffle_rng);
    for (auto [axon, off] : writes) b.deliver(axon, off);
    CHECK(a == b);
  }
}

TEST_CASE("depth idle advances empty the ring") {
  WorkloadRng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const int depth = static_cast<int>(rng.between(2, 17));
    std::vector<BitVector> rows;
    for (int r = 0; r < depth; ++r) {
      BitVector row(20);
      for (std::size_t a = 0; a < 20; ++a) row.set(a, rng.bernoulli(0.5));
      rows.push_back(row);
    }
    SchedulerSram s(rows, static_cast<int>(rng.below(static_cast<std::uint64_t>(depth))));
    for (int i = 0; i < depth; ++i) s.advance();
    CHECK(s.empty());
  }
}

TEST_CASE("restoring constructor validates shape") {
  CHECK_THROWS_AS(SchedulerSram({BitVector(2)}, 0), std::invalid_argument);
  CHECK_THROWS_AS(SchedulerSram({BitVector(2), BitVector(3)}, 0), std::invalid_argument);
  CHECK_THROWS_AS(SchedulerSram({BitVector(2), BitVector(2)}, 2), std::invalid_argument);
}
