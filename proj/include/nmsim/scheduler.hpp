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

#ifndef NMSIM_SCHEDULER_HPP_
#define NMSIM_SCHEDULER_HPP_

#include <vector>

#include "nmsim/bitvector.hpp"
#include "nmsim/core_model.hpp"

namespace nmsim {

/// Per-core ring buffer of future axon input.
///
/// Row curr_word_index holds the spikes consumed by the current tick; row
/// (curr_word_index + k) % depth holds spikes for k ticks ahead. A grid with
/// max_tick_offset M uses depth M + 1 so that a spike scheduled M ticks out
/// never shares a row with the one cleared on the next advance.
class SchedulerSram {
 public:
  SchedulerSram(int depth, int axons);
  /// Restores a ring from explicit rows; all rows must share one length.
  SchedulerSram(std::vector<BitVector> rows, int curr_word_index);

  static SchedulerSram for_config(const GridConfig& cfg) {
    return SchedulerSram(cfg.max_tick_offset + 1, cfg.axons_per_core);
  }

  int depth() const noexcept { return static_cast<int>(rows_.size()); }
  int axons() const noexcept { return axons_; }
  int max_offset() const noexcept { return depth() - 1; }
  int curr_word_index() const noexcept { return curr_; }

  /// Clears the current row, then moves the index one row forward.
  void advance();

  /// Sets the axon bit tick_offset rows ahead of the current one.
  /// Rejects tick_offset outside 1..max_offset() and out-of-range axons.
  void deliver(int axon, int tick_offset);

  BitVector current_spikes() const { return rows_[curr_]; }
  const BitVector& row(int r) const { return rows_[r]; }
  const std::vector<BitVector>& rows() const noexcept { return rows_; }

  bool empty() const noexcept;

  friend bool operator==(const SchedulerSram&, const SchedulerSram&) = default;

 private:
  std::vector<BitVector> rows_;
  int axons_ = 0;
  int curr_ = 0;
};

}  // namespace nmsim

#endif  // NMSIM_SCHEDULER_HPP_
