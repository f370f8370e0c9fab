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

#include "nmsim/scheduler.hpp"

#include <stdexcept>
#include <string>

namespace nmsim {

SchedulerSram::SchedulerSram(int depth, int axons) : axons_(axons) {
  if (depth < 2) throw std::invalid_argument("scheduler depth must be >= 2");
  if (axons < 1) throw std::invalid_argument("scheduler needs at least one axon");
  rows_.assign(static_cast<std::size_t>(depth), BitVector(static_cast<std::size_t>(axons)));
}

SchedulerSram::SchedulerSram(std::vector<BitVector> rows, int curr_word_index)
    : rows_(std::move(rows)), curr_(curr_word_index) {
  if (rows_.size() < 2) throw std::invalid_argument("scheduler depth must be >= 2");
  axons_ = static_cast<int>(rows_.front().size());
  if (axons_ < 1) throw std::invalid_argument("scheduler needs at least one axon");
  for (const auto& r : rows_)
    if (static_cast<int>(r.size()) != axons_)
      throw std::invalid_argument("scheduler rows must share one length");
  if (curr_ < 0 || curr_ >= depth())
    throw std::invalid_argument("scheduler index out of range");
}

void SchedulerSram::advance() {
  rows_[curr_].reset();
  curr_ = (curr_ + 1) % depth();
}

void SchedulerSram::deliver(int axon, int tick_offset) {
  if (axon < 0 || axon >= axons_)
    throw std::invalid_argument("deliver: axon " + std::to_string(axon) + " out of range");
  if (tick_offset < 1 || tick_offset > max_offset())
    throw std::invalid_argument("deliver: tick offset " + std::to_string(tick_offset) +
                                " outside 1.." + std::to_string(max_offset()));
  rows_[(curr_ + tick_offset) % depth()].set(static_cast<std::size_t>(axon));
}

bool SchedulerSram::empty() const noexcept {
  for (const auto& r : rows_)
    if (!r.none()) return false;
  return true;
}

}  // namespace nmsim
