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

#ifndef NMSIM_NETWORK_HPP_
#define NMSIM_NETWORK_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "nmsim/core_model.hpp"

namespace nmsim {

struct CoreTable {
  AxonTypes axon_types;
  std::vector<CsramEntry> neurons;

  friend bool operator==(const CoreTable&, const CoreTable&) = default;
};

/// Configured grid: one CoreTable per core, row-major (index y * width + x).
struct Network {
  GridConfig config;
  std::vector<CoreTable> cores;

  const CoreTable& core(int x, int y) const { return cores[core_index(x, y)]; }
  std::size_t core_index(int x, int y) const {
    return static_cast<std::size_t>(y) * config.grid_width + x;
  }

  friend bool operator==(const Network&, const Network&) = default;
};

/// A network with every parameter zero: no connections, zero leak, threshold
/// 1, every neuron output-flagged. Never spikes.
Network make_empty_network(const GridConfig& cfg);

/// External spike that becomes visible to the neuron phase of arrival_tick.
struct InputSpike {
  std::int64_t arrival_tick = 0;
  int core_x = 0;
  int core_y = 0;
  int axon = 0;

  friend bool operator==(const InputSpike&, const InputSpike&) = default;
};

using InputStream = std::vector<InputSpike>;

std::string neuron_location(int x, int y, int neuron);

/// Checks counts, bitwidths, axon types and destinations. Throws LoadError
/// with the offending core/neuron as location.
void validate_network(const Network& net);

/// Throws LoadError for inputs outside the grid or the 1 <= tick < num_ticks
/// window.
void validate_inputs(const InputStream& inputs, const GridConfig& cfg);

}  // namespace nmsim

#endif  // NMSIM_NETWORK_HPP_
