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

// Domain types and the single-neuron LIF datapath shared by both engines.

#ifndef NMSIM_CORE_MODEL_HPP_
#define NMSIM_CORE_MODEL_HPP_

#include <compare>
#include <cstdint>
#include <vector>

#include "nmsim/bitvector.hpp"
#include "nmsim/errors.hpp"

namespace nmsim {

/// Accumulator type. Sums of up to 2^32 terms of 64-bit weights cannot
/// overflow it, so accumulation never saturates before the final store.
using Wide = __int128;

/// Static architecture description of the whole grid.
struct GridConfig {
  int grid_width = 1;
  int grid_height = 1;
  int axons_per_core = 1;
  int neurons_per_core = 1;
  int num_weights_per_neuron = 4;
  /// Largest delay (in ticks) a spike may be scheduled into the future.
  int max_tick_offset = 16;
  int potential_bits = 16;
  int weight_bits = 9;
  int leak_bits = 9;
  int threshold_bits = 16;
  int reset_bits = 16;
  std::int64_t num_ticks = 0;

  int num_cores() const noexcept { return grid_width * grid_height; }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < grid_width && y < grid_height;
  }

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

/// Per-neuron parameter record held in core SRAM.
struct CsramEntry {
  std::int64_t potential = 0;
  std::vector<std::int64_t> weights;
  BitVector connections;
  std::int64_t threshold = 1;
  std::int64_t reset_potential = 0;
  std::int64_t leak = 0;
  int dest_core_dx = 0;
  int dest_core_dy = 0;
  int dest_axon = 0;
  int dest_tick_offset = 1;
  /// Spike goes to the output bus instead of the router.
  bool output_flag = false;

  friend bool operator==(const CsramEntry&, const CsramEntry&) = default;
};

/// Weight-set selector of each axon of one core.
struct AxonTypes {
  std::vector<int> types;

  friend bool operator==(const AxonTypes&, const AxonTypes&) = default;
};

struct Packet {
  int dx = 0;
  int dy = 0;
  int dest_axon = 0;
  int dest_tick_offset = 1;

  friend bool operator==(const Packet&, const Packet&) = default;
};

/// Spike that left the grid through the output bus.
struct SpikeEvent {
  std::int64_t tick = 0;
  int core_x = 0;
  int core_y = 0;
  int neuron = 0;

  friend bool operator==(const SpikeEvent&, const SpikeEvent&) = default;
};

/// Canonical output order: (tick, core_y, core_x, neuron).
inline std::strong_ordering canonical_compare(const SpikeEvent& a, const SpikeEvent& b) {
  if (auto c = a.tick <=> b.tick; c != 0) return c;
  if (auto c = a.core_y <=> b.core_y; c != 0) return c;
  if (auto c = a.core_x <=> b.core_x; c != 0) return c;
  return a.neuron <=> b.neuron;
}

struct CanonicalLess {
  bool operator()(const SpikeEvent& a, const SpikeEvent& b) const {
    return canonical_compare(a, b) < 0;
  }
};

std::int64_t min_signed(int bits) noexcept;
std::int64_t max_signed(int bits) noexcept;
bool fits_bits(std::int64_t value, int bits) noexcept;

/// Clamps value into the signed range of a `bits`-wide integer.
std::int64_t saturate(Wide value, int bits);

/// potential + sum over connected, spiking axons of weights[type(axon)].
/// No intermediate clamping.
Wide integrate(const CsramEntry& entry, const AxonTypes& axon_types, const BitVector& spikes);

struct NeuronUpdate {
  std::int64_t potential = 0;
  bool spiked = false;

  friend bool operator==(const NeuronUpdate&, const NeuronUpdate&) = default;
};

/// Leak, threshold (v >= threshold fires) and reset on an accumulated value.
NeuronUpdate lif_update(Wide accumulated, std::int64_t leak, std::int64_t threshold,
                        std::int64_t reset_potential, int potential_bits);

NeuronUpdate leak_threshold_reset(Wide accumulated, const CsramEntry& entry,
                                  const GridConfig& cfg);

/// Throws std::invalid_argument for output-flagged entries.
Packet make_packet(const CsramEntry& entry);

}  // namespace nmsim

#endif  // NMSIM_CORE_MODEL_HPP_
