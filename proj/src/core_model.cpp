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

#include "nmsim/core_model.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace nmsim {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid grid config: " + what);
}

void require_bits(int bits, const char* name) {
  require(bits >= 2 && bits <= 64, std::string(name) + " must be in 2..64, got " + std::to_string(bits));
}

}  // namespace

void GridConfig::validate() const {
  require(grid_width >= 1, "grid_width must be >= 1");
  require(grid_height >= 1, "grid_height must be >= 1");
  require(axons_per_core >= 1, "axons_per_core must be >= 1");
  require(neurons_per_core >= 1, "neurons_per_core must be >= 1");
  require(num_weights_per_neuron >= 1, "num_weights_per_neuron must be >= 1");
  require(max_tick_offset >= 1, "max_tick_offset must be >= 1");
  require(num_ticks >= 0, "num_ticks must be >= 0");
  require_bits(potential_bits, "potential_bits");
  require_bits(weight_bits, "weight_bits");
  require_bits(leak_bits, "leak_bits");
  require_bits(threshold_bits, "threshold_bits");
  require_bits(reset_bits, "reset_bits");
}

std::int64_t min_signed(int bits) noexcept {
  return static_cast<std::int64_t>(-(Wide{1} << (bits - 1)));
}

std::int64_t max_signed(int bits) noexcept {
  return static_cast<std::int64_t>((Wide{1} << (bits - 1)) - 1);
}

bool fits_bits(std::int64_t value, int bits) noexcept {
  return value >= min_signed(bits) && value <= max_signed(bits);
}

std::int64_t saturate(Wide value, int bits) {
  const Wide lo = min_signed(bits);
  const Wide hi = max_signed(bits);
  return static_cast<std::int64_t>(std::clamp(value, lo, hi));
}

Wide integrate(const CsramEntry& entry, const AxonTypes& axon_types, const BitVector& spikes) {
  Wide acc = entry.potential;
  for (std::size_t axon = 0; axon < spikes.size(); ++axon) {
    if (spikes.test(axon) && entry.connections.test(axon))
      acc += entry.weights[static_cast<std::size_t>(axon_types.types[axon])];
  }
  return acc;
}

NeuronUpdate lif_update(Wide accumulated, std::int64_t leak, std::int64_t threshold,
                        std::int64_t reset_potential, int potential_bits) {
  const Wide v = accumulated + leak;
  if (v >= threshold) return {saturate(reset_potential, potential_bits), true};
  return {saturate(v, potential_bits), false};
}

NeuronUpdate leak_threshold_reset(Wide accumulated, const CsramEntry& entry,
                                  const GridConfig& cfg) {
  return lif_update(accumulated, entry.leak, entry.threshold, entry.reset_potential,
                    cfg.potential_bits);
}

Packet make_packet(const CsramEntry& entry) {
  if (entry.output_flag)
    throw std::invalid_argument("make_packet: output-flagged spikes do not enter the router");
  return Packet{entry.dest_core_dx, entry.dest_core_dy, entry.dest_axon, entry.dest_tick_offset};
}

}  // namespace nmsim
