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

// Small hand-built networks shared by the test suites.

#ifndef NMSIM_TESTS_SUPPORT_FIXTURES_HPP_
#define NMSIM_TESTS_SUPPORT_FIXTURES_HPP_

#include <cstdint>

#include "nmsim/network.hpp"
#include "nmsim/workload.hpp"

namespace nmsim::testing {

/// 1x1 grid, one axon, one neuron: weight 1 on axon 0, threshold 1, output
/// flagged.
inline Network single_neuron_network(std::int64_t ticks = 4) {
  GridConfig cfg;
  cfg.axons_per_core = 1;
  cfg.neurons_per_core = 1;
  cfg.max_tick_offset = 2;
  cfg.num_ticks = ticks;
  Network net = make_empty_network(cfg);
  CsramEntry& e = net.cores[0].neurons[0];
  e.weights = {1, 0, 0, 0};
  e.connections.set(0);
  e.threshold = 1;
  e.output_flag = true;
  return net;
}

/// 1 wide, 2 high. Core (0,0)'s neuron relays to axon 0 of core (0,1) with
/// delay 1; core (0,1)'s neuron is output flagged.
inline Network relay_network(std::int64_t ticks = 5) {
  GridConfig cfg;
  cfg.grid_width = 1;
  cfg.grid_height = 2;
  cfg.axons_per_core = 1;
  cfg.neurons_per_core = 1;
  cfg.max_tick_offset = 2;
  cfg.num_ticks = ticks;
  Network net = make_empty_network(cfg);
  for (CoreTable& core : net.cores) {
    CsramEntry& e = core.neurons[0];
    e.weights = {1, 0, 0, 0};
    e.connections.set(0);
    e.threshold = 1;
  }
  CsramEntry& src = net.cores[0].neurons[0];
  src.output_flag = false;
  src.dest_core_dx = 0;
  src.dest_core_dy = 1;
  src.dest_axon = 0;
  src.dest_tick_offset = 1;
  net.cores[1].neurons[0].output_flag = true;
  return net;
}

/// Stimulus injected during tick 0, i.e. arriving at tick 1.
inline InputStream relay_inputs() { return {InputSpike{1, 0, 0, 0}}; }

/// Random network of at most 2x2 cores and 8 axons/neurons with narrow
/// bitwidths, so saturation and negative thresholds show up often.
inline Workload random_tiny_workload(std::uint64_t seed, std::int64_t ticks = 20) {
  WorkloadRng rng(seed);
  GridConfig cfg;
  cfg.grid_width = static_cast<int>(rng.between(1, 2));
  cfg.grid_height = static_cast<int>(rng.between(1, 2));
  cfg.axons_per_core = static_cast<int>(rng.between(1, 8));
  cfg.neurons_per_core = static_cast<int>(rng.between(1, 8));
  cfg.num_weights_per_neuron = static_cast<int>(rng.between(1, 4));
  cfg.max_tick_offset = static_cast<int>(rng.between(1, 4));
  cfg.potential_bits = static_cast<int>(rng.between(2, 8));
  cfg.weight_bits = static_cast<int>(rng.between(2, 8));
  cfg.leak_bits = static_cast<int>(rng.between(2, 8));
  cfg.threshold_bits = static_cast<int>(rng.between(2, 8));
  cfg.reset_bits = static_cast<int>(rng.between(2, 8));
  cfg.num_ticks = ticks;

  static constexpr double kDensities[] = {0.0, 0.3, 0.7, 1.0};
  static constexpr double kRates[] = {0.0, 0.1, 0.3, 0.6};
  const double density = kDensities[rng.below(4)];
  const double rate = kRates[rng.below(4)];

  Workload w;
  w.network.config = cfg;
  const auto draw = [&](int bits) { return rng.between(min_signed(bits), max_signed(bits)); };
  for (int y = 0; y < cfg.grid_height; ++y) {
    for (int x = 0; x < cfg.grid_width; ++x) {
      CoreTable core;
      for (int a = 0; a < cfg.axons_per_core; ++a)
        core.axon_types.types.push_back(
            static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.num_weights_per_neuron))));
      for (int n = 0; n < cfg.neurons_per_core; ++n) {
        CsramEntry e;
        e.potential = draw(cfg.potential_bits);
        for (int k = 0; k < cfg.num_weights_per_neuron; ++k) e.weights.push_back(draw(cfg.weight_bits));
        e.connections = BitVector(static_cast<std::size_t>(cfg.axons_per_core));
        for (int a = 0; a < cfg.axons_per_core; ++a)
          if (rng.bernoulli(density)) e.connections.set(static_cast<std::size_t>(a));
        e.threshold = draw(cfg.threshold_bits);
        e.reset_potential = draw(cfg.reset_bits);
        e.leak = draw(cfg.leak_bits);
        e.output_flag = rng.bernoulli(0.3);
        const int dest = static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.num_cores())));
        e.dest_core_dx = dest % cfg.grid_width - x;
        e.dest_core_dy = dest / cfg.grid_width - y;
        e.dest_axon = static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.axons_per_core)));
        e.dest_tick_offset = static_cast<int>(rng.between(1, cfg.max_tick_offset));
        core.neurons.push_back(std::move(e));
      }
      w.network.cores.push_back(std::move(core));
    }
  }
  for (std::int64_t t = 1; t < ticks; ++t)
    for (int y = 0; y < cfg.grid_height; ++y)
      for (int x = 0; x < cfg.grid_width; ++x)
        for (int a = 0; a < cfg.axons_per_core; ++a)
          if (rng.bernoulli(rate)) w.inputs.push_back(InputSpike{t, x, y, a});
  return w;
}

}  // namespace nmsim::testing

#endif  // NMSIM_TESTS_SUPPORT_FIXTURES_HPP_
