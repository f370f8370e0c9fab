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

#include "nmsim/network.hpp"

#include <string>

namespace nmsim {

namespace {

void check_bits(std::int64_t value, int bits, const char* field, int x, int y, int n) {
  if (!fits_bits(value, bits))
    throw LoadError(LoadError::Kind::bitwidth, neuron_location(x, y, n),
                    std::string(field) + " " + std::to_string(value) + " does not fit in " +
                        std::to_string(bits) + " signed bits");
}

}  // namespace

Network make_empty_network(const GridConfig& cfg) {
  cfg.validate();
  Network net;
  net.config = cfg;
  CoreTable core;
  core.axon_types.types.assign(static_cast<std::size_t>(cfg.axons_per_core), 0);
  CsramEntry entry;
  entry.weights.assign(static_cast<std::size_t>(cfg.num_weights_per_neuron), 0);
  entry.connections = BitVector(static_cast<std::size_t>(cfg.axons_per_core));
  entry.threshold = 1;
  entry.output_flag = true;
  core.neurons.assign(static_cast<std::size_t>(cfg.neurons_per_core), entry);
  net.cores.assign(static_cast<std::size_t>(cfg.num_cores()), core);
  return net;
}

std::string neuron_location(int x, int y, int neuron) {
  return "core (" + std::to_string(x) + "," + std::to_string(y) + ") neuron " +
         std::to_string(neuron);
}

void validate_network(const Network& net) {
  const GridConfig& cfg = net.config;
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw LoadError(LoadError::Kind::range, "header", e.what());
  }
  if (net.cores.size() != static_cast<std::size_t>(cfg.num_cores()))
    throw LoadError(LoadError::Kind::count_mismatch, "network",
                    "expected " + std::to_string(cfg.num_cores()) + " cores, found " +
                        std::to_string(net.cores.size()));

  for (int y = 0; y < cfg.grid_height; ++y) {
    for (int x = 0; x < cfg.grid_width; ++x) {
      const CoreTable& core = net.core(x, y);
      const std::string core_where = "core (" + std::to_string(x) + "," + std::to_string(y) + ")";
      if (core.axon_types.types.size() != static_cast<std::size_t>(cfg.axons_per_core))
        throw LoadError(LoadError::Kind::count_mismatch, core_where,
                        "expected " + std::to_string(cfg.axons_per_core) + " axon types, found " +
                            std::to_string(core.axon_types.types.size()));
      for (std::size_t a = 0; a < core.axon_types.types.size(); ++a) {
        const int t = core.axon_types.types[a];
        if (t < 0 || t >= cfg.num_weights_per_neuron)
          throw LoadError(LoadError::Kind::range, core_where + " axon " + std::to_string(a),
                          "axon type " + std::to_string(t) + " outside 0.." +
                              std::to_string(cfg.num_weights_per_neuron - 1));
      }
      if (core.neurons.size() != static_cast<std::size_t>(cfg.neurons_per_core))
        throw LoadError(LoadError::Kind::count_mismatch, core_where,
                        "expected " + std::to_string(cfg.neurons_per_core) + " neurons, found " +
                            std::to_string(core.neurons.size()));

      for (int n = 0; n < cfg.neurons_per_core; ++n) {
        const CsramEntry& e = core.neurons[static_cast<std::size_t>(n)];
        const auto where = [&] { return neuron_location(x, y, n); };
        if (e.weights.size() != static_cast<std::size_t>(cfg.num_weights_per_neuron))
          throw LoadError(LoadError::Kind::count_mismatch, where(),
                          "expected " + std::to_string(cfg.num_weights_per_neuron) +
                              " weights, found " + std::to_string(e.weights.size()));
        if (e.connections.size() != static_cast<std::size_t>(cfg.axons_per_core))
          throw LoadError(LoadError::Kind::count_mismatch, where(),
                          "connection row has " + std::to_string(e.connections.size()) +
                              " bits, expected " + std::to_string(cfg.axons_per_core));
        check_bits(e.potential, cfg.potential_bits, "potential", x, y, n);
        for (auto w : e.weights) check_bits(w, cfg.weight_bits, "weight", x, y, n);
        check_bits(e.threshold, cfg.threshold_bits, "threshold", x, y, n);
        check_bits(e.reset_potential, cfg.reset_bits, "reset potential", x, y, n);
        check_bits(e.leak, cfg.leak_bits, "leak", x, y, n);
        if (e.dest_axon < 0 || e.dest_axon >= cfg.axons_per_core)
          throw LoadError(LoadError::Kind::range, where(),
                          "destination axon " + std::to_string(e.dest_axon) + " out of range");
        if (e.dest_tick_offset < 1 || e.dest_tick_offset > cfg.max_tick_offset)
          throw LoadError(LoadError::Kind::range, where(),
                          "destination tick offset " + std::to_string(e.dest_tick_offset) +
                              " outside 1.." + std::to_string(cfg.max_tick_offset));
        if (!e.output_flag) {
          const long long dx = static_cast<long long>(x) + e.dest_core_dx;
          const long long dy = static_cast<long long>(y) + e.dest_core_dy;
          if (dx < 0 || dy < 0 || dx >= cfg.grid_width || dy >= cfg.grid_height)
            throw LoadError(LoadError::Kind::destination, where(),
                            "destination core offset (" + std::to_string(e.dest_core_dx) + "," +
                                std::to_string(e.dest_core_dy) + ") leaves the grid");
        }
      }
    }
  }
}

void validate_inputs(const InputStream& inputs, const GridConfig& cfg) {
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const InputSpike& s = inputs[i];
    const auto where = [i] { return "input record " + std::to_string(i); };
    if (s.arrival_tick < 1 || s.arrival_tick >= cfg.num_ticks)
      throw LoadError(LoadError::Kind::range, where(),
                      "arrival tick " + std::to_string(s.arrival_tick) + " outside 1.." +
                          std::to_string(cfg.num_ticks - 1));
    if (!cfg.contains(s.core_x, s.core_y))
      throw LoadError(LoadError::Kind::destination, where(), "core outside grid");
    if (s.axon < 0 || s.axon >= cfg.axons_per_core)
      throw LoadError(LoadError::Kind::range, where(),
                      "axon " + std::to_string(s.axon) + " out of range");
  }
}

}  // namespace nmsim
