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

#include "nmsim/workload.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

namespace nmsim {

namespace {

constexpr std::uint64_t kInputStreamSalt = 0x9E3779B97F4A7C15ULL;

constexpr std::array<ShapeInfo, 8> kShapes{{
    {"MNIST-12c", 4, 3, 256, 256, 10010, 0.1, 0.01},
    {"MNIST-128c", 8, 16, 256, 256, 10010, 0.1, 0.01},
    {"MNIST-512c", 16, 32, 256, 256, 10010, 0.1, 0.01},
    {"VMM-32x32", 7, 3, 256, 256, 788, 0.1, 0.01},
    {"VMM-50x50", 9, 5, 512, 256, 889, 0.1, 0.01},
    {"VMM-60x60", 17, 3, 512, 256, 1095, 0.1, 0.01},
    {"CIFAR10", 6, 6, 256, 256, 10010, 0.1, 0.01},
    {"TrueNorth-Ref", 64, 64, 256, 256, 500, 0.0, 0.0},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ConfigError(std::string(what) + " must be in [0, 1]");
}

}  // namespace

std::uint64_t WorkloadRng::below(std::uint64_t n) {
  // Reject the low 2^64 mod n values so every residue is equally likely.
  const std::uint64_t floor = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = next();
    if (x >= floor) return x % n;
  }
}

std::int64_t WorkloadRng::between(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(next());
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + below(span + 1));
}

bool WorkloadRng::bernoulli(double p) {
  // p * 2^53 is exact in binary floating point; truncation is well defined.
  const auto cutoff = static_cast<std::uint64_t>(std::ldexp(p, 53));
  return (next() >> 11) < cutoff;
}

std::span<const ShapeInfo> known_shapes() { return kShapes; }

WorkloadSpec shape_spec(std::string_view name, std::uint64_t seed) {
  for (const ShapeInfo& s : kShapes) {
    if (!iequals(s.name, name)) continue;
    WorkloadSpec spec;
    spec.config.grid_width = s.grid_width;
    spec.config.grid_height = s.grid_height;
    spec.config.axons_per_core = s.axons_per_core;
    spec.config.neurons_per_core = s.neurons_per_core;
    spec.config.num_ticks = s.num_ticks;
    spec.density = s.density;
    spec.spike_rate = s.spike_rate;
    spec.seed = seed;
    return spec;
  }
  throw ConfigError("unknown workload shape '" + std::string(name) + "'");
}

Workload generate_workload(const WorkloadSpec& spec) {
  const GridConfig& cfg = spec.config;
  cfg.validate();
  check_probability(spec.density, "density");
  check_probability(spec.spike_rate, "spike rate");
  check_probability(spec.output_fraction, "output fraction");

  const std::int64_t weight_bound = std::min<std::int64_t>(max_signed(cfg.weight_bits), 8);
  const std::int64_t threshold_bound = std::min<std::int64_t>(max_signed(cfg.threshold_bits), 32);
  const std::int64_t leak_bound = std::min<std::int64_t>(max_signed(cfg.leak_bits), 2);
  const auto cores = static_cast<std::uint64_t>(cfg.num_cores());

  Workload w;
  w.network.config = cfg;
  w.network.cores.resize(cores);
  WorkloadRng rng(spec.seed);

  for (int y = 0; y < cfg.grid_height; ++y) {
    for (int x = 0; x < cfg.grid_width; ++x) {
      CoreTable& core = w.network.cores[w.network.core_index(x, y)];
      core.axon_types.types.resize(static_cast<std::size_t>(cfg.axons_per_core));
      for (int& t : core.axon_types.types)
        t = static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.num_weights_per_neuron)));

      core.neurons.resize(static_cast<std::size_t>(cfg.neurons_per_core));
      for (CsramEntry& e : core.neurons) {
        e.weights.resize(static_cast<std::size_t>(cfg.num_weights_per_neuron));
        for (auto& wt : e.weights) wt = rng.between(-weight_bound, weight_bound);
        e.threshold = rng.between(1, threshold_bound);
        e.leak = rng.between(-leak_bound, 0);
        e.reset_potential = 0;
        e.potential = 0;
        e.connections = BitVector(static_cast<std::size_t>(cfg.axons_per_core));
        if (spec.density >= 1.0) {
          for (int a = 0; a < cfg.axons_per_core; ++a) e.connections.set(static_cast<std::size_t>(a));
        } else if (spec.density > 0.0) {
          for (int a = 0; a < cfg.axons_per_core; ++a)
            if (rng.bernoulli(spec.density)) e.connections.set(static_cast<std::size_t>(a));
        }
        e.output_flag = rng.bernoulli(spec.output_fraction);
        const auto dest = static_cast<int>(rng.below(cores));
        e.dest_core_dx = dest % cfg.grid_width - x;
        e.dest_core_dy = dest / cfg.grid_width - y;
        e.dest_axon = static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.axons_per_core)));
        e.dest_tick_offset = static_cast<int>(rng.between(1, cfg.max_tick_offset));
      }
    }
  }

  if (spec.spike_rate > 0.0) {
    WorkloadRng input_rng(spec.seed ^ kInputStreamSalt);
    for (std::int64_t t = 1; t < cfg.num_ticks; ++t)
      for (int y = 0; y < cfg.grid_height; ++y)
        for (int x = 0; x < cfg.grid_width; ++x)
          for (int a = 0; a < cfg.axons_per_core; ++a)
            if (input_rng.bernoulli(spec.spike_rate)) w.inputs.push_back(InputSpike{t, x, y, a});
  }
  return w;
}

}  // namespace nmsim
