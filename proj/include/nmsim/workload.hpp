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

// Seeded synthetic workloads. Network and input draws come from two
// std::mt19937_64 streams; the draw order and integer semantics are fixed in
// docs/formats.md so a seed regenerates byte-identical files everywhere.

#ifndef NMSIM_WORKLOAD_HPP_
#define NMSIM_WORKLOAD_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "nmsim/network.hpp"

namespace nmsim {

/// Integer-exact draws on top of std::mt19937_64 (whose output sequence is
/// fixed by the C++ standard).
class WorkloadRng {
 public:
  explicit WorkloadRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n) by rejection; n >= 1.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  /// True with probability p, compared on the top 53 bits of one draw.
  bool bernoulli(double p);

 private:
  std::mt19937_64 engine_;
};

struct WorkloadSpec {
  GridConfig config;
  /// Probability that a given (axon, neuron) synapse is connected.
  double density = 0.1;
  /// Input spikes per axon per tick.
  double spike_rate = 0.01;
  /// Fraction of neurons whose spikes go to the output bus.
  double output_fraction = 0.1;
  std::uint64_t seed = 1;
};

/// Grid shapes of the reference application suite.
struct ShapeInfo {
  std::string_view name;
  int grid_width;
  int grid_height;
  int axons_per_core;
  int neurons_per_core;
  std::int64_t num_ticks;
  double density;
  double spike_rate;
};

std::span<const ShapeInfo> known_shapes();

/// WorkloadSpec for a named shape (case-insensitive). Throws ConfigError if unknown.
WorkloadSpec shape_spec(std::string_view name, std::uint64_t seed = 1);

struct Workload {
  Network network;
  InputStream inputs;
};

Workload generate_workload(const WorkloadSpec& spec);

}  // namespace nmsim

#endif  // NMSIM_WORKLOAD_HPP_
