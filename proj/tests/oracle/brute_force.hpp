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

// Naive reference model of one tick, written without any engine code. It
// keeps pending input as a map from absolute arrival tick to per-core axon
// bits instead of a ring buffer, and sums synapses axon by axon.

#ifndef NMSIM_TESTS_ORACLE_BRUTE_FORCE_HPP_
#define NMSIM_TESTS_ORACLE_BRUTE_FORCE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nmsim/engine_parallel.hpp"
#include "nmsim/engine_serial.hpp"
#include "nmsim/network.hpp"

namespace nmsim::oracle {

struct TraceState {
  const Network* net = nullptr;
  const InputStream* inputs = nullptr;
  std::vector<std::vector<std::int64_t>> potentials;             // [core][neuron]
  std::map<std::int64_t, std::vector<std::vector<bool>>> pending;  // tick -> [core][axon]
  std::vector<SpikeEvent> outputs;
  std::int64_t tick = 0;
};

TraceState initial_state(const Network& net, const InputStream& inputs);

void brute_force_tick(TraceState& s);

/// Full state after a completed tick: potentials, scheduler contents seen as
/// absolute ticks (view[core][k] holds input for last_tick + k, k = 0..max
/// offset), and all outputs so far.
struct OracleTrace {
  std::int64_t last_tick = -1;
  std::vector<std::vector<std::int64_t>> potentials;
  std::vector<std::vector<std::vector<bool>>> view;
  std::vector<SpikeEvent> outputs;

  friend bool operator==(const OracleTrace&, const OracleTrace&) = default;
};

OracleTrace snapshot(const TraceState& s);
OracleTrace snapshot(const SimulationState& s);
OracleTrace snapshot(const FlatState& s, std::int64_t ticks_done,
                     const std::vector<SpikeEvent>& outputs);

/// Human readable first difference, empty when equal.
std::string describe_difference(const OracleTrace& a, const OracleTrace& b);

}  // namespace nmsim::oracle

#endif  // NMSIM_TESTS_ORACLE_BRUTE_FORCE_HPP_
