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

// Single-threaded reference engine. One tick is, in order: scheduler advance
// and input delivery, the neuron loop over every core, then hop-by-hop
// dispatch of the new spikes.

#ifndef NMSIM_ENGINE_SERIAL_HPP_
#define NMSIM_ENGINE_SERIAL_HPP_

#include <cstdint>
#include <vector>

#include "nmsim/core_model.hpp"
#include "nmsim/io.hpp"
#include "nmsim/network.hpp"
#include "nmsim/scheduler.hpp"

namespace nmsim {

/// Wall-clock seconds spent in each phase. Input delivery counts as router
/// time.
struct ProfileReport {
  double scheduler_seconds = 0;
  double router_seconds = 0;
  double neuron_seconds = 0;

  double phase_total() const { return scheduler_seconds + router_seconds + neuron_seconds; }
};

struct RunResult {
  std::vector<SpikeEvent> outputs;
  ProfileReport profile;
};

struct SimulationState {
  SimulationState(const Network& net, const InputStream& inputs);

  GridConfig cfg;
  std::vector<std::vector<CsramEntry>> csram;
  std::vector<AxonTypes> axon_types;
  std::vector<SchedulerSram> scheds;
  std::vector<std::vector<InputPacket>> input_queue;
  std::vector<SpikeEvent> outputs;
  std::int64_t tick = 0;
};

void run_tick(SimulationState& state, ProfileReport* profile = nullptr);

/// Runs every remaining tick. Phase times are filled only when profile is set.
RunResult run(SimulationState& state, bool profile);

RunResult run_serial(const Network& net, const InputStream& inputs, bool profile = false);

}  // namespace nmsim

#endif  // NMSIM_ENGINE_SERIAL_HPP_
