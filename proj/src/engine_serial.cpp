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

#include "nmsim/engine_serial.hpp"

#include <chrono>
#include <exception>
#include <string>

#include "nmsim/router.hpp"

namespace nmsim {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

SimulationState::SimulationState(const Network& net, const InputStream& inputs)
    : cfg(net.config) {
  validate_network(net);
  csram.reserve(net.cores.size());
  axon_types.reserve(net.cores.size());
  for (const CoreTable& core : net.cores) {
    csram.push_back(core.neurons);
    axon_types.push_back(core.axon_types);
  }
  scheds.assign(net.cores.size(), SchedulerSram::for_config(cfg));
  input_queue = stage_inputs(inputs, cfg);
}

void run_tick(SimulationState& state, ProfileReport* profile) {
  const GridConfig& cfg = state.cfg;
  if (state.tick >= cfg.num_ticks)
    throw SimulationError("run_tick: tick " + std::to_string(state.tick) + " past num_ticks");

  try {
    auto t0 = Clock::now();
    // Scheduler: drop last tick's row, move to this tick's row.
    for (SchedulerSram& sched : state.scheds) sched.advance();
    if (profile) profile->scheduler_seconds += seconds_since(t0);

    t0 = Clock::now();
    for (const InputPacket& p : state.input_queue[static_cast<std::size_t>(state.tick)]) {
      const std::size_t core = static_cast<std::size_t>(p.core.y) * cfg.grid_width + p.core.x;
      state.scheds[core].deliver(p.axon, p.tick_offset);
    }
    if (profile) profile->router_seconds += seconds_since(t0);

    t0 = Clock::now();
    std::vector<NeuronRef> spiking;
    for (int y = 0; y < cfg.grid_height; ++y) {
      for (int x = 0; x < cfg.grid_width; ++x) {
        const std::size_t core = static_cast<std::size_t>(y) * cfg.grid_width + x;
        const BitVector spikes = state.scheds[core].current_spikes();
        auto& neurons = state.csram[core];
        for (int n = 0; n < cfg.neurons_per_core; ++n) {
          CsramEntry& entry = neurons[static_cast<std::size_t>(n)];
          const Wide acc = integrate(entry, state.axon_types[core], spikes);
          const NeuronUpdate u = leak_threshold_reset(acc, entry, cfg);
          entry.potential = u.potential;
          if (u.spiked) spiking.push_back(NeuronRef{{x, y}, n});
        }
      }
    }
    if (profile) profile->neuron_seconds += seconds_since(t0);

    t0 = Clock::now();
    auto events = dispatch_spikes(spiking, state.csram, cfg, state.scheds, state.tick,
                                  RouteMode::hop_by_hop);
    state.outputs.insert(state.outputs.end(), events.begin(), events.end());
    if (profile) profile->router_seconds += seconds_since(t0);
  } catch (const SimulationError&) {
    throw;
  } catch (const std::exception& e) {
    throw SimulationError("tick " + std::to_string(state.tick) + ": " + e.what());
  }
  ++state.tick;
}

RunResult run(SimulationState& state, bool profile) {
  RunResult result;
  while (state.tick < state.cfg.num_ticks) run_tick(state, profile ? &result.profile : nullptr);
  // Ticks are appended in order and each tick's events are already sorted.
  result.outputs = state.outputs;
  return result;
}

RunResult run_serial(const Network& net, const InputStream& inputs, bool profile) {
  SimulationState state(net, inputs);
  return run(state, profile);
}

}  // namespace nmsim
