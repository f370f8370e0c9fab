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

// Data-parallel engine over a flattened, structure-of-arrays copy of the grid.
//
// Every tick runs four phases separated by full barriers:
//   scheduler  clear last tick's row per (core, axon), then bump each core's
//              row index once
//   inputs     deliver this tick's external packets
//   neuron     integrate + leak/threshold/reset for every neuron
//   router     route each new spike directly to its destination row
// Accumulation is done in Wide arithmetic and saturated once per neuron, so
// no work split or reduction order can change a result bit.

#ifndef NMSIM_ENGINE_PARALLEL_HPP_
#define NMSIM_ENGINE_PARALLEL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nmsim/engine_serial.hpp"
#include "nmsim/io.hpp"
#include "nmsim/network.hpp"
#include "nmsim/scheduler.hpp"
#include "nmsim/worker_pool.hpp"

namespace nmsim {

enum class Strategy {
  /// Neurons of one core in parallel; cores one after another.
  core_level,
  /// One work item per (core, neuron) over the whole grid.
  grid_level,
  /// Per neuron, 64-axon lane partial sums combined by a balanced tree.
  synapse_level,
};

std::string_view to_string(Strategy s);
/// Accepts "core", "grid", "synapse" with or without the "-level" suffix.
Strategy parse_strategy(std::string_view name);

/// Test-only faults for checking that verification catches broken builds.
enum class Fault {
  none,
  /// Bumps row indices before the row clears have finished, as happens when
  /// the barrier between the two scheduler sub-phases is missing.
  skip_scheduler_barrier,
};

struct ParallelPlan {
  Strategy strategy = Strategy::synapse_level;
  int workers = 1;
  int chunk = 64;
  /// Fan-in of the synapse-level reduction tree.
  int reduction_arity = 2;
  Fault fault = Fault::none;

  /// Throws ConfigError.
  void validate() const;
  /// e.g. "synapse-level/w8/c64".
  std::string describe() const;
};

/// Sums terms with a balanced tree of the given fan-in (>= 2).
Wide tree_reduce(std::span<const Wide> terms, int arity);

enum class Phase { idle, scheduler, inputs, neuron, router };

struct DestRecord {
  int dx = 0;
  int dy = 0;
  int axon = 0;
  int tick_offset = 1;
  bool output = false;
};

/// Contiguous arrays for the whole grid. Neuron id = core * neurons + n,
/// core = y * grid_width + x.
class FlatState {
 public:
  static FlatState from_network(const Network& net);

  GridConfig cfg;
  int cores = 0;
  int neurons = 0;
  int axons = 0;
  int weights_per_neuron = 0;
  /// Scheduler rows per core (max_tick_offset + 1).
  int depth = 0;
  /// 64-bit words per axon-indexed row.
  int row_words = 0;

  std::vector<std::int64_t> potentials;   // [core][neuron]
  std::vector<std::int64_t> weights;      // [core][neuron][weight]
  std::vector<std::uint64_t> connections; // [core][neuron][word]
  std::vector<int> axon_types;            // [core][axon]
  std::vector<std::uint64_t> type_masks;  // [core][type][word], derived from axon_types
  std::vector<std::int64_t> thresholds;
  std::vector<std::int64_t> resets;
  std::vector<std::int64_t> leaks;
  std::vector<DestRecord> dests;
  std::vector<std::uint64_t> sched;       // [core][row][word], allocated once
  std::vector<int> curr_word_index;       // [core]

  std::vector<std::uint8_t> spiked;       // [core][neuron], this tick
  std::vector<std::uint32_t> spikers;     // neuron ids that spiked, ascending

  std::size_t neuron_id(int core, int n) const {
    return static_cast<std::size_t>(core) * neurons + n;
  }
  std::uint64_t* sched_row(int core, int row) {
    return sched.data() + (static_cast<std::size_t>(core) * depth + row) * row_words;
  }
  const std::uint64_t* sched_row(int core, int row) const {
    return sched.data() + (static_cast<std::size_t>(core) * depth + row) * row_words;
  }

  Phase phase() const noexcept { return phase_; }
  void set_phase(Phase p) noexcept { phase_ = p; }

  /// Guarded writes: throw std::logic_error when called from the wrong phase.
  void store_potential(std::size_t id, std::int64_t value);
  void set_sched_bit(int core, int row, int axon);
  void clear_sched_bits(int core, int row, int word, std::uint64_t mask);

  /// Copies one core's ring into the serial engine's representation.
  SchedulerSram scheduler(int core) const;

 private:
  Phase phase_ = Phase::idle;
};

void scheduler_advance(FlatState& state, WorkerPool& pool, const ParallelPlan& plan);
void deliver_inputs(FlatState& state, std::span<const InputPacket> inputs, WorkerPool& pool,
                    const ParallelPlan& plan);
/// scheduler_advance followed by deliver_inputs.
void scheduler_phase(FlatState& state, std::span<const InputPacket> inputs, WorkerPool& pool,
                     const ParallelPlan& plan);
/// Updates potentials and fills state.spiked / state.spikers.
std::span<const std::uint32_t> neuron_phase(FlatState& state, WorkerPool& pool,
                                            const ParallelPlan& plan);
std::vector<SpikeEvent> router_phase(FlatState& state, WorkerPool& pool, const ParallelPlan& plan,
                                     std::int64_t tick);

/// Owns the flat state and worker pool for one simulation.
class ParallelEngine {
 public:
  ParallelEngine(const Network& net, const InputStream& inputs, const ParallelPlan& plan);

  void step(ProfileReport* profile = nullptr);
  RunResult run(bool profile);

  const FlatState& state() const noexcept { return state_; }
  std::int64_t tick() const noexcept { return tick_; }
  const std::vector<SpikeEvent>& outputs() const noexcept { return outputs_; }

 private:
  ParallelPlan plan_;
  FlatState state_;
  std::vector<std::vector<InputPacket>> inputs_;
  std::vector<SpikeEvent> outputs_;
  std::int64_t tick_ = 0;
  WorkerPool pool_;
};

RunResult run_parallel(const Network& net, const InputStream& inputs, const ParallelPlan& plan,
                       bool profile = false);

}  // namespace nmsim

#endif  // NMSIM_ENGINE_PARALLEL_HPP_
