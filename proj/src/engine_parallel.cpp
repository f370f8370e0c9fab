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

#include "nmsim/engine_parallel.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <stdexcept>

#include "nmsim/router.hpp"

namespace nmsim {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Wide reduce_in_place(std::span<Wide> buf, int arity) {
  std::size_t n = buf.size();
  if (n == 0) return 0;
  const auto fan_in = static_cast<std::size_t>(arity);
  while (n > 1) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < n; i += fan_in) {
      Wide s = 0;
      for (std::size_t j = i; j < std::min(i + fan_in, n); ++j) s += buf[j];
      buf[out++] = s;
    }
    n = out;
  }
  return buf[0];
}

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::idle: return "idle";
    case Phase::scheduler: return "scheduler";
    case Phase::inputs: return "inputs";
    case Phase::neuron: return "neuron";
    case Phase::router: return "router";
  }
  return "?";
}

[[noreturn]] void phase_violation(const char* what, Phase p) {
  throw std::logic_error(std::string(what) + " during " + phase_name(p) + " phase");
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::core_level: return "core-level";
    case Strategy::grid_level: return "grid-level";
    case Strategy::synapse_level: return "synapse-level";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  if (name.ends_with("-level")) name.remove_suffix(6);
  if (name == "core") return Strategy::core_level;
  if (name == "grid") return Strategy::grid_level;
  if (name == "synapse") return Strategy::synapse_level;
  throw ConfigError("unknown strategy '" + std::string(name) + "'");
}

void ParallelPlan::validate() const {
  if (workers < 1) throw ConfigError("plan: workers must be >= 1");
  if (chunk < 1) throw ConfigError("plan: chunk must be >= 1");
  if (reduction_arity < 2) throw ConfigError("plan: reduction arity must be >= 2");
}

std::string ParallelPlan::describe() const {
  std::string s = std::string(to_string(strategy)) + "/w" + std::to_string(workers) + "/c" +
                  std::to_string(chunk);
  if (reduction_arity != 2) s += "/a" + std::to_string(reduction_arity);
  if (fault != Fault::none) s += "/fault";
  return s;
}

Wide tree_reduce(std::span<const Wide> terms, int arity) {
  if (arity < 2) throw std::invalid_argument("tree_reduce: arity must be >= 2");
  std::vector<Wide> buf(terms.begin(), terms.end());
  return reduce_in_place(buf, arity);
}

FlatState FlatState::from_network(const Network& net) {
  validate_network(net);
  const GridConfig& cfg = net.config;
  FlatState s;
  s.cfg = cfg;
  s.cores = cfg.num_cores();
  s.neurons = cfg.neurons_per_core;
  s.axons = cfg.axons_per_core;
  s.weights_per_neuron = cfg.num_weights_per_neuron;
  s.depth = cfg.max_tick_offset + 1;
  s.row_words = static_cast<int>(BitVector::words_for(static_cast<std::size_t>(s.axons)));

  const auto cores = static_cast<std::size_t>(s.cores);
  const std::size_t total = cores * s.neurons;
  const auto words = static_cast<std::size_t>(s.row_words);
  const auto types = static_cast<std::size_t>(s.weights_per_neuron);

  s.potentials.resize(total);
  s.weights.resize(total * types);
  s.connections.resize(total * words);
  s.axon_types.resize(cores * s.axons);
  s.type_masks.assign(cores * types * words, 0);
  s.thresholds.resize(total);
  s.resets.resize(total);
  s.leaks.resize(total);
  s.dests.resize(total);
  s.sched.assign(cores * s.depth * words, 0);
  s.curr_word_index.assign(cores, 0);
  s.spiked.assign(total, 0);

  for (std::size_t c = 0; c < cores; ++c) {
    const CoreTable& core = net.cores[c];
    for (int a = 0; a < s.axons; ++a) {
      const int t = core.axon_types.types[static_cast<std::size_t>(a)];
      s.axon_types[c * s.axons + a] = t;
      s.type_masks[(c * types + t) * words + a / 64] |= std::uint64_t{1} << (a % 64);
    }
    for (int n = 0; n < s.neurons; ++n) {
      const CsramEntry& e = core.neurons[static_cast<std::size_t>(n)];
      const std::size_t id = c * s.neurons + n;
      s.potentials[id] = e.potential;
      std::copy(e.weights.begin(), e.weights.end(), s.weights.begin() + id * types);
      const auto cw = e.connections.words();
      std::copy(cw.begin(), cw.end(), s.connections.begin() + id * words);
      s.thresholds[id] = e.threshold;
      s.resets[id] = e.reset_potential;
      s.leaks[id] = e.leak;
      s.dests[id] = DestRecord{e.dest_core_dx, e.dest_core_dy, e.dest_axon, e.dest_tick_offset,
                               e.output_flag};
    }
  }
  return s;
}

void FlatState::store_potential(std::size_t id, std::int64_t value) {
  if (phase_ != Phase::neuron) phase_violation("potential write", phase_);
  potentials[id] = value;
}

void FlatState::set_sched_bit(int core, int row, int axon) {
  if (phase_ != Phase::inputs && phase_ != Phase::router) phase_violation("scheduler write", phase_);
  std::atomic_ref<std::uint64_t> word(sched_row(core, row)[axon / 64]);
  word.fetch_or(std::uint64_t{1} << (axon % 64), std::memory_order_relaxed);
}

void FlatState::clear_sched_bits(int core, int row, int word, std::uint64_t mask) {
  if (phase_ != Phase::scheduler) phase_violation("scheduler clear", phase_);
  std::atomic_ref<std::uint64_t> w(sched_row(core, row)[word]);
  w.fetch_and(~mask, std::memory_order_relaxed);
}

SchedulerSram FlatState::scheduler(int core) const {
  std::vector<BitVector> rows;
  rows.reserve(static_cast<std::size_t>(depth));
  for (int r = 0; r < depth; ++r) {
    BitVector row(static_cast<std::size_t>(axons));
    const std::uint64_t* src = sched_row(core, r);
    std::copy(src, src + row_words, row.words().begin());
    rows.push_back(std::move(row));
  }
  return SchedulerSram(std::move(rows), curr_word_index[static_cast<std::size_t>(core)]);
}

void scheduler_advance(FlatState& state, WorkerPool& pool, const ParallelPlan& plan) {
  state.set_phase(Phase::scheduler);
  const auto axons = static_cast<std::size_t>(state.axons);
  const auto chunk = static_cast<std::size_t>(plan.chunk);

  // One item per (core, axon). Consecutive axons of a chunk that share a word
  // are cleared with a single masked write.
  const WorkerPool::RangeFn clear = [&](std::size_t begin, std::size_t end) {
    std::size_t i = begin;
    while (i < end) {
      const std::size_t core = i / axons;
      const std::size_t axon = i % axons;
      const std::size_t word = axon / 64;
      const std::size_t stop = std::min({end, (core + 1) * axons, core * axons + (word + 1) * 64});
      const std::size_t count = stop - i;
      const std::uint64_t mask =
          (count == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << count) - 1)) << (axon % 64);
      state.clear_sched_bits(static_cast<int>(core), state.curr_word_index[core],
                             static_cast<int>(word), mask);
      i = stop;
    }
  };
  // Single item per core.
  const WorkerPool::RangeFn bump = [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c)
      state.curr_word_index[c] = (state.curr_word_index[c] + 1) % state.depth;
  };

  const std::size_t items = static_cast<std::size_t>(state.cores) * axons;
  if (plan.fault == Fault::skip_scheduler_barrier) {
    pool.parallel_for(static_cast<std::size_t>(state.cores), chunk, bump);
    pool.parallel_for(items, chunk, clear);
  } else {
    pool.parallel_for(items, chunk, clear);
    pool.parallel_for(static_cast<std::size_t>(state.cores), chunk, bump);
  }
}

void deliver_inputs(FlatState& state, std::span<const InputPacket> inputs, WorkerPool& pool,
                    const ParallelPlan& plan) {
  state.set_phase(Phase::inputs);
  const GridConfig& cfg = state.cfg;
  pool.parallel_for(inputs.size(), static_cast<std::size_t>(plan.chunk),
                    [&](std::size_t begin, std::size_t end) {
                      for (std::size_t i = begin; i < end; ++i) {
                        const InputPacket& p = inputs[i];
                        if (!cfg.contains(p.core.x, p.core.y))
                          throw std::invalid_argument("input packet core outside grid");
                        if (p.axon < 0 || p.axon >= state.axons)
                          throw std::invalid_argument("input packet axon out of range");
                        if (p.tick_offset < 1 || p.tick_offset >= state.depth)
                          throw std::invalid_argument("input packet tick offset out of range");
                        const int core = p.core.y * cfg.grid_width + p.core.x;
                        const int row = (state.curr_word_index[static_cast<std::size_t>(core)] +
                                         p.tick_offset) %
                                        state.depth;
                        state.set_sched_bit(core, row, p.axon);
                      }
                    });
}

void scheduler_phase(FlatState& state, std::span<const InputPacket> inputs, WorkerPool& pool,
                     const ParallelPlan& plan) {
  scheduler_advance(state, pool, plan);
  deliver_inputs(state, inputs, pool, plan);
}

std::span<const std::uint32_t> neuron_phase(FlatState& state, WorkerPool& pool,
                                            const ParallelPlan& plan) {
  state.set_phase(Phase::neuron);
  const auto neurons = static_cast<std::size_t>(state.neurons);
  const auto axons = static_cast<std::size_t>(state.axons);
  const auto words = static_cast<std::size_t>(state.row_words);
  const auto types = static_cast<std::size_t>(state.weights_per_neuron);
  const int potential_bits = state.cfg.potential_bits;
  const bool lanes = plan.strategy == Strategy::synapse_level;
  const int arity = plan.reduction_arity;

  auto update = [&](std::size_t id, std::span<Wide> leaves) {
    const std::size_t core = id / neurons;
    const std::uint64_t* spikes =
        state.sched_row(static_cast<int>(core), state.curr_word_index[core]);
    const std::uint64_t* conn = state.connections.data() + id * words;
    const std::int64_t* w = state.weights.data() + id * types;
    Wide acc = state.potentials[id];
    if (lanes) {
      // Leaf k covers axons 64k..64k+63: per weight type, popcount of the
      // active axons of that type times the weight.
      const std::uint64_t* masks = state.type_masks.data() + core * types * words;
      for (std::size_t k = 0; k < words; ++k) {
        const std::uint64_t active = conn[k] & spikes[k];
        Wide partial = 0;
        if (active != 0)
          for (std::size_t t = 0; t < types; ++t)
            partial += Wide{w[t]} * std::popcount(active & masks[t * words + k]);
        leaves[k] = partial;
      }
      acc += reduce_in_place(leaves, arity);
    } else {
      const int* axon_type = state.axon_types.data() + core * axons;
      for (std::size_t k = 0; k < words; ++k) {
        std::uint64_t active = conn[k] & spikes[k];
        while (active != 0) {
          acc += w[axon_type[k * 64 + static_cast<std::size_t>(std::countr_zero(active))]];
          active &= active - 1;
        }
      }
    }
    const NeuronUpdate u =
        lif_update(acc, state.leaks[id], state.thresholds[id], state.resets[id], potential_bits);
    state.store_potential(id, u.potential);
    state.spiked[id] = u.spiked ? 1 : 0;
  };

  const auto chunk = static_cast<std::size_t>(plan.chunk);
  if (plan.strategy == Strategy::core_level) {
    for (std::size_t core = 0; core < static_cast<std::size_t>(state.cores); ++core) {
      pool.parallel_for(neurons, chunk, [&](std::size_t begin, std::size_t end) {
        for (std::size_t n = begin; n < end; ++n) update(core * neurons + n, {});
      });
    }
  } else {
    pool.parallel_for(state.spiked.size(), chunk, [&](std::size_t begin, std::size_t end) {
      std::vector<Wide> leaves(lanes ? words : 0);
      for (std::size_t id = begin; id < end; ++id) update(id, leaves);
    });
  }

  state.spikers.clear();
  for (std::size_t id = 0; id < state.spiked.size(); ++id)
    if (state.spiked[id]) state.spikers.push_back(static_cast<std::uint32_t>(id));
  return state.spikers;
}

std::vector<SpikeEvent> router_phase(FlatState& state, WorkerPool& pool, const ParallelPlan& plan,
                                     std::int64_t tick) {
  state.set_phase(Phase::router);
  const GridConfig& cfg = state.cfg;
  const auto neurons = static_cast<std::size_t>(state.neurons);
  const auto chunk = static_cast<std::size_t>(plan.chunk);
  const std::size_t n = state.spikers.size();

  // Chunk i only appends to slot i, and spikers is ascending, so joining the
  // slots in index order yields canonical event order.
  std::vector<std::vector<SpikeEvent>> slots((n + chunk - 1) / chunk);
  pool.parallel_for(n, chunk, [&](std::size_t begin, std::size_t end) {
    auto& slot = slots[begin / chunk];
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t id = state.spikers[i];
      const int core = static_cast<int>(id / neurons);
      const CoreCoord src{core % cfg.grid_width, core / cfg.grid_width};
      const DestRecord& d = state.dests[id];
      if (d.output) {
        slot.push_back(SpikeEvent{tick, src.x, src.y, static_cast<int>(id % neurons)});
        continue;
      }
      const RoutedDelivery r = route_direct(src, Packet{d.dx, d.dy, d.axon, d.tick_offset}, cfg);
      const int dest = r.dest.y * cfg.grid_width + r.dest.x;
      const int row = (state.curr_word_index[static_cast<std::size_t>(dest)] + r.dest_tick_offset) %
                      state.depth;
      state.set_sched_bit(dest, row, r.dest_axon);
    }
  });

  std::vector<SpikeEvent> events;
  for (auto& slot : slots) events.insert(events.end(), slot.begin(), slot.end());
  return events;
}

namespace {

const ParallelPlan& checked(const ParallelPlan& plan) {
  plan.validate();
  return plan;
}

}  // namespace

ParallelEngine::ParallelEngine(const Network& net, const InputStream& inputs,
                               const ParallelPlan& plan)
    : plan_(checked(plan)),
      state_(FlatState::from_network(net)),
      inputs_(stage_inputs(inputs, net.config)),
      pool_(plan.workers) {}

void ParallelEngine::step(ProfileReport* profile) {
  if (tick_ >= state_.cfg.num_ticks)
    throw SimulationError("step: tick " + std::to_string(tick_) + " past num_ticks");
  try {
    auto t0 = Clock::now();
    scheduler_advance(state_, pool_, plan_);
    if (profile) profile->scheduler_seconds += seconds_since(t0);

    t0 = Clock::now();
    deliver_inputs(state_, inputs_[static_cast<std::size_t>(tick_)], pool_, plan_);
    if (profile) profile->router_seconds += seconds_since(t0);

    t0 = Clock::now();
    neuron_phase(state_, pool_, plan_);
    if (profile) profile->neuron_seconds += seconds_since(t0);

    t0 = Clock::now();
    auto events = router_phase(state_, pool_, plan_, tick_);
    outputs_.insert(outputs_.end(), events.begin(), events.end());
    if (profile) profile->router_seconds += seconds_since(t0);
  } catch (const std::exception& e) {
    state_.set_phase(Phase::idle);
    throw SimulationError("tick " + std::to_string(tick_) + ": " + e.what());
  }
  state_.set_phase(Phase::idle);
  ++tick_;
}

RunResult ParallelEngine::run(bool profile) {
  RunResult result;
  while (tick_ < state_.cfg.num_ticks) step(profile ? &result.profile : nullptr);
  result.outputs = outputs_;
  return result;
}

RunResult run_parallel(const Network& net, const InputStream& inputs, const ParallelPlan& plan,
                       bool profile) {
  ParallelEngine engine(net, inputs, plan);
  return engine.run(profile);
}

}  // namespace nmsim
