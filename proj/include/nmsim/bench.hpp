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

#ifndef NMSIM_BENCH_HPP_
#define NMSIM_BENCH_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nmsim/engine_parallel.hpp"
#include "nmsim/engine_serial.hpp"
#include "nmsim/network.hpp"

namespace nmsim {

enum class EngineKind { serial, parallel };

struct RunReport {
  std::string engine;  // "serial" or the plan descriptor
  double total_seconds = 0;
  ProfileReport phases;
  std::int64_t ticks = 0;
  std::size_t output_spikes = 0;

  double scheduler_percent() const;
  double router_percent() const;
  double neuron_percent() const;
  /// Multi-line human readable summary.
  std::string to_text() const;
};

struct TimedRun {
  RunResult result;
  RunReport report;
};

/// Runs one simulation end to end (state setup included in total time).
TimedRun run_simulation(const Network& net, const InputStream& inputs, EngineKind engine,
                        const ParallelPlan& plan, bool profile);

/// First record at which two event sequences differ. Either side may be
/// missing when one sequence is a prefix of the other.
struct Divergence {
  std::size_t index = 0;
  std::optional<SpikeEvent> expected;
  std::optional<SpikeEvent> actual;

  std::string to_text() const;
};

std::optional<Divergence> first_divergence(std::span<const SpikeEvent> expected,
                                           std::span<const SpikeEvent> actual);

struct PlanVerdict {
  ParallelPlan plan;
  bool pass = false;
  std::optional<Divergence> divergence;
  /// Set when the run itself failed.
  std::string error;
};

struct VerifyResult {
  bool pass = false;
  std::string serial_error;
  std::vector<PlanVerdict> plans;
};

/// Runs the serial engine once and every plan once. A plan passes iff its
/// output file bytes equal the serial output file bytes.
VerifyResult verify_plans(const Network& net, const InputStream& inputs,
                          std::span<const ParallelPlan> plans);

/// Cartesian product strategies x workers x chunks.
std::vector<ParallelPlan> plan_grid(std::span<const Strategy> strategies,
                                    std::span<const int> workers, std::span<const int> chunks);

struct SweepRow {
  ParallelPlan plan;
  double median_seconds = 0;
  double speedup = 0;  // serial median / plan median
};

struct SweepResult {
  double serial_median_seconds = 0;
  int repetitions = 0;
  std::vector<SweepRow> rows;

  /// One header line, then one comma-separated row per plan (serial first).
  std::string to_csv() const;
  std::string summary() const;
};

double median(std::vector<double> values);

SweepResult sweep(const Network& net, const InputStream& inputs, std::span<const ParallelPlan> plans,
                  int repetitions);

}  // namespace nmsim

#endif  // NMSIM_BENCH_HPP_
