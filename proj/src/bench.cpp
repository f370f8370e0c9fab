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

#include "nmsim/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>

#include "nmsim/io.hpp"

namespace nmsim {

namespace {

double percent(double part, double whole) { return whole > 0 ? 100.0 * part / whole : 0.0; }

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string event_text(const std::optional<SpikeEvent>& e) {
  if (!e) return "<none>";
  return "tick " + std::to_string(e->tick) + " core (" + std::to_string(e->core_x) + "," +
         std::to_string(e->core_y) + ") neuron " + std::to_string(e->neuron);
}

}  // namespace

double RunReport::scheduler_percent() const { return percent(phases.scheduler_seconds, total_seconds); }
double RunReport::router_percent() const { return percent(phases.router_seconds, total_seconds); }
double RunReport::neuron_percent() const { return percent(phases.neuron_seconds, total_seconds); }

std::string RunReport::to_text() const {
  std::string s;
  s += "engine:        " + engine + "\n";
  s += "ticks:         " + std::to_string(ticks) + "\n";
  s += "output spikes: " + std::to_string(output_spikes) + "\n";
  s += "total time:    " + fixed(total_seconds, 6) + " s\n";
  if (phases.phase_total() > 0) {
    s += "  scheduler:   " + fixed(phases.scheduler_seconds, 6) + " s (" +
         fixed(scheduler_percent(), 1) + "%)\n";
    s += "  router:      " + fixed(phases.router_seconds, 6) + " s (" + fixed(router_percent(), 1) +
         "%)\n";
    s += "  neuron:      " + fixed(phases.neuron_seconds, 6) + " s (" + fixed(neuron_percent(), 1) +
         "%)\n";
  }
  return s;
}

TimedRun run_simulation(const Network& net, const InputStream& inputs, EngineKind engine,
                        const ParallelPlan& plan, bool profile) {
  TimedRun run;
  const auto start = std::chrono::steady_clock::now();
  if (engine == EngineKind::serial) {
    run.result = run_serial(net, inputs, profile);
    run.report.engine = "serial";
  } else {
    run.result = run_parallel(net, inputs, plan, profile);
    run.report.engine = plan.describe();
  }
  run.report.total_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  run.report.phases = run.result.profile;
  run.report.ticks = net.config.num_ticks;
  run.report.output_spikes = run.result.outputs.size();
  return run;
}

std::string Divergence::to_text() const {
  return "first divergence at record " + std::to_string(index) + ": expected " +
         event_text(expected) + ", got " + event_text(actual);
}

std::optional<Divergence> first_divergence(std::span<const SpikeEvent> expected,
                                           std::span<const SpikeEvent> actual) {
  const std::size_t n = std::min(expected.size(), actual.size());
  for (std::size_t i = 0; i < n; ++i)
    if (!(expected[i] == actual[i])) return Divergence{i, expected[i], actual[i]};
  if (expected.size() == actual.size()) return std::nullopt;
  Divergence d{n, std::nullopt, std::nullopt};
  if (n < expected.size()) d.expected = expected[n];
  if (n < actual.size()) d.actual = actual[n];
  return d;
}

VerifyResult verify_plans(const Network& net, const InputStream& inputs,
                          std::span<const ParallelPlan> plans) {
  VerifyResult result;
  RunResult reference;
  try {
    reference = run_serial(net, inputs);
  } catch (const std::exception& e) {
    result.serial_error = e.what();
    return result;
  }
  const std::string expected = format_outputs(reference.outputs);

  result.pass = true;
  for (const ParallelPlan& plan : plans) {
    PlanVerdict v;
    v.plan = plan;
    try {
      const RunResult got = run_parallel(net, inputs, plan);
      v.pass = format_outputs(got.outputs) == expected;
      if (!v.pass) {
        v.divergence = first_divergence(reference.outputs, got.outputs);
        if (!v.divergence) v.divergence = Divergence{};
      }
    } catch (const std::exception& e) {
      v.pass = false;
      v.error = e.what();
    }
    result.pass = result.pass && v.pass;
    result.plans.push_back(std::move(v));
  }
  return result;
}

std::vector<ParallelPlan> plan_grid(std::span<const Strategy> strategies,
                                    std::span<const int> workers, std::span<const int> chunks) {
  std::vector<ParallelPlan> plans;
  for (Strategy s : strategies)
    for (int w : workers)
      for (int c : chunks) {
        ParallelPlan p;
        p.strategy = s;
        p.workers = w;
        p.chunk = c;
        plans.push_back(p);
      }
  return plans;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::string SweepResult::to_csv() const {
  std::string s = "engine,strategy,workers,chunk,median_seconds,speedup\n";
  s += "serial,,1,,"+ fixed(serial_median_seconds, 6) + ",1.000\n";
  for (const SweepRow& r : rows)
    s += "parallel," + std::string(to_string(r.plan.strategy)) + "," +
         std::to_string(r.plan.workers) + "," + std::to_string(r.plan.chunk) + "," +
         fixed(r.median_seconds, 6) + "," + fixed(r.speedup, 3) + "\n";
  return s;
}

std::string SweepResult::summary() const {
  std::string s = "serial median " + fixed(serial_median_seconds, 6) + " s over " +
                  std::to_string(repetitions) + " repetitions\n";
  if (rows.empty()) return s;
  const auto best = std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.speedup < b.speedup;
  });
  s += "fastest plan " + best->plan.describe() + ": " + fixed(best->median_seconds, 6) + " s, " +
       fixed(best->speedup, 2) + "x vs serial\n";
  return s;
}

SweepResult sweep(const Network& net, const InputStream& inputs,
                  std::span<const ParallelPlan> plans, int repetitions) {
  if (repetitions < 1) throw ConfigError("sweep: repetitions must be >= 1");
  auto timed = [&](EngineKind kind, const ParallelPlan& plan) {
    std::vector<double> times;
    for (int r = 0; r < repetitions; ++r)
      times.push_back(run_simulation(net, inputs, kind, plan, false).report.total_seconds);
    return median(std::move(times));
  };
  SweepResult result;
  result.repetitions = repetitions;
  result.serial_median_seconds = timed(EngineKind::serial, ParallelPlan{});
  for (const ParallelPlan& plan : plans) {
    const double m = timed(EngineKind::parallel, plan);
    result.rows.push_back(SweepRow{plan, m, m > 0 ? result.serial_median_seconds / m : 0});
  }
  return result;
}

}  // namespace nmsim
