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

#include "nmsim/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "nmsim/bench.hpp"
#include "nmsim/io.hpp"
#include "nmsim/workload.hpp"

namespace nmsim {

namespace {

struct Inputs {
  std::string network;
  std::string inputs;
};

struct PlanOptions {
  std::vector<std::string> strategies{"core-level", "grid-level", "synapse-level"};
  std::vector<int> workers{1, 2, 4, 8};
  std::vector<int> chunks{1, 64};
};

void add_files(CLI::App* cmd, Inputs& files) {
  cmd->add_option("--network", files.network, "Network file")->required();
  cmd->add_option("--inputs", files.inputs, "Input spike file (default: no input)");
}

void add_plan_lists(CLI::App* cmd, PlanOptions& p) {
  cmd->add_option("--strategy", p.strategies, "Strategies: core, grid, synapse")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--workers", p.workers, "Worker counts")->delimiter(',')->capture_default_str();
  cmd->add_option("--chunk", p.chunks, "Chunk sizes")->delimiter(',')->capture_default_str();
}

std::vector<ParallelPlan> build_plans(const PlanOptions& p) {
  std::vector<Strategy> strategies;
  for (const auto& s : p.strategies) strategies.push_back(parse_strategy(s));
  auto plans = plan_grid(strategies, p.workers, p.chunks);
  for (const auto& plan : plans) plan.validate();
  return plans;
}

std::pair<Network, InputStream> load(const Inputs& files) {
  Network net = load_network(files.network);
  InputStream inputs;
  if (!files.inputs.empty()) inputs = load_inputs(files.inputs, net.config);
  return {std::move(net), std::move(inputs)};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tick-accurate neuromorphic grid simulator", "nmsim"};
  app.require_subcommand(1);

  // run
  Inputs run_files;
  std::string engine = "serial";
  std::string strategy = "synapse-level";
  int workers = 1;
  int chunk = 64;
  std::string out_path;
  bool profile = false;
  auto* run_cmd = app.add_subcommand("run", "Simulate a network and write its output spikes");
  add_files(run_cmd, run_files);
  run_cmd->add_option("--engine", engine, "serial or parallel")
      ->check(CLI::IsMember({"serial", "parallel"}))
      ->capture_default_str();
  run_cmd->add_option("--strategy", strategy, "core, grid or synapse")->capture_default_str();
  run_cmd->add_option("--workers", workers, "Worker threads")->capture_default_str();
  run_cmd->add_option("--chunk", chunk, "Work items per task")->capture_default_str();
  run_cmd->add_option("--out", out_path, "Output spike file")->required();
  run_cmd->add_flag("--profile", profile, "Report per-phase times");

  // verify
  Inputs verify_files;
  PlanOptions verify_plans_opt;
  bool inject_fault = false;
  auto* verify_cmd = app.add_subcommand("verify", "Check every plan against the serial engine");
  add_files(verify_cmd, verify_files);
  add_plan_lists(verify_cmd, verify_plans_opt);
  verify_cmd->add_flag("--inject-fault", inject_fault, "Run plans with a missing barrier")
      ->group("");

  // sweep
  Inputs sweep_files;
  PlanOptions sweep_plans_opt;
  int repetitions = 3;
  std::string csv_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Time plans and report speedup over serial");
  add_files(sweep_cmd, sweep_files);
  add_plan_lists(sweep_cmd, sweep_plans_opt);
  sweep_cmd->add_option("--repetitions", repetitions, "Runs per plan (median is reported)")
      ->capture_default_str();
  sweep_cmd->add_option("--csv", csv_path, "Also write the table to this file");

  // generate
  std::string shape;
  WorkloadSpec gen;
  std::string network_out;
  std::string inputs_out;
  auto* gen_cmd = app.add_subcommand("generate", "Write a seeded synthetic workload");
  gen_cmd->add_option("--shape", shape, "Named shape, e.g. MNIST-512c or TrueNorth-Ref");
  gen_cmd->add_option("--width", gen.config.grid_width, "Grid width in cores");
  gen_cmd->add_option("--height", gen.config.grid_height, "Grid height in cores");
  gen_cmd->add_option("--axons", gen.config.axons_per_core, "Axons per core");
  gen_cmd->add_option("--neurons", gen.config.neurons_per_core, "Neurons per core");
  gen_cmd->add_option("--ticks", gen.config.num_ticks, "Simulation length");
  gen_cmd->add_option("--max-tick-offset", gen.config.max_tick_offset, "Largest spike delay");
  gen_cmd->add_option("--seed", gen.seed, "PRNG seed")->capture_default_str();
  gen_cmd->add_option("--density", gen.density, "Synapse connection probability");
  gen_cmd->add_option("--spike-rate", gen.spike_rate, "Input spikes per axon per tick");
  gen_cmd->add_option("--output-fraction", gen.output_fraction, "Share of output-bus neurons");
  gen_cmd->add_option("--network-out", network_out, "Network file to write")->required();
  gen_cmd->add_option("--inputs-out", inputs_out, "Input file to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) {
      auto [net, inputs] = load(run_files);
      ParallelPlan plan;
      plan.strategy = parse_strategy(strategy);
      plan.workers = workers;
      plan.chunk = chunk;
      plan.validate();
      const EngineKind kind = engine == "serial" ? EngineKind::serial : EngineKind::parallel;
      TimedRun run = run_simulation(net, inputs, kind, plan, profile);
      write_outputs(run.result.outputs, out_path);
      out << run.report.to_text();
      return kExitOk;
    }

    if (*verify_cmd) {
      auto [net, inputs] = load(verify_files);
      auto plans = build_plans(verify_plans_opt);
      if (inject_fault)
        for (auto& p : plans) p.fault = Fault::skip_scheduler_barrier;
      const VerifyResult v = verify_plans(net, inputs, plans);
      if (!v.serial_error.empty()) {
        err << "serial engine failed: " << v.serial_error << "\n";
        out << "FAIL\n";
        return kExitVerifyFail;
      }
      for (const PlanVerdict& pv : v.plans) {
        out << (pv.pass ? "PASS " : "FAIL ") << pv.plan.describe();
        if (!pv.error.empty()) out << ": " << pv.error;
        if (pv.divergence) out << ": " << pv.divergence->to_text();
        out << "\n";
      }
      out << (v.pass ? "PASS" : "FAIL") << "\n";
      return v.pass ? kExitOk : kExitVerifyFail;
    }

    if (*sweep_cmd) {
      auto [net, inputs] = load(sweep_files);
      const auto plans = build_plans(sweep_plans_opt);
      const SweepResult r = sweep(net, inputs, plans, repetitions);
      const std::string csv = r.to_csv();
      out << csv << "\n" << r.summary();
      if (!csv_path.empty()) {
        std::ofstream f(csv_path, std::ios::binary);
        f << csv;
        if (!f) throw LoadError(LoadError::Kind::io, csv_path, "write failed");
      }
      return kExitOk;
    }

    if (*gen_cmd) {
      WorkloadSpec spec = gen;
      if (!shape.empty()) {
        spec = shape_spec(shape, gen.seed);
        // Explicit flags override the shape's defaults.
        if (gen_cmd->count("--width")) spec.config.grid_width = gen.config.grid_width;
        if (gen_cmd->count("--height")) spec.config.grid_height = gen.config.grid_height;
        if (gen_cmd->count("--axons")) spec.config.axons_per_core = gen.config.axons_per_core;
        if (gen_cmd->count("--neurons")) spec.config.neurons_per_core = gen.config.neurons_per_core;
        if (gen_cmd->count("--ticks")) spec.config.num_ticks = gen.config.num_ticks;
        if (gen_cmd->count("--max-tick-offset"))
          spec.config.max_tick_offset = gen.config.max_tick_offset;
        if (gen_cmd->count("--density")) spec.density = gen.density;
        if (gen_cmd->count("--spike-rate")) spec.spike_rate = gen.spike_rate;
        if (gen_cmd->count("--output-fraction")) spec.output_fraction = gen.output_fraction;
      }
      const Workload w = generate_workload(spec);
      save_network(network_out, w.network);
      save_inputs(inputs_out, w.inputs);
      out << "wrote " << w.network.config.num_cores() << " cores, " << w.inputs.size()
          << " input spikes\n";
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace nmsim
