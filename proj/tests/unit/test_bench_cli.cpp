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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nmsim/bench.hpp"
#include "nmsim/cli.hpp"
#include "nmsim/io.hpp"
#include "support/fixtures.hpp"

using namespace nmsim;
using nmsim::testing::relay_inputs;
using nmsim::testing::relay_network;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "nmsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / "nmsim-cli-test";
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string operator/(const char* name) const { return (path / name).string(); }
};

Workload busy_workload() {
  WorkloadSpec spec;
  spec.config.grid_width = 3;
  spec.config.grid_height = 2;
  spec.config.axons_per_core = 64;
  spec.config.neurons_per_core = 32;
  spec.config.max_tick_offset = 3;
  spec.config.num_ticks = 40;
  spec.density = 0.5;
  spec.spike_rate = 0.1;
  spec.seed = 21;
  return generate_workload(spec);
}

}  // namespace

TEST_CASE("run report percentages stay within the total") {
  const Workload w = busy_workload();
  for (EngineKind kind : {EngineKind::serial, EngineKind::parallel}) {
    const TimedRun run = run_simulation(w.network, w.inputs, kind, ParallelPlan{}, true);
    const RunReport& r = run.report;
    CHECK(r.ticks == 40);
    CHECK(r.output_spikes == run.result.outputs.size());
    CHECK(r.phases.scheduler_seconds >= 0);
    CHECK(r.phases.router_seconds >= 0);
    CHECK(r.phases.neuron_seconds >= 0);
    CHECK(r.scheduler_percent() + r.router_percent() + r.neuron_percent() <= 100.0 + 1e-9);
    CHECK(r.to_text().find("neuron") != std::string::npos);
  }
}

TEST_CASE("first divergence") {
  const std::vector<SpikeEvent> a{{1, 0, 0, 0}, {2, 1, 0, 3}};
  const std::vector<SpikeEvent> b{{1, 0, 0, 0}, {2, 1, 0, 4}};
  CHECK_FALSE(first_divergence(a, a));
  const auto d = first_divergence(a, b);
  REQUIRE(d);
  CHECK(d->index == 1);
  CHECK(*d->expected == a[1]);
  CHECK(*d->actual == b[1]);
  CHECK(d->to_text().find("tick 2") != std::string::npos);
  const auto prefix = first_divergence(a, std::vector<SpikeEvent>{a[0]});
  REQUIRE(prefix);
  CHECK_FALSE(prefix->actual);
}

TEST_CASE("verify passes on an all-zero network") {
  GridConfig cfg;
  cfg.grid_width = 2;
  cfg.grid_height = 2;
  cfg.axons_per_core = 8;
  cfg.neurons_per_core = 8;
  cfg.num_ticks = 10;
  const std::vector<Strategy> strategies{Strategy::core_level, Strategy::grid_level,
                                         Strategy::synapse_level};
  const std::vector<int> workers{1, 2, 4, 8}, chunks{1, 64};
  const auto plans = plan_grid(strategies, workers, chunks);
  CHECK(plans.size() == 24);
  const VerifyResult v =
      verify_plans(make_empty_network(cfg), {InputSpike{3, 1, 1, 2}}, plans);
  CHECK(v.pass);
  for (const auto& p : v.plans) CHECK(p.pass);
}

TEST_CASE("verify fails with a located divergence under fault injection") {
  const Workload w = busy_workload();
  ParallelPlan good, bad;
  bad.fault = Fault::skip_scheduler_barrier;
  const std::vector<ParallelPlan> plans{good, bad};
  const VerifyResult v = verify_plans(w.network, w.inputs, plans);
  CHECK_FALSE(v.pass);
  CHECK(v.plans[0].pass);
  REQUIRE_FALSE(v.plans[1].pass);
  REQUIRE(v.plans[1].divergence);
  CHECK(v.plans[1].divergence->to_text().find("tick") != std::string::npos);
}

TEST_CASE("sweep table is self-consistent") {
  const Workload w = busy_workload();
  const std::vector<Strategy> strategies{Strategy::grid_level};
  const std::vector<int> workers{1}, chunks{64};
  const auto plans = plan_grid(strategies, workers, chunks);
  const SweepResult r = sweep(w.network, w.inputs, plans, 3);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.repetitions == 3);
  CHECK(r.serial_median_seconds > 0);
  CHECK(r.rows[0].median_seconds > 0);
  CHECK(r.rows[0].speedup == doctest::Approx(r.serial_median_seconds / r.rows[0].median_seconds));
  const std::string csv = r.to_csv();
  CHECK(csv.rfind("engine,strategy,workers,chunk,median_seconds,speedup\nserial,", 0) == 0);
  CHECK(csv.find("parallel,grid-level,1,64,") != std::string::npos);
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
}

TEST_CASE("cli run writes the relay spike with both engines") {
  TempDir dir;
  save_network(dir / "relay.net", relay_network());
  save_inputs(dir / "relay.in", relay_inputs());
  auto serial = cli({"run", "--network", dir / "relay.net", "--inputs", dir / "relay.in", "--out",
                     dir / "serial.out", "--profile"});
  CHECK(serial.code == kExitOk);
  CHECK(slurp(dir / "serial.out") == "2 0 1 0\n");
  auto parallel = cli({"run", "--network", dir / "relay.net", "--inputs", dir / "relay.in",
                       "--engine", "parallel", "--strategy", "grid", "--workers", "2", "--out",
                       dir / "parallel.out"});
  CHECK(parallel.code == kExitOk);
  CHECK(slurp(dir / "parallel.out") == slurp(dir / "serial.out"));
}

TEST_CASE("cli exit codes") {
  TempDir dir;
  auto missing = cli({"run", "--network", dir / "nope.net", "--out", dir / "x.out"});
  CHECK(missing.code == kExitUsage);
  CHECK(missing.err.find("error:") != std::string::npos);
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
  save_network(dir / "relay.net", relay_network());
  CHECK(cli({"run", "--network", dir / "relay.net", "--out", dir / "x.out", "--workers", "0",
             "--engine", "parallel"})
            .code == kExitUsage);
}

TEST_CASE("cli generate, verify and sweep") {
  TempDir dir;
  auto gen = cli({"generate", "--width", "2", "--height", "2", "--axons", "32", "--neurons", "16",
                  "--ticks", "30", "--density", "0.5", "--spike-rate", "0.1", "--seed", "5",
                  "--network-out", dir / "w.net", "--inputs-out", dir / "w.in"});
  REQUIRE(gen.code == kExitOk);
  auto again = cli({"generate", "--width", "2", "--height", "2", "--axons", "32", "--neurons",
                    "16", "--ticks", "30", "--density", "0.5", "--spike-rate", "0.1", "--seed",
                    "5", "--network-out", dir / "w2.net", "--inputs-out", dir / "w2.in"});
  REQUIRE(again.code == kExitOk);
  CHECK(slurp(dir / "w.net") == slurp(dir / "w2.net"));
  CHECK(slurp(dir / "w.in") == slurp(dir / "w2.in"));

  auto verify = cli({"verify", "--network", dir / "w.net", "--inputs", dir / "w.in"});
  CHECK(verify.code == kExitOk);
  CHECK(verify.out.find("FAIL") == std::string::npos);
  CHECK(verify.out.find("PASS synapse-level/w8/c64") != std::string::npos);

  auto faulty = cli({"verify", "--network", dir / "w.net", "--inputs", dir / "w.in",
                     "--strategy", "grid", "--workers", "2", "--chunk", "1", "--inject-fault"});
  CHECK(faulty.code == kExitVerifyFail);
  CHECK(faulty.out.find("FAIL grid-level/w2/c1") != std::string::npos);

  auto sw = cli({"sweep", "--network", dir / "w.net", "--inputs", dir / "w.in", "--strategy",
                 "synapse", "--workers", "1,2", "--chunk", "64", "--repetitions", "1", "--csv",
                 dir / "s.csv"});
  CHECK(sw.code == kExitOk);
  const std::string csv = slurp(dir / "s.csv");
  CHECK(csv.find("parallel,synapse-level,2,64,") != std::string::npos);

  auto shaped = cli({"generate", "--shape", "MNIST-12c", "--ticks", "5", "--network-out",
                     dir / "m.net", "--inputs-out", dir / "m.in"});
  CHECK(shaped.code == kExitOk);
  CHECK(load_network(dir / "m.net").config.num_cores() == 12);
}
