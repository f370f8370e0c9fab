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

#include <vector>

#include "nmsim/engine_parallel.hpp"
#include "nmsim/engine_serial.hpp"
#include "oracle/brute_force.hpp"
#include "support/fixtures.hpp"

using namespace nmsim;
using namespace nmsim::oracle;
using nmsim::testing::random_tiny_workload;
using nmsim::testing::relay_inputs;
using nmsim::testing::relay_network;

TEST_CASE("oracle relay trace by hand") {
  const Network net = relay_network();
  const InputStream inputs = relay_inputs();
  TraceState s = initial_state(net, inputs);

  brute_force_tick(s);  // tick 0: stimulus staged for tick 1
  OracleTrace t = snapshot(s);
  CHECK(t.last_tick == 0);
  CHECK(t.view[0][1][0]);
  CHECK(t.outputs.empty());

  brute_force_tick(s);  // tick 1: core (0,0) fires toward (0,1) for tick 2
  t = snapshot(s);
  CHECK(t.view[1][1][0]);
  CHECK_FALSE(t.view[0][1][0]);

  brute_force_tick(s);  // tick 2: core (0,1) fires onto the output bus
  t = snapshot(s);
  CHECK(t.outputs == std::vector<SpikeEvent>{{2, 0, 1, 0}});
}

TEST_CASE("relay trace agrees with both engines at every tick") {
  const Network net = relay_network();
  const InputStream inputs = relay_inputs();
  TraceState oracle_state = initial_state(net, inputs);
  SimulationState serial(net, inputs);
  ParallelEngine parallel(net, inputs, ParallelPlan{});
  for (int t = 0; t < 5; ++t) {
    brute_force_tick(oracle_state);
    run_tick(serial);
    parallel.step();
    const auto expected = snapshot(oracle_state);
    CHECK(describe_difference(expected, snapshot(serial)) == "");
    CHECK(describe_difference(expected,
                              snapshot(parallel.state(), parallel.tick(), parallel.outputs())) == "");
  }
}

TEST_CASE("random tiny workloads match the oracle in full state") {
  int compared = 0;
  for (std::uint64_t seed = 5000; seed < 5200; ++seed) {
    const Workload w = random_tiny_workload(seed);
    ParallelPlan plan;
    plan.strategy = static_cast<Strategy>(seed % 3);
    plan.workers = 1 + static_cast<int>(seed % 4);
    plan.chunk = seed % 2 ? 1 : 64;
    TraceState oracle_state = initial_state(w.network, w.inputs);
    SimulationState serial(w.network, w.inputs);
    ParallelEngine parallel(w.network, w.inputs, plan);
    for (std::int64_t t = 0; t < w.network.config.num_ticks; ++t) {
      brute_force_tick(oracle_state);
      run_tick(serial);
      parallel.step();
      const auto expected = snapshot(oracle_state);
      const std::string vs_serial = describe_difference(expected, snapshot(serial));
      const std::string vs_parallel = describe_difference(
          expected, snapshot(parallel.state(), parallel.tick(), parallel.outputs()));
      INFO("seed ", seed, " tick ", t);
      REQUIRE(vs_serial == "");
      REQUIRE(vs_parallel == "");
      ++compared;
    }
  }
  CHECK(compared == 200 * 20);
}

TEST_CASE("describe_difference names the first mismatch") {
  const Workload w = random_tiny_workload(1);
  TraceState a = initial_state(w.network, w.inputs);
  brute_force_tick(a);
  OracleTrace x = snapshot(a);
  OracleTrace y = x;
  CHECK(describe_difference(x, y).empty());
  y.potentials[0][0] += 1;
  CHECK(describe_difference(x, y).find("potential") != std::string::npos);
}
