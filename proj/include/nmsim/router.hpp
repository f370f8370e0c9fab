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

#ifndef NMSIM_ROUTER_HPP_
#define NMSIM_ROUTER_HPP_

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "nmsim/core_model.hpp"
#include "nmsim/scheduler.hpp"

namespace nmsim {

struct CoreCoord {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const CoreCoord&, const CoreCoord&) = default;
};

struct RoutedDelivery {
  CoreCoord dest;
  int dest_axon = 0;
  int dest_tick_offset = 1;
  /// Mesh hops on the hop-by-hop path, 0 for direct routing.
  int hops_taken = 0;

  friend bool operator==(const RoutedDelivery&, const RoutedDelivery&) = default;
};

enum class RouteMode { hop_by_hop, direct };

/// X-then-Y dimension-ordered routing, one mesh step at a time. If `trace` is
/// given it receives every core visited after the source.
RoutedDelivery route_hop_by_hop(CoreCoord src, const Packet& pkt, const GridConfig& grid,
                                std::vector<CoreCoord>* trace = nullptr);

/// Single-step routing straight to src + (dx, dy).
RoutedDelivery route_direct(CoreCoord src, const Packet& pkt, const GridConfig& grid);

struct NeuronRef {
  CoreCoord core;
  int neuron = 0;
};

/// Routes every spiking neuron's packet into the destination scheduler, or
/// records a SpikeEvent for output-flagged neurons. Events come back ordered
/// by (core_y, core_x, neuron).
std::vector<SpikeEvent> dispatch_spikes(std::span<const NeuronRef> spiking,
                                        std::span<const std::vector<CsramEntry>> csram,
                                        const GridConfig& grid, std::span<SchedulerSram> scheds,
                                        std::int64_t tick, RouteMode mode);

}  // namespace nmsim

#endif  // NMSIM_ROUTER_HPP_
