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

#include "nmsim/router.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace nmsim {

namespace {

std::string describe(CoreCoord src, const Packet& pkt) {
  return "packet (dx=" + std::to_string(pkt.dx) + ", dy=" + std::to_string(pkt.dy) +
         ", axon=" + std::to_string(pkt.dest_axon) + ", offset=" +
         std::to_string(pkt.dest_tick_offset) + ") from core (" + std::to_string(src.x) + "," +
         std::to_string(src.y) + ")";
}

void check_endpoints(CoreCoord src, const Packet& pkt, const GridConfig& grid) {
  if (!grid.contains(src.x, src.y))
    throw RoutingError("source core outside grid for " + describe(src, pkt));
  // Widen before adding so extreme offsets cannot wrap back into the grid.
  const long long x = static_cast<long long>(src.x) + pkt.dx;
  const long long y = static_cast<long long>(src.y) + pkt.dy;
  if (x < 0 || y < 0 || x >= grid.grid_width || y >= grid.grid_height)
    throw RoutingError("destination outside grid for " + describe(src, pkt));
}

}  // namespace

RoutedDelivery route_hop_by_hop(CoreCoord src, const Packet& pkt, const GridConfig& grid,
                                std::vector<CoreCoord>* trace) {
  check_endpoints(src, pkt, grid);
  CoreCoord at = src;
  int dx = pkt.dx;
  int dy = pkt.dy;
  int hops = 0;
  auto step = [&](int sx, int sy) {
    at.x += sx;
    at.y += sy;
    ++hops;
    if (trace) trace->push_back(at);
  };
  // East/west first, then north/south.
  while (dx != 0) {
    const int s = dx > 0 ? 1 : -1;
    step(s, 0);
    dx -= s;
  }
  while (dy != 0) {
    const int s = dy > 0 ? 1 : -1;
    step(0, s);
    dy -= s;
  }
  return RoutedDelivery{at, pkt.dest_axon, pkt.dest_tick_offset, hops};
}

RoutedDelivery route_direct(CoreCoord src, const Packet& pkt, const GridConfig& grid) {
  check_endpoints(src, pkt, grid);
  return RoutedDelivery{{src.x + pkt.dx, src.y + pkt.dy}, pkt.dest_axon, pkt.dest_tick_offset, 0};
}

std::vector<SpikeEvent> dispatch_spikes(std::span<const NeuronRef> spiking,
                                        std::span<const std::vector<CsramEntry>> csram,
                                        const GridConfig& grid, std::span<SchedulerSram> scheds,
                                        std::int64_t tick, RouteMode mode) {
  std::vector<SpikeEvent> events;
  for (const NeuronRef& ref : spiking) {
    const std::size_t src_index =
        static_cast<std::size_t>(ref.core.y) * grid.grid_width + ref.core.x;
    const CsramEntry& entry = csram[src_index][static_cast<std::size_t>(ref.neuron)];
    if (entry.output_flag) {
      events.push_back(SpikeEvent{tick, ref.core.x, ref.core.y, ref.neuron});
      continue;
    }
    const Packet pkt = make_packet(entry);
    const RoutedDelivery d = mode == RouteMode::hop_by_hop ? route_hop_by_hop(ref.core, pkt, grid)
                                                           : route_direct(ref.core, pkt, grid);
    const std::size_t dest_index = static_cast<std::size_t>(d.dest.y) * grid.grid_width + d.dest.x;
    scheds[dest_index].deliver(d.dest_axon, d.dest_tick_offset);
  }
  std::sort(events.begin(), events.end(), CanonicalLess{});
  return events;
}

}  // namespace nmsim
