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

// Text formats for networks, input streams and output spikes. The exact byte
// layout is documented in docs/formats.md.

#ifndef NMSIM_IO_HPP_
#define NMSIM_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nmsim/network.hpp"
#include "nmsim/router.hpp"

namespace nmsim {

inline constexpr const char* kNetworkMagic = "nmsim-network";
inline constexpr const char* kInputsMagic = "nmsim-inputs";
inline constexpr int kFormatVersion = 1;

void write_network(std::ostream& out, const Network& net);
void save_network(const std::filesystem::path& path, const Network& net);
/// Parses and fully validates. Errors carry line numbers or core/neuron.
Network read_network(std::istream& in);
Network load_network(const std::filesystem::path& path);

void write_inputs(std::ostream& out, const InputStream& inputs);
void save_inputs(const std::filesystem::path& path, const InputStream& inputs);
/// Records must be sorted by arrival tick; validated against cfg.
InputStream read_inputs(std::istream& in, const GridConfig& cfg);
InputStream load_inputs(const std::filesystem::path& path, const GridConfig& cfg);

/// One "tick core_x core_y neuron" line per event.
std::string format_outputs(std::span<const SpikeEvent> events);
void write_outputs(std::span<const SpikeEvent> events, const std::filesystem::path& path);
std::vector<SpikeEvent> read_outputs(std::istream& in);

/// Packet injected into a destination scheduler during one tick.
struct InputPacket {
  CoreCoord core;
  int axon = 0;
  int tick_offset = 1;

  friend bool operator==(const InputPacket&, const InputPacket&) = default;
};

/// Converts arrival-tick inputs into per-tick injections: a spike arriving at
/// tick a is delivered with offset 1 during tick a - 1. Result has one list
/// per tick (num_ticks lists).
std::vector<std::vector<InputPacket>> stage_inputs(const InputStream& inputs,
                                                   const GridConfig& cfg);

}  // namespace nmsim

#endif  // NMSIM_IO_HPP_
