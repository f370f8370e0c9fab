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

#include "nmsim/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace nmsim {

namespace {

constexpr const char* kHeaderKeys[] = {
    "grid_width",     "grid_height",    "axons_per_core", "neurons_per_core",
    "num_weights_per_neuron", "max_tick_offset", "potential_bits", "weight_bits",
    "leak_bits",      "threshold_bits", "reset_bits",     "num_ticks",
};

void append_int(std::string& out, long long v) {
  char buf[24];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, end);
}

void append_field(std::string& out, long long v) {
  out.push_back(' ');
  append_int(out, v);
}

// Hex digit j covers axons 4j..4j+3, axon 4j in the least significant bit.
void append_hex(std::string& out, const BitVector& bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (bits.size() + 3) / 4;
  const auto words = bits.words();
  for (std::size_t j = 0; j < digits; ++j) {
    const std::size_t bit = j * 4;
    out.push_back(kDigits[(words[bit / 64] >> (bit % 64)) & 0xF]);
  }
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty line split into tokens; empty vector at end of input.
  std::vector<std::string_view> next() {
    while (std::getline(in_, line_)) {
      ++number_;
      auto tokens = split(line_);
      if (!tokens.empty()) return tokens;
    }
    return {};
  }

  std::string where() const { return "line " + std::to_string(number_); }

  [[noreturn]] void fail(LoadError::Kind kind, const std::string& msg) const {
    throw LoadError(kind, where(), msg);
  }

  template <typename T>
  T parse(std::string_view tok, const char* what) const {
    T v{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec == std::errc::result_out_of_range)
      fail(LoadError::Kind::range, std::string(what) + " '" + std::string(tok) + "' out of range");
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      fail(LoadError::Kind::parse, std::string("bad ") + what + " '" + std::string(tok) + "'");
    return v;
  }

 private:
  std::istream& in_;
  std::string line_;
  std::size_t number_ = 0;
};

void expect_magic(LineReader& r, const char* magic) {
  auto tok = r.next();
  if (tok.size() != 2 || tok[0] != magic)
    r.fail(LoadError::Kind::parse, std::string("expected '") + magic + " <version>' header");
  if (r.parse<int>(tok[1], "version") != kFormatVersion)
    r.fail(LoadError::Kind::parse, "unsupported format version " + std::string(tok[1]));
}

BitVector parse_hex(const LineReader& r, std::string_view tok, int axons) {
  const auto digits = static_cast<std::size_t>((axons + 3) / 4);
  if (tok.size() != digits)
    r.fail(LoadError::Kind::count_mismatch, "connection row has " + std::to_string(tok.size()) +
                                                " hex digits, expected " + std::to_string(digits));
  BitVector bits(static_cast<std::size_t>(axons));
  for (std::size_t j = 0; j < digits; ++j) {
    const char c = tok[j];
    unsigned v;
    if (c >= '0' && c <= '9')
      v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f')
      v = static_cast<unsigned>(c - 'a' + 10);
    else
      r.fail(LoadError::Kind::parse, std::string("bad hex digit '") + c + "' in connection row");
    for (unsigned b = 0; b < 4; ++b) {
      if (!((v >> b) & 1u)) continue;
      const std::size_t axon = j * 4 + b;
      if (axon >= static_cast<std::size_t>(axons))
        r.fail(LoadError::Kind::range, "connection bit set past the last axon");
      bits.set(axon);
    }
  }
  return bits;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError(LoadError::Kind::io, path.string(), "cannot open for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(LoadError::Kind::io, path.string(), "cannot open for reading");
  return in;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw LoadError(LoadError::Kind::io, path.string(), "write failed");
}

}  // namespace

void write_network(std::ostream& out, const Network& net) {
  const GridConfig& c = net.config;
  const long long header[] = {c.grid_width,     c.grid_height,    c.axons_per_core,
                              c.neurons_per_core, c.num_weights_per_neuron, c.max_tick_offset,
                              c.potential_bits, c.weight_bits,    c.leak_bits,
                              c.threshold_bits, c.reset_bits,     c.num_ticks};
  std::string buf = std::string(kNetworkMagic) + " " + std::to_string(kFormatVersion) + "\n";
  for (std::size_t i = 0; i < std::size(header); ++i) {
    buf += kHeaderKeys[i];
    append_field(buf, header[i]);
    buf.push_back('\n');
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));

  for (int y = 0; y < c.grid_height; ++y) {
    for (int x = 0; x < c.grid_width; ++x) {
      const CoreTable& core = net.core(x, y);
      buf = "core";
      append_field(buf, x);
      append_field(buf, y);
      buf += "\ntypes";
      for (int t : core.axon_types.types) append_field(buf, t);
      buf.push_back('\n');
      for (std::size_t n = 0; n < core.neurons.size(); ++n) {
        const CsramEntry& e = core.neurons[n];
        buf += "neuron";
        append_field(buf, static_cast<long long>(n));
        append_field(buf, e.potential);
        append_field(buf, e.threshold);
        append_field(buf, e.reset_potential);
        append_field(buf, e.leak);
        append_field(buf, e.dest_core_dx);
        append_field(buf, e.dest_core_dy);
        append_field(buf, e.dest_axon);
        append_field(buf, e.dest_tick_offset);
        append_field(buf, e.output_flag ? 1 : 0);
        for (auto w : e.weights) append_field(buf, w);
        buf.push_back(' ');
        append_hex(buf, e.connections);
        buf.push_back('\n');
      }
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
  }
}

void save_network(const std::filesystem::path& path, const Network& net) {
  auto out = open_out(path);
  write_network(out, net);
  finish(out, path);
}

Network read_network(std::istream& in) {
  LineReader r(in);
  expect_magic(r, kNetworkMagic);

  long long header[std::size(kHeaderKeys)];
  for (std::size_t i = 0; i < std::size(kHeaderKeys); ++i) {
    auto tok = r.next();
    if (tok.size() != 2 || tok[0] != kHeaderKeys[i])
      r.fail(LoadError::Kind::parse, std::string("expected '") + kHeaderKeys[i] + " <value>'");
    header[i] = r.parse<long long>(tok[1], kHeaderKeys[i]);
    if (i + 1 < std::size(kHeaderKeys) && (header[i] < 0 || header[i] > (1LL << 30)))
      r.fail(LoadError::Kind::range, std::string(kHeaderKeys[i]) + " out of range");
  }
  Network net;
  GridConfig& c = net.config;
  c.grid_width = static_cast<int>(header[0]);
  c.grid_height = static_cast<int>(header[1]);
  c.axons_per_core = static_cast<int>(header[2]);
  c.neurons_per_core = static_cast<int>(header[3]);
  c.num_weights_per_neuron = static_cast<int>(header[4]);
  c.max_tick_offset = static_cast<int>(header[5]);
  c.potential_bits = static_cast<int>(header[6]);
  c.weight_bits = static_cast<int>(header[7]);
  c.leak_bits = static_cast<int>(header[8]);
  c.threshold_bits = static_cast<int>(header[9]);
  c.reset_bits = static_cast<int>(header[10]);
  c.num_ticks = header[11];
  try {
    c.validate();
  } catch (const ConfigError& e) {
    throw LoadError(LoadError::Kind::range, "header", e.what());
  }

  const std::size_t weight_count = static_cast<std::size_t>(c.num_weights_per_neuron);
  const std::size_t neuron_fields = 11 + weight_count + 1;
  net.cores.reserve(static_cast<std::size_t>(c.num_cores()));
  auto tok = r.next();
  for (int y = 0; y < c.grid_height; ++y) {
    for (int x = 0; x < c.grid_width; ++x) {
      if (tok.empty())
        throw LoadError(LoadError::Kind::count_mismatch, "end of file",
                        "expected " + std::to_string(c.num_cores()) + " cores, found " +
                            std::to_string(net.cores.size()));
      if (tok.size() != 3 || tok[0] != "core")
        r.fail(LoadError::Kind::parse, "expected 'core <x> <y>'");
      if (r.parse<int>(tok[1], "core x") != x || r.parse<int>(tok[2], "core y") != y)
        r.fail(LoadError::Kind::parse, "cores must appear in row-major order; expected core " +
                                           std::to_string(x) + " " + std::to_string(y));
      CoreTable core;
      tok = r.next();
      if (tok.empty() || tok[0] != "types") r.fail(LoadError::Kind::parse, "expected 'types' line");
      if (tok.size() - 1 != static_cast<std::size_t>(c.axons_per_core))
        r.fail(LoadError::Kind::count_mismatch,
               "expected " + std::to_string(c.axons_per_core) + " axon types, found " +
                   std::to_string(tok.size() - 1));
      for (std::size_t a = 1; a < tok.size(); ++a)
        core.axon_types.types.push_back(r.parse<int>(tok[a], "axon type"));

      tok = r.next();
      while (!tok.empty() && tok[0] == "neuron") {
        if (tok.size() != neuron_fields)
          r.fail(LoadError::Kind::count_mismatch,
                 "neuron record has " + std::to_string(tok.size()) + " fields, expected " +
                     std::to_string(neuron_fields));
        const auto index = r.parse<std::size_t>(tok[1], "neuron index");
        if (index != core.neurons.size())
          r.fail(LoadError::Kind::parse, "neuron records must be in ascending order; expected " +
                                             std::to_string(core.neurons.size()));
        CsramEntry e;
        e.potential = r.parse<std::int64_t>(tok[2], "potential");
        e.threshold = r.parse<std::int64_t>(tok[3], "threshold");
        e.reset_potential = r.parse<std::int64_t>(tok[4], "reset potential");
        e.leak = r.parse<std::int64_t>(tok[5], "leak");
        e.dest_core_dx = r.parse<int>(tok[6], "dx");
        e.dest_core_dy = r.parse<int>(tok[7], "dy");
        e.dest_axon = r.parse<int>(tok[8], "destination axon");
        e.dest_tick_offset = r.parse<int>(tok[9], "destination tick offset");
        const int flag = r.parse<int>(tok[10], "output flag");
        if (flag != 0 && flag != 1) r.fail(LoadError::Kind::parse, "output flag must be 0 or 1");
        e.output_flag = flag == 1;
        for (std::size_t w = 0; w < weight_count; ++w)
          e.weights.push_back(r.parse<std::int64_t>(tok[11 + w], "weight"));
        e.connections = parse_hex(r, tok.back(), c.axons_per_core);
        core.neurons.push_back(std::move(e));
        if (core.neurons.size() > static_cast<std::size_t>(c.neurons_per_core))
          r.fail(LoadError::Kind::count_mismatch,
                 "more than " + std::to_string(c.neurons_per_core) + " neurons in core");
        tok = r.next();
      }
      if (core.neurons.size() != static_cast<std::size_t>(c.neurons_per_core))
        throw LoadError(LoadError::Kind::count_mismatch,
                        "core (" + std::to_string(x) + "," + std::to_string(y) + ")",
                        "expected " + std::to_string(c.neurons_per_core) + " neurons, found " +
                            std::to_string(core.neurons.size()));
      net.cores.push_back(std::move(core));
    }
  }
  if (!tok.empty()) r.fail(LoadError::Kind::count_mismatch, "unexpected record after last core");

  validate_network(net);
  return net;
}

Network load_network(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_network(in);
}

void write_inputs(std::ostream& out, const InputStream& inputs) {
  std::string buf = std::string(kInputsMagic) + " " + std::to_string(kFormatVersion) + "\n";
  for (const InputSpike& s : inputs) {
    append_int(buf, s.arrival_tick);
    append_field(buf, s.core_x);
    append_field(buf, s.core_y);
    append_field(buf, s.axon);
    buf.push_back('\n');
    if (buf.size() > (1u << 16)) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void save_inputs(const std::filesystem::path& path, const InputStream& inputs) {
  auto out = open_out(path);
  write_inputs(out, inputs);
  finish(out, path);
}

InputStream read_inputs(std::istream& in, const GridConfig& cfg) {
  LineReader r(in);
  expect_magic(r, kInputsMagic);
  InputStream inputs;
  for (auto tok = r.next(); !tok.empty(); tok = r.next()) {
    if (tok.size() != 4) r.fail(LoadError::Kind::parse, "expected 'tick core_x core_y axon'");
    InputSpike s{r.parse<std::int64_t>(tok[0], "arrival tick"), r.parse<int>(tok[1], "core x"),
                 r.parse<int>(tok[2], "core y"), r.parse<int>(tok[3], "axon")};
    if (!inputs.empty() && s.arrival_tick < inputs.back().arrival_tick)
      r.fail(LoadError::Kind::parse, "records must be sorted by arrival tick");
    try {
      validate_inputs(InputStream{s}, cfg);
    } catch (const LoadError& e) {
      throw LoadError(e.kind(), r.where(), e.what());
    }
    inputs.push_back(s);
  }
  return inputs;
}

InputStream load_inputs(const std::filesystem::path& path, const GridConfig& cfg) {
  auto in = open_in(path);
  return read_inputs(in, cfg);
}

std::string format_outputs(std::span<const SpikeEvent> events) {
  std::string buf;
  buf.reserve(events.size() * 16);
  for (const SpikeEvent& e : events) {
    append_int(buf, e.tick);
    append_field(buf, e.core_x);
    append_field(buf, e.core_y);
    append_field(buf, e.neuron);
    buf.push_back('\n');
  }
  return buf;
}

void write_outputs(std::span<const SpikeEvent> events, const std::filesystem::path& path) {
  auto out = open_out(path);
  const std::string text = format_outputs(events);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  finish(out, path);
}

std::vector<SpikeEvent> read_outputs(std::istream& in) {
  LineReader r(in);
  std::vector<SpikeEvent> events;
  for (auto tok = r.next(); !tok.empty(); tok = r.next()) {
    if (tok.size() != 4) r.fail(LoadError::Kind::parse, "expected 'tick core_x core_y neuron'");
    events.push_back(SpikeEvent{r.parse<std::int64_t>(tok[0], "tick"), r.parse<int>(tok[1], "core x"),
                                r.parse<int>(tok[2], "core y"), r.parse<int>(tok[3], "neuron")});
  }
  return events;
}

std::vector<std::vector<InputPacket>> stage_inputs(const InputStream& inputs,
                                                   const GridConfig& cfg) {
  validate_inputs(inputs, cfg);
  std::vector<std::vector<InputPacket>> staged(static_cast<std::size_t>(cfg.num_ticks));
  for (const InputSpike& s : inputs)
    staged[static_cast<std::size_t>(s.arrival_tick - 1)].push_back(
        InputPacket{{s.core_x, s.core_y}, s.axon, 1});
  return staged;
}

}  // namespace nmsim
