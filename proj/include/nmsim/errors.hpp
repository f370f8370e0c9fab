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

#ifndef NMSIM_ERRORS_HPP_
#define NMSIM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace nmsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid GridConfig or ParallelPlan.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Packet whose destination falls outside the grid.
class RoutingError : public Error {
 public:
  using Error::Error;
};

// Any failure raised while stepping an engine, prefixed with the tick.
class SimulationError : public Error {
 public:
  using Error::Error;
};

class LoadError : public Error {
 public:
  enum class Kind { io, parse, count_mismatch, bitwidth, destination, range };

  LoadError(Kind kind, std::string location, const std::string& message)
      : Error(location.empty() ? message : location + ": " + message),
        kind_(kind),
        location_(std::move(location)) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& location() const noexcept { return location_; }

 private:
  Kind kind_;
  std::string location_;
};

}  // namespace nmsim

#endif  // NMSIM_ERRORS_HPP_
