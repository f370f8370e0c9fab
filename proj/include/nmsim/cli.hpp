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

#ifndef NMSIM_CLI_HPP_
#define NMSIM_CLI_HPP_

#include <iosfwd>

namespace nmsim {

/// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFail = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `nmsim` tool (subcommands run, verify, sweep, generate).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nmsim

#endif  // NMSIM_CLI_HPP_
