// Copyright 2026 The qinstr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qinstr_cli/json_io.hpp"

namespace qinstr::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitGuard = 4;

struct Invocation {
  json record;  // {"command", "config", "version", "seed", "payload", "meta"}
  std::string format = "json";
  std::string out_path;  // empty: stdout
};

// Parses `args` (without the program name) and runs the subcommand. Throws
// CLI::ParseError for usage errors and the qinstr error types from the core.
Invocation invoke(const std::vector<std::string>& args);

// JSON record, or CSV of payload.series (key,value rows when there is none).
std::string render(const json& record, const std::string& format);

// Full program: parse, run, write, map failures to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qinstr::cli
