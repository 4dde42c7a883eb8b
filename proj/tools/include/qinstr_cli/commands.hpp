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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qinstr_cli/json_io.hpp"

namespace qinstr::cli {

// Shared by every subcommand. `shots` == 0 means exact probabilities.
struct CommonOptions {
  std::uint64_t seed = 1;
  std::string noise = "none";
  std::uint64_t shots = 0;
  double readout_flip = 0.0;
};

struct TrajectoryOptions {
  std::string rho_in = "+";
  std::string sigma_in = "+i";
  int steps = 4;
  double theta = M_PI / 2;
  std::string mode = "enumerate";  // refresh | enumerate | average | sample
  int r = 0;
  bool unique = false;
};

struct SweepOptions {
  std::string rho_in = "+i";
  std::string sigma_in = "0";
  double theta = M_PI;
  int n_min = 1;
  int n_max = 12;
  int r = 295;  // 0 disables the bootstrap
  int n_samp = 100;
  int N_samp = 50;
};

struct ProcessOptions {
  std::vector<std::string> instructions;  // empty: the six cardinal states
  double theta = M_PI / 2;
  int n_max = 16;
  int r = 105;  // 0 disables the bootstrap
  int n_samp = 100;
  int N_samp = 50;
};

struct CompileOptions {
  std::optional<double> delta;
  int steps = 0;  // > 0: full DME2 circuit instead of a single block
  double theta = M_PI;
  std::string rho_in = "0";
  std::string mask;  // '0'/'1' per step; empty draws one from the seed
};

struct RbOptions {
  std::optional<double> depolarizing;
  std::vector<int> lengths = {1, 5, 10, 20, 40, 60, 80, 100, 150, 200};
  int k = 100;
  std::optional<double> p_ref;  // arithmetic only
  std::optional<double> p_gate;
  std::string mode = "1q";  // 1q | 2q
};

struct AmplifyOptions {
  double phi01_err = 0.0;
  double phi10_err = 0.0;
  double phi11_err = 0.0;
  int n_max = 30;
};

struct NoiseReportOptions {
  int max_gates = 600;
  double ramsey_phase = 0.05;  // rad per CZ
};

// Each returns the payload object of the record. Payloads are pure functions
// of their arguments.
json cmd_trajectory(const CommonOptions& c, const TrajectoryOptions& o);
json cmd_sweep_n(const CommonOptions& c, const SweepOptions& o);
json cmd_process(const CommonOptions& c, const ProcessOptions& o);
json cmd_compile(const CommonOptions& c, const CompileOptions& o);
json cmd_rb(const CommonOptions& c, const RbOptions& o);
json cmd_cz_amplify(const CommonOptions& c, const AmplifyOptions& o);
json cmd_noise_report(const CommonOptions& c, const NoiseReportOptions& o);

}  // namespace qinstr::cli
