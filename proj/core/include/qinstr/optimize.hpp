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

#include <functional>
#include <vector>

namespace qinstr {

using Objective = std::function<double(const std::vector<double>&)>;

struct NelderMeadOptions {
  int max_evals = 20000;
  double x_tol = 1e-10;
  double f_tol = 1e-13;
  double initial_step = 0.1;
};

struct MinimizeResult {
  std::vector<double> x;
  double f = 0.0;
  int evals = 0;
  bool converged = false;
  std::vector<double> history;  // best value after each iteration (non-increasing)
};

MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0,
                           const NelderMeadOptions& opt = {});

// Restart from the previous optimum until the improvement stalls.
MinimizeResult nelder_mead_restarts(const Objective& f, std::vector<double> x0, int restarts,
                                    const NelderMeadOptions& opt = {});

// Minimum of a unimodal function on [a, b].
double golden_section(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-12, int max_iter = 200);

// Solve the symmetric positive (semi)definite system a x = b in the least
// squares sense; returns false when a is numerically singular.
bool solve_spd(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x);

}  // namespace qinstr
