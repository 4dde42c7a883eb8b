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
#include <vector>

#include "qinstr/channels.hpp"
#include "qinstr/gates.hpp"
#include "qinstr/qstate.hpp"

namespace qinstr {

// Qubit 0 holds the data state sigma, qubit 1 the instruction rho. Joint
// states are sigma (x) rho.
inline constexpr int kDataQubit = 0;
inline constexpr int kInstructionQubit = 1;
inline constexpr int kMaxEnumerateSteps = 20;

enum class DmeMode { kRefresh, kQmeEnumerate, kQmeSample };

struct DmeConfig {
  DensityMatrix rho_in;
  DensityMatrix sigma_in;
  int steps = 1;
  double theta = 0.0;
  std::optional<Axis> qme_axis;  // nullopt: Bloch direction of rho_in
  DmeMode mode = DmeMode::kRefresh;
  int r = 0;               // sample count for kQmeSample
  std::uint64_t seed = 0;  // base seed for kQmeSample

  double delta() const { return theta / steps; }
};

// Throws ConfigError on N < 1, delta outside (0, 2pi], or bad dimensions.
void validate(const DmeConfig& cfg);

// QME axis actually used; rejects rho_in with vanishing Bloch vector.
Axis resolve_qme_axis(const DmeConfig& cfg);

// bits[n] == true applies R_nu(pi) after step n+1.
using QmeMask = std::vector<bool>;

// exp(-i rho theta) sigma exp(i rho theta).
DensityMatrix ideal_target(const DensityMatrix& rho, const DensityMatrix& sigma, double theta);

DensityMatrix dswap_step(const DensityMatrix& joint, double delta);

// sigma(n), n = 0..N, with the instruction re-prepared before every step.
std::vector<DensityMatrix> dme_refresh(const DmeConfig& cfg);

// Rotation exp(-i theta |phi><phi|) followed by damping toward |phi> whose
// coherence factor is the signed c = cos^N(theta/N), so p_N = 1 - c^2.
// Throws ConfigError for mixed rho_in.
KrausChannel closed_form_channel(const DensityMatrix& rho_in, int steps, double theta);

// Identity (idle for one single-qubit slot) or R_axis(pi) on the instruction.
GateOp qme_gate(const Axis& axis, bool coin, int qubit = kInstructionQubit);

struct Dme2Trajectory {
  std::vector<DensityMatrix> joint;  // Omega(n), n = 0..N
  std::vector<DensityMatrix> sigma;  // data marginal
  std::vector<DensityMatrix> rho;    // instruction marginal
  bool instruction_mixed = false;    // rho_in purity below 1 - 1e-9
};

// Joint trajectory for a single QME mask.
Dme2Trajectory dme2_single(const DmeConfig& cfg, const QmeMask& mask);

// Equal-weight average over all 2^N masks. Throws GuardError above
// kMaxEnumerateSteps.
Dme2Trajectory dme2_enumerate(const DmeConfig& cfg);

// Same average computed by propagating the coin-averaged (dephasing) map;
// linear in the masks, so it agrees with dme2_enumerate for any N.
Dme2Trajectory dme2_average(const DmeConfig& cfg);

struct Dme2Sample {
  Dme2Trajectory average;
  std::vector<QmeMask> masks;
  std::vector<DensityMatrix> final_joint;  // Omega(N) per mask
};

// Mask k draws its bits from a generator seeded with (seed, k). With
// `unique`, masks are distinct (r <= 2^N, N <= kMaxEnumerateSteps).
Dme2Sample dme2_sample(const DmeConfig& cfg, int r, std::uint64_t seed, bool unique = false);

QmeMask sample_mask(int steps, std::uint64_t seed, std::uint64_t index);

struct ErrorBounds {
  double p_discretization = 0.0;  // 1 - cos^{2N}(theta/N)
  double qme_bound = 0.0;         // 2N sin^2(theta/N)
  double p_asymptote = 0.0;       // theta^2/N
  double qme_asymptote = 0.0;     // 2 theta^2/N
};

ErrorBounds error_bounds(double theta, int steps);

}  // namespace qinstr
