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

#include <string>
#include <string_view>
#include <vector>

#include "qinstr/channels.hpp"
#include "qinstr/circuit.hpp"
#include "qinstr/dme.hpp"

namespace qinstr {

// Lifetimes in microseconds; infinity disables the corresponding process.
struct QubitCoherence {
  double t1_us = INFINITY;
  double t2r_us = INFINITY;
  double t1_eff_us = INFINITY;   // during CZ
  double t2r_eff_us = INFINITY;  // during CZ
};

struct NoiseParams {
  std::string name = "none";
  QubitCoherence q[2];
  double t_1qb_ns = kT1qbNs;
  double t_cz_ns = kTczNs;
  double cz_gap_ns = 5.0;  // idle after each CZ, folded into its noise window

  double cz_window_ns() const { return t_cz_ns + cz_gap_ns; }
  bool is_noiseless() const;
};

// Throws ConfigError for non-positive lifetimes or negative pure dephasing.
void validate(const NoiseParams& np);

NoiseParams noise_preset(std::string_view name);  // "none", "sim", "device"

struct Rates {
  double gamma1 = 0.0;     // 1/s
  double gamma_phi = 0.0;  // 1/s
};

// gamma_phi = 1/T2R - 1/(2 T1).
Rates rates_from(double t1_us, double t2r_us);

// Decoherence applied to `qubit` after a moment of the given kind.
KrausChannel idle_channel(const NoiseParams& np, int qubit, double duration_ns, bool cz_moment);

struct NoisyStep {
  CMatrix unitary;                    // ideal moment unitary
  double noise_ns = 0.0;              // decoherence window after the moment
  std::vector<KrausChannel> channel;  // one per qubit; empty when noise_ns == 0
};

// VirtualZ-only moments carry no noise. CZ moments use the effective rates
// and the CZ window; other moments use idle rates for t_1qb on every qubit.
std::vector<NoisyStep> instrument(const Circuit& c, const NoiseParams& np);

CMatrix simulate_noisy(const Circuit& c, const CMatrix& input, const NoiseParams& np);
DensityMatrix simulate_noisy(const Circuit& c, const DensityMatrix& input, const NoiseParams& np);

// Noise-after-unitary superoperator of one moment (row-major vectorization).
CMatrix moment_superoperator(const Moment& m, int qubit_count, const NoiseParams& np);

// Noisy mask-averaged output of the compiled N-step circuit. Each QME bit
// enters exactly one moment, so the average equals the product of
// coin-averaged moment superoperators.
DensityMatrix noisy_dme2_average(const DmeConfig& cfg, const NoiseParams& np);

// Brute-force reference: explicit average of simulate_noisy over all masks.
DensityMatrix noisy_dme2_enumerate(const DmeConfig& cfg, const NoiseParams& np);

// Joint state after n compiled steps (delta = theta/N fixed), n = 0..N.
std::vector<DensityMatrix> noisy_dme2_trajectory(const DmeConfig& cfg, const NoiseParams& np);

// Excited-state survival of qubit 0 prepared in |1> (qubit 1 in |0>) after n
// CZ gates.
std::vector<double> simulate_t1_like(const NoiseParams& np, const std::vector<int>& gate_counts);

// Ramsey-style: qubit 0 in |+> (qubit 1 in |0>), n CZ gates each followed by
// a small virtual phase error, then Ry(-pi/2); returns P(0) on qubit 0.
std::vector<double> simulate_ramsey_like(const NoiseParams& np,
                                         const std::vector<int>& gate_counts,
                                         double phase_per_gate);

}  // namespace qinstr
